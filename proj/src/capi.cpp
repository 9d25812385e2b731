// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "cbrw/bbm.hpp"
#include "cbrw/displacement.hpp"
#include "cbrw/errors.hpp"
#include "cbrw/moments.hpp"
#include "cbrw/offspring.hpp"
#include "cbrw/reduced.hpp"
#include "cbrw/sampler.hpp"
#include "cbrw/spine.hpp"
#include "cbrw/stats.hpp"

struct cbrw_law {
  cbrw::OffspringLaw impl;
};
struct cbrw_displacement {
  cbrw::DisplacementLaw impl;
};
struct cbrw_extinction {
  cbrw::ExtinctionTable impl;
};
struct cbrw_sim {
  cbrw::SimSummary impl;
};
struct cbrw_grid {
  cbrw::MomentGrid impl;
};
struct cbrw_bbm {
  cbrw::BbmSummary impl;
};

namespace {

thread_local std::string g_last_error;

cbrw_status map_code(cbrw::ErrorCode code) {
  switch (code) {
    case cbrw::ErrorCode::invalid_argument: return CBRW_ERR_INVALID_ARGUMENT;
    case cbrw::ErrorCode::domain: return CBRW_ERR_DOMAIN;
    case cbrw::ErrorCode::parse: return CBRW_ERR_PARSE;
    case cbrw::ErrorCode::budget: return CBRW_ERR_BUDGET;
    case cbrw::ErrorCode::truncation: return CBRW_ERR_TRUNCATION;
    case cbrw::ErrorCode::integrity: return CBRW_ERR_INTEGRITY;
    case cbrw::ErrorCode::unavailable: return CBRW_ERR_UNAVAILABLE;
  }
  return CBRW_ERR_INTERNAL;
}

template <typename Fn>
cbrw_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return CBRW_OK;
  } catch (const cbrw::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CBRW_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return CBRW_ERR_INTERNAL;
  }
}

cbrw_status fail(cbrw_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename T, typename U>
cbrw_status copy_out(const std::vector<U>& src, T* buf, size_t cap) {
  if (buf == nullptr || cap < src.size()) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "output buffer too small");
  }
  for (size_t i = 0; i < src.size(); ++i) buf[i] = static_cast<T>(src[i]);
  return CBRW_OK;
}

}  // namespace

extern "C" {

const char* cbrw_version(void) { return "1.0.0"; }

const char* cbrw_status_name(cbrw_status status) {
  switch (status) {
    case CBRW_OK: return "ok";
    case CBRW_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CBRW_ERR_DOMAIN: return "domain";
    case CBRW_ERR_PARSE: return "parse";
    case CBRW_ERR_BUDGET: return "budget";
    case CBRW_ERR_TRUNCATION: return "truncation";
    case CBRW_ERR_INTEGRITY: return "integrity";
    case CBRW_ERR_UNAVAILABLE: return "unavailable";
    case CBRW_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* cbrw_last_error(void) { return g_last_error.c_str(); }

/* ---- offspring laws ---- */

cbrw_status cbrw_law_parse(const char* spec, cbrw_law** out) {
  if (spec == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cbrw_law{cbrw::OffspringLaw::parse(spec)}; });
}

void cbrw_law_free(cbrw_law* law) { delete law; }

const char* cbrw_law_name(const cbrw_law* law) {
  return law != nullptr ? law->impl.name().c_str() : "";
}

double cbrw_law_mean(const cbrw_law* law) { return law != nullptr ? law->impl.mean() : 0.0; }

double cbrw_law_sigma2(const cbrw_law* law) {
  return law != nullptr ? law->impl.sigma2() : 0.0;
}

size_t cbrw_law_support(const cbrw_law* law) {
  return law != nullptr ? law->impl.pmf().size() : 0;
}

cbrw_status cbrw_law_pmf(const cbrw_law* law, double* buf, size_t cap) {
  if (law == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null law");
  const auto pmf = law->impl.pmf();
  if (buf == nullptr || cap < pmf.size()) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "output buffer too small");
  }
  std::memcpy(buf, pmf.data(), pmf.size() * sizeof(double));
  return CBRW_OK;
}

cbrw_status cbrw_law_pgf(const cbrw_law* law, double s, double* out) {
  if (law == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = law->impl.pgf(s); });
}

cbrw_status cbrw_law_factorial_moment(const cbrw_law* law, int r, double* out) {
  if (law == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = law->impl.factorial_moment(r); });
}

/* ---- displacement laws ---- */

cbrw_status cbrw_displacement_parse(const char* spec, cbrw_displacement** out) {
  if (spec == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cbrw_displacement{cbrw::DisplacementLaw::parse(spec)}; });
}

void cbrw_displacement_free(cbrw_displacement* nu) { delete nu; }

const char* cbrw_displacement_name(const cbrw_displacement* nu) {
  return nu != nullptr ? nu->impl.name().c_str() : "";
}

int cbrw_displacement_has_nstep_cdf(const cbrw_displacement* nu) {
  return nu != nullptr && nu->impl.has_nstep_cdf() ? 1 : 0;
}

cbrw_status cbrw_displacement_nstep_cdf(const cbrw_displacement* nu, int n, double x,
                                        double* out) {
  if (nu == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = nu->impl.nstep_cdf(n, x); });
}

/* ---- extinction ---- */

cbrw_status cbrw_extinction_build(const cbrw_law* law, int horizon, cbrw_extinction** out) {
  if (law == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new cbrw_extinction{cbrw::ExtinctionTable(law->impl, horizon)}; });
}

void cbrw_extinction_free(cbrw_extinction* table) { delete table; }

int cbrw_extinction_horizon(const cbrw_extinction* table) {
  return table != nullptr ? table->impl.horizon() : -1;
}

cbrw_status cbrw_extinction_q(const cbrw_extinction* table, int k, double* out) {
  if (table == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = table->impl.q(k); });
}

/* ---- reduced process ---- */

cbrw_status cbrw_reduced_pgf(const cbrw_law* law, const cbrw_extinction* table, int k,
                             int n, double s, double* out) {
  if (law == nullptr || table == nullptr || out == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { *out = cbrw::reduced_pgf(law->impl, table->impl, k, n, s); });
}

cbrw_status cbrw_reduced_pmf(const cbrw_law* law, const cbrw_extinction* table, int k,
                             int n, double* buf, size_t cap, size_t* len) {
  if (law == nullptr || table == nullptr || len == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::ReducedLaw reduced = cbrw::reduced_offspring_pmf(law->impl, table->impl, k, n);
    *len = reduced.pmf.size();
    if (buf == nullptr || cap < reduced.pmf.size()) {
      throw cbrw::Error(cbrw::ErrorCode::invalid_argument, "output buffer too small");
    }
    std::memcpy(buf, reduced.pmf.data(), reduced.pmf.size() * sizeof(double));
  });
}

cbrw_status cbrw_reduced_moment(const cbrw_law* law, const cbrw_extinction* table, int k,
                                int n, int r, double* out) {
  if (law == nullptr || table == nullptr || out == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { *out = cbrw::reduced_moment(law->impl, table->impl, k, n, r); });
}

cbrw_status cbrw_split_time_tail(const cbrw_law* law, const cbrw_extinction* table, int n,
                                 double* tail, size_t cap) {
  if (law == nullptr || table == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const cbrw::SplitTimeLaw split = cbrw::split_time_law(law->impl, table->impl, n);
    if (tail == nullptr || cap < split.tail.size()) {
      throw cbrw::Error(cbrw::ErrorCode::invalid_argument, "output buffer too small");
    }
    std::memcpy(tail, split.tail.data(), split.tail.size() * sizeof(double));
  });
}

/* ---- spine estimators ---- */

cbrw_status cbrw_many_to_one(const cbrw_law* law, const cbrw_displacement* nu,
                             const cbrw_extinction* table, int n, double x, double* value) {
  if (law == nullptr || nu == nullptr || table == nullptr || value == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *value = cbrw::many_to_one_moment(law->impl, nu->impl, table->impl, n, x).value;
  });
}

cbrw_status cbrw_many_to_two(const cbrw_law* law, const cbrw_displacement* nu,
                             const cbrw_extinction* table, int n, double x, int gh_nodes,
                             double* value) {
  if (law == nullptr || nu == nullptr || table == nullptr || value == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    cbrw::SpineQuadrature quad;
    if (gh_nodes > 0) quad.gh_nodes = gh_nodes;
    *value = cbrw::many_to_two_moment(law->impl, nu->impl, table->impl, n, x, quad).value;
  });
}

cbrw_status cbrw_many_to_one_mc(const cbrw_law* law, const cbrw_displacement* nu,
                                const cbrw_extinction* table, int n, double x, long paths,
                                uint64_t seed, int workers, double* value, double* se) {
  if (law == nullptr || nu == nullptr || table == nullptr || value == nullptr || se == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::McOptions mc{paths, seed, workers};
    const cbrw::SpineEstimate est =
        cbrw::many_to_one_moment(law->impl, nu->impl, table->impl, n, x, &mc);
    *value = est.value;
    *se = est.stderror;
  });
}

cbrw_status cbrw_many_to_two_mc(const cbrw_law* law, const cbrw_displacement* nu,
                                const cbrw_extinction* table, int n, double x, long paths,
                                uint64_t seed, int workers, double* value, double* se) {
  if (law == nullptr || nu == nullptr || table == nullptr || value == nullptr || se == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::McOptions mc{paths, seed, workers};
    const cbrw::SpineEstimate est =
        cbrw::many_to_two_moment(law->impl, nu->impl, table->impl, n, x, {}, &mc);
    *value = est.value;
    *se = est.stderror;
  });
}

/* ---- simulation ---- */

cbrw_status cbrw_sim_run(const cbrw_law* law, const cbrw_displacement* nu,
                         const cbrw_sim_config* config, cbrw_sim** out) {
  if (law == nullptr || nu == nullptr || config == nullptr || out == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (config->xs == nullptr || config->x_count == 0) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "simulation config needs at least one x");
  }
  return guarded([&] {
    cbrw::SimConfig cfg;
    cfg.n = config->n;
    cfg.reps = config->reps;
    cfg.seed = config->seed;
    cfg.workers = config->workers;
    cfg.xs.assign(config->xs, config->xs + config->x_count);
    cfg.r_max = config->r_max > 0 ? config->r_max : 3;
    cfg.sampler = config->sampler == 1 ? cbrw::SamplerKind::rejection
                                       : cbrw::SamplerKind::conditioned;
    if (config->node_budget > 0) cfg.node_budget = config->node_budget;
    if (config->max_expected_trials > 0) cfg.max_expected_trials = config->max_expected_trials;
    cfg.keep_sorted_positions = config->keep_sorted_positions != 0;
    *out = new cbrw_sim{cbrw::run_simulation(law->impl, nu->impl, cfg)};
  });
}

void cbrw_sim_free(cbrw_sim* sim) { delete sim; }

long cbrw_sim_reps(const cbrw_sim* sim) { return sim != nullptr ? sim->impl.config.reps : 0; }

long cbrw_sim_failed_reps(const cbrw_sim* sim) {
  return sim != nullptr ? sim->impl.failed_reps : 0;
}

const char* cbrw_sim_first_failure(const cbrw_sim* sim) {
  return sim != nullptr ? sim->impl.first_failure.c_str() : "";
}

cbrw_status cbrw_sim_moment(const cbrw_sim* sim, size_t x_index, int r, double* estimate,
                            double* se) {
  if (sim == nullptr || estimate == nullptr || se == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::Moments m = sim->impl.moment(x_index, r);
    *estimate = m.estimate;
    *se = m.stderror;
  });
}

cbrw_status cbrw_sim_statistics(const cbrw_sim* sim, size_t x_index, double* buf, size_t cap) {
  if (sim == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null sim");
  if (x_index >= sim->impl.statistic.size()) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "x index out of range");
  }
  return copy_out(sim->impl.statistic[x_index], buf, cap);
}

cbrw_status cbrw_sim_leaf_counts(const cbrw_sim* sim, uint32_t* buf, size_t cap) {
  if (sim == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null sim");
  return copy_out(sim->impl.leaf_count, buf, cap);
}

cbrw_status cbrw_sim_picked_leaves(const cbrw_sim* sim, double* buf, size_t cap) {
  if (sim == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null sim");
  return copy_out(sim->impl.picked_leaf, buf, cap);
}

cbrw_status cbrw_sim_trials(const cbrw_sim* sim, double* buf, size_t cap) {
  if (sim == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null sim");
  if (sim->impl.trials.empty()) {
    return fail(CBRW_ERR_UNAVAILABLE, "trials are recorded by the rejection sampler only");
  }
  return copy_out(sim->impl.trials, buf, cap);
}

cbrw_status cbrw_sim_positions(const cbrw_sim* sim, long rep, const double** data,
                               size_t* count) {
  if (sim == nullptr || data == nullptr || count == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (sim->impl.sorted_positions.empty()) {
    return fail(CBRW_ERR_UNAVAILABLE, "run with keep_sorted_positions to retain positions");
  }
  if (rep < 0 || static_cast<size_t>(rep) >= sim->impl.sorted_positions.size()) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "replication index out of range");
  }
  const auto& positions = sim->impl.sorted_positions[static_cast<size_t>(rep)];
  *data = positions.data();
  *count = positions.size();
  return CBRW_OK;
}

/* ---- moment grid ---- */

cbrw_status cbrw_grid_build(const cbrw_grid_config* config, cbrw_grid** out) {
  if (config == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    cbrw::GridSpec spec;
    spec.sigma2 = config->sigma2;
    spec.r_max = config->r_max;
    if (config->x_max > config->x_min) {
      spec.x_min = config->x_min;
      spec.x_max = config->x_max;
    }
    if (config->x_step > 0) spec.x_step = config->x_step;
    if (config->gh_nodes > 0) spec.quad.gh_nodes = config->gh_nodes;
    if (config->t_panels > 0) spec.quad.t_panels = config->t_panels;
    spec.workers = config->workers;
    *out = new cbrw_grid{cbrw::build_moment_grid(spec)};
  });
}

void cbrw_grid_free(cbrw_grid* grid) { delete grid; }

int cbrw_grid_r_max(const cbrw_grid* grid) { return grid != nullptr ? grid->impl.r_max() : 0; }

double cbrw_grid_sigma2(const cbrw_grid* grid) {
  return grid != nullptr ? grid->impl.sigma2() : 0.0;
}

size_t cbrw_grid_t_count(const cbrw_grid* grid) {
  return grid != nullptr ? grid->impl.t_nodes().size() : 0;
}

size_t cbrw_grid_x_count(const cbrw_grid* grid) {
  return grid != nullptr ? grid->impl.x_nodes().size() : 0;
}

cbrw_status cbrw_grid_t_nodes(const cbrw_grid* grid, double* buf, size_t cap) {
  if (grid == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null grid");
  return copy_out(grid->impl.t_nodes(), buf, cap);
}

cbrw_status cbrw_grid_x_nodes(const cbrw_grid* grid, double* buf, size_t cap) {
  if (grid == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null grid");
  return copy_out(grid->impl.x_nodes(), buf, cap);
}

cbrw_status cbrw_grid_value(const cbrw_grid* grid, int i, double t, double x, double* out) {
  if (grid == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = grid->impl.value(i, t, x); });
}

cbrw_status cbrw_grid_node_value(const cbrw_grid* grid, int i, size_t t_idx, size_t x_idx,
                                 double* out) {
  if (grid == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = grid->impl.value_at(i, t_idx, x_idx); });
}

double cbrw_grid_max_anchor_error(const cbrw_grid* grid) {
  return grid != nullptr ? grid->impl.max_anchor_error() : 0.0;
}

long cbrw_grid_clamp_count(const cbrw_grid* grid) {
  return grid != nullptr ? grid->impl.clamp_count() : 0;
}

cbrw_status cbrw_grid_carleman(const cbrw_grid* grid, double* growth, size_t cap,
                               size_t* len, double* max_excess) {
  if (grid == nullptr || len == nullptr || max_excess == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::CarlemanReport report = cbrw::carleman_diagnostic(grid->impl);
    *len = report.growth.size();
    if (growth == nullptr || cap < report.growth.size()) {
      throw cbrw::Error(cbrw::ErrorCode::invalid_argument, "output buffer too small");
    }
    std::memcpy(growth, report.growth.data(), report.growth.size() * sizeof(double));
    *max_excess = report.max_excess;
  });
}

/* ---- bbm ---- */

cbrw_status cbrw_bbm_run(const cbrw_bbm_config* config, cbrw_bbm** out) {
  if (config == nullptr || out == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  if (config->xs == nullptr || config->x_count == 0) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "bbm config needs at least one x");
  }
  return guarded([&] {
    cbrw::BbmConfig cfg;
    cfg.t_eval = config->t_eval;
    cfg.xs.assign(config->xs, config->xs + config->x_count);
    cfg.reps = config->reps;
    cfg.seed = config->seed;
    cfg.workers = config->workers;
    if (config->particle_budget > 0) cfg.particle_budget = config->particle_budget;
    *out = new cbrw_bbm{cbrw::run_bbm(cfg)};
  });
}

void cbrw_bbm_free(cbrw_bbm* bbm) { delete bbm; }

long cbrw_bbm_reps(const cbrw_bbm* bbm) { return bbm != nullptr ? bbm->impl.config.reps : 0; }

long cbrw_bbm_failed_reps(const cbrw_bbm* bbm) {
  return bbm != nullptr ? bbm->impl.failed_reps : 0;
}

cbrw_status cbrw_bbm_moment(const cbrw_bbm* bbm, size_t x_index, int r, double* estimate,
                            double* se) {
  if (bbm == nullptr || estimate == nullptr || se == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::Moments m = bbm->impl.moment(x_index, r);
    *estimate = m.estimate;
    *se = m.stderror;
  });
}

cbrw_status cbrw_bbm_values(const cbrw_bbm* bbm, size_t x_index, double* buf, size_t cap) {
  if (bbm == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null bbm");
  if (x_index >= bbm->impl.value.size()) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "x index out of range");
  }
  return copy_out(bbm->impl.value[x_index], buf, cap);
}

cbrw_status cbrw_bbm_populations(const cbrw_bbm* bbm, uint32_t* buf, size_t cap) {
  if (bbm == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null bbm");
  return copy_out(bbm->impl.population, buf, cap);
}

cbrw_status cbrw_bbm_picked_positions(const cbrw_bbm* bbm, double* buf, size_t cap) {
  if (bbm == nullptr) return fail(CBRW_ERR_INVALID_ARGUMENT, "null bbm");
  return copy_out(bbm->impl.picked_position, buf, cap);
}

/* ---- statistical tests ---- */

cbrw_status cbrw_ks_two_sample(const double* a, size_t na, const double* b, size_t nb,
                               double* statistic, double* p_value) {
  if (a == nullptr || b == nullptr || statistic == nullptr || p_value == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::KsResult r = cbrw::ks_two_sample({a, na}, {b, nb});
    *statistic = r.statistic;
    *p_value = r.p_value;
  });
}

cbrw_status cbrw_ks_exponential(const double* a, size_t na, double mean, double* statistic,
                                double* p_value) {
  if (a == nullptr || statistic == nullptr || p_value == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    if (!(mean > 0)) {
      throw cbrw::Error(cbrw::ErrorCode::invalid_argument, "exponential mean must be > 0");
    }
    const cbrw::KsResult r = cbrw::ks_test({a, na}, [mean](double x) {
      return x <= 0.0 ? 0.0 : -std::expm1(-x / mean);
    });
    *statistic = r.statistic;
    *p_value = r.p_value;
  });
}

cbrw_status cbrw_ks_normal(const double* a, size_t na, double mu, double sd,
                           double* statistic, double* p_value) {
  if (a == nullptr || statistic == nullptr || p_value == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    if (!(sd > 0)) {
      throw cbrw::Error(cbrw::ErrorCode::invalid_argument, "normal sd must be > 0");
    }
    const cbrw::KsResult r = cbrw::ks_test(
        {a, na}, [mu, sd](double x) { return cbrw::normal_cdf((x - mu) / sd); });
    *statistic = r.statistic;
    *p_value = r.p_value;
  });
}

cbrw_status cbrw_chi2_two_sample_counts(const uint64_t* a, size_t na, const uint64_t* b,
                                        size_t nb, double* statistic, double* df,
                                        double* p_value) {
  if (a == nullptr || b == nullptr || statistic == nullptr || df == nullptr ||
      p_value == nullptr) {
    return fail(CBRW_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const cbrw::Chi2Result r = cbrw::chi2_two_sample_counts({a, na}, {b, nb});
    *statistic = r.statistic;
    *df = r.df;
    *p_value = r.p_value;
  });
}

}  // extern "C"
