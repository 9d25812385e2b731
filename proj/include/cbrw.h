/*
 * SPDX-FileCopyrightText: 2026 cbrw developers
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the cbrw critical branching random walk engine.
 *
 * All objects are opaque handles created by *_parse / *_build / *_run and
 * released by the matching *_free. Functions return CBRW_OK on success; on
 * failure they return a status code and leave a human-readable message in
 * cbrw_last_error() (thread-local). Array getters copy into caller buffers
 * and fail with CBRW_ERR_INVALID_ARGUMENT when the capacity is too small.
 */

#ifndef CBRW_H
#define CBRW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CBRW_API __declspec(dllexport)
#else
#define CBRW_API __attribute__((visibility("default")))
#endif

typedef enum cbrw_status {
  CBRW_OK = 0,
  CBRW_ERR_INVALID_ARGUMENT = 1,
  CBRW_ERR_DOMAIN = 2,
  CBRW_ERR_PARSE = 3,
  CBRW_ERR_BUDGET = 4,
  CBRW_ERR_TRUNCATION = 5,
  CBRW_ERR_INTEGRITY = 6,
  CBRW_ERR_UNAVAILABLE = 7,
  CBRW_ERR_INTERNAL = 8
} cbrw_status;

typedef struct cbrw_law cbrw_law;                  /* critical offspring law */
typedef struct cbrw_displacement cbrw_displacement; /* step distribution */
typedef struct cbrw_extinction cbrw_extinction;    /* survival probabilities */
typedef struct cbrw_sim cbrw_sim;                  /* replication summary */
typedef struct cbrw_grid cbrw_grid;                /* limit moment grid */
typedef struct cbrw_bbm cbrw_bbm;                  /* limiting BBM summary */

CBRW_API const char* cbrw_version(void);
CBRW_API const char* cbrw_status_name(cbrw_status status);
CBRW_API const char* cbrw_last_error(void);

/* ------------------------------------------------------------------ */
/* Offspring laws. Spec grammar: "geometric:0.5" | "binary" |          */
/* "poisson:1" | "pmf:p0,p1,..." (probabilities, sum 1 within 1e-9).   */

CBRW_API cbrw_status cbrw_law_parse(const char* spec, cbrw_law** out);
CBRW_API void cbrw_law_free(cbrw_law* law);
CBRW_API const char* cbrw_law_name(const cbrw_law* law);
CBRW_API double cbrw_law_mean(const cbrw_law* law);
CBRW_API double cbrw_law_sigma2(const cbrw_law* law);
CBRW_API size_t cbrw_law_support(const cbrw_law* law); /* pmf length */
CBRW_API cbrw_status cbrw_law_pmf(const cbrw_law* law, double* buf, size_t cap);
CBRW_API cbrw_status cbrw_law_pgf(const cbrw_law* law, double s, double* out);
CBRW_API cbrw_status cbrw_law_factorial_moment(const cbrw_law* law, int r, double* out);

/* ------------------------------------------------------------------ */
/* Displacement laws: "normal" | "rademacher" | "uniform".             */

CBRW_API cbrw_status cbrw_displacement_parse(const char* spec, cbrw_displacement** out);
CBRW_API void cbrw_displacement_free(cbrw_displacement* nu);
CBRW_API const char* cbrw_displacement_name(const cbrw_displacement* nu);
CBRW_API int cbrw_displacement_has_nstep_cdf(const cbrw_displacement* nu);
CBRW_API cbrw_status cbrw_displacement_nstep_cdf(const cbrw_displacement* nu,
                                                 int n, double x, double* out);

/* ------------------------------------------------------------------ */
/* Extinction table: q[k] = P(generation k nonempty), k = 0..horizon.  */

CBRW_API cbrw_status cbrw_extinction_build(const cbrw_law* law, int horizon,
                                           cbrw_extinction** out);
CBRW_API void cbrw_extinction_free(cbrw_extinction* table);
CBRW_API int cbrw_extinction_horizon(const cbrw_extinction* table);
CBRW_API cbrw_status cbrw_extinction_q(const cbrw_extinction* table, int k, double* out);

/* ------------------------------------------------------------------ */
/* Conditioned reduced process at generation k of horizon n.           */

CBRW_API cbrw_status cbrw_reduced_pgf(const cbrw_law* law, const cbrw_extinction* table,
                                      int k, int n, double s, double* out);
/* Writes the offspring pmf (index l starting at 0; entry 0 is exactly 0).
 * *len always receives the required length; CBRW_OK only when cap is
 * sufficient. */
CBRW_API cbrw_status cbrw_reduced_pmf(const cbrw_law* law, const cbrw_extinction* table,
                                      int k, int n, double* buf, size_t cap, size_t* len);
CBRW_API cbrw_status cbrw_reduced_moment(const cbrw_law* law, const cbrw_extinction* table,
                                         int k, int n, int r, double* out);
/* tail[i] = P(two marks still together after generation i), i = 0..n. */
CBRW_API cbrw_status cbrw_split_time_tail(const cbrw_law* law, const cbrw_extinction* table,
                                          int n, double* tail, size_t cap);

/* ------------------------------------------------------------------ */
/* Spine (many-to-few) moment evaluators at finite n. x may be +-inf.  */
/* The *_mc variants run the Monte Carlo walk fallback for displacement */
/* laws without an exact n-step CDF.                                    */

CBRW_API cbrw_status cbrw_many_to_one(const cbrw_law* law, const cbrw_displacement* nu,
                                      const cbrw_extinction* table, int n, double x,
                                      double* value);
CBRW_API cbrw_status cbrw_many_to_two(const cbrw_law* law, const cbrw_displacement* nu,
                                      const cbrw_extinction* table, int n, double x,
                                      int gh_nodes, double* value);
CBRW_API cbrw_status cbrw_many_to_one_mc(const cbrw_law* law, const cbrw_displacement* nu,
                                         const cbrw_extinction* table, int n, double x,
                                         long paths, uint64_t seed, int workers,
                                         double* value, double* se);
CBRW_API cbrw_status cbrw_many_to_two_mc(const cbrw_law* law, const cbrw_displacement* nu,
                                         const cbrw_extinction* table, int n, double x,
                                         long paths, uint64_t seed, int workers,
                                         double* value, double* se);

/* ------------------------------------------------------------------ */
/* Conditioned population sampling.                                    */

typedef struct cbrw_sim_config {
  int n;
  long reps;
  uint64_t seed;
  int workers;       /* 0 = hardware concurrency */
  const double* xs;  /* statistic thresholds, may contain +-inf */
  size_t x_count;
  int r_max;
  int sampler;                 /* 0 = conditioned reduced tree, 1 = rejection */
  long node_budget;            /* <= 0 selects the default 10^7 */
  double max_expected_trials;  /* <= 0 selects the default 10^4 */
  int keep_sorted_positions;   /* retain per-rep sorted leaf positions */
} cbrw_sim_config;

CBRW_API cbrw_status cbrw_sim_run(const cbrw_law* law, const cbrw_displacement* nu,
                                  const cbrw_sim_config* config, cbrw_sim** out);
CBRW_API void cbrw_sim_free(cbrw_sim* sim);
CBRW_API long cbrw_sim_reps(const cbrw_sim* sim);
CBRW_API long cbrw_sim_failed_reps(const cbrw_sim* sim);
CBRW_API const char* cbrw_sim_first_failure(const cbrw_sim* sim);
CBRW_API cbrw_status cbrw_sim_moment(const cbrw_sim* sim, size_t x_index, int r,
                                     double* estimate, double* se);
/* Per-replication occupation statistics (NaN marks a failed replication). */
CBRW_API cbrw_status cbrw_sim_statistics(const cbrw_sim* sim, size_t x_index,
                                         double* buf, size_t cap);
CBRW_API cbrw_status cbrw_sim_leaf_counts(const cbrw_sim* sim, uint32_t* buf, size_t cap);
CBRW_API cbrw_status cbrw_sim_picked_leaves(const cbrw_sim* sim, double* buf, size_t cap);
CBRW_API cbrw_status cbrw_sim_trials(const cbrw_sim* sim, double* buf, size_t cap);
/* Borrowed view of one replication's sorted positions (valid until free). */
CBRW_API cbrw_status cbrw_sim_positions(const cbrw_sim* sim, long rep,
                                        const double** data, size_t* count);

/* ------------------------------------------------------------------ */
/* Limit moment grid.                                                  */

typedef struct cbrw_grid_config {
  double sigma2;
  int r_max;
  double x_min, x_max, x_step; /* 0 range selects the default [-6,6]/0.05 */
  int gh_nodes;                /* <= 0 selects the default 64 */
  int t_panels;                /* <= 0 selects the default 128 */
  int workers;
} cbrw_grid_config;

CBRW_API cbrw_status cbrw_grid_build(const cbrw_grid_config* config, cbrw_grid** out);
CBRW_API void cbrw_grid_free(cbrw_grid* grid);
CBRW_API int cbrw_grid_r_max(const cbrw_grid* grid);
CBRW_API double cbrw_grid_sigma2(const cbrw_grid* grid);
CBRW_API size_t cbrw_grid_t_count(const cbrw_grid* grid);
CBRW_API size_t cbrw_grid_x_count(const cbrw_grid* grid);
CBRW_API cbrw_status cbrw_grid_t_nodes(const cbrw_grid* grid, double* buf, size_t cap);
CBRW_API cbrw_status cbrw_grid_x_nodes(const cbrw_grid* grid, double* buf, size_t cap);
/* mu_i^t(x); x may be +-inf. */
CBRW_API cbrw_status cbrw_grid_value(const cbrw_grid* grid, int i, double t, double x,
                                     double* out);
CBRW_API cbrw_status cbrw_grid_node_value(const cbrw_grid* grid, int i, size_t t_idx,
                                          size_t x_idx, double* out);
CBRW_API double cbrw_grid_max_anchor_error(const cbrw_grid* grid);
CBRW_API long cbrw_grid_clamp_count(const cbrw_grid* grid);
/* Even-moment growth diagnostic; growth gets mu_{2r}(inf)^{1/2r}/(2r). */
CBRW_API cbrw_status cbrw_grid_carleman(const cbrw_grid* grid, double* growth,
                                        size_t cap, size_t* len, double* max_excess);

/* ------------------------------------------------------------------ */
/* Limiting binary branching Brownian motion on [0,1).                 */

typedef struct cbrw_bbm_config {
  double t_eval;
  const double* xs;
  size_t x_count;
  long reps;
  uint64_t seed;
  int workers;
  long particle_budget; /* <= 0 selects the default 10^6 */
} cbrw_bbm_config;

CBRW_API cbrw_status cbrw_bbm_run(const cbrw_bbm_config* config, cbrw_bbm** out);
CBRW_API void cbrw_bbm_free(cbrw_bbm* bbm);
CBRW_API long cbrw_bbm_reps(const cbrw_bbm* bbm);
CBRW_API long cbrw_bbm_failed_reps(const cbrw_bbm* bbm);
CBRW_API cbrw_status cbrw_bbm_moment(const cbrw_bbm* bbm, size_t x_index, int r,
                                     double* estimate, double* se);
CBRW_API cbrw_status cbrw_bbm_values(const cbrw_bbm* bbm, size_t x_index,
                                     double* buf, size_t cap);
CBRW_API cbrw_status cbrw_bbm_populations(const cbrw_bbm* bbm, uint32_t* buf, size_t cap);
CBRW_API cbrw_status cbrw_bbm_picked_positions(const cbrw_bbm* bbm, double* buf, size_t cap);

/* ------------------------------------------------------------------ */
/* Statistical tests (asymptotic p-values computed internally).        */

CBRW_API cbrw_status cbrw_ks_two_sample(const double* a, size_t na, const double* b,
                                        size_t nb, double* statistic, double* p_value);
CBRW_API cbrw_status cbrw_ks_exponential(const double* a, size_t na, double mean,
                                         double* statistic, double* p_value);
CBRW_API cbrw_status cbrw_ks_normal(const double* a, size_t na, double mu, double sd,
                                    double* statistic, double* p_value);
CBRW_API cbrw_status cbrw_chi2_two_sample_counts(const uint64_t* a, size_t na,
                                                 const uint64_t* b, size_t nb,
                                                 double* statistic, double* df,
                                                 double* p_value);

#ifdef __cplusplus
}
#endif

#endif /* CBRW_H */
