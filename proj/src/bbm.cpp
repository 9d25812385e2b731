// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/bbm.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include "cbrw/errors.hpp"
#include "cbrw/parallel.hpp"

namespace cbrw {

std::vector<double> simulate_bbm(const BbmConfig& config, Philox& rng,
                                 std::uint32_t& population_out,
                                 double& picked_position_out) {
  const double t_eval = config.t_eval;
  if (!(t_eval > 0.0 && t_eval < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "bbm: t_eval must lie in (0,1)");
  }
  struct Particle {
    double birth_time;
    double position;
  };
  std::vector<Particle> stack;
  std::vector<double> alive;
  stack.push_back({0.0, 0.0});
  long used = 0;
  while (!stack.empty()) {
    const Particle p = stack.back();
    stack.pop_back();
    if (++used > config.particle_budget) {
      throw Error(ErrorCode::budget, "bbm: particle budget exceeded (" +
                                         std::to_string(config.particle_budget) + ")");
    }
    const double split = p.birth_time + (1.0 - p.birth_time) * rng.uniform_pos();
    if (split >= t_eval) {
      alive.push_back(p.position +
                      std::sqrt(t_eval - p.birth_time) * rng.normal());
    } else {
      const double at_split =
          p.position + std::sqrt(split - p.birth_time) * rng.normal();
      stack.push_back({split, at_split});
      stack.push_back({split, at_split});
    }
  }
  population_out = static_cast<std::uint32_t>(alive.size());
  picked_position_out =
      alive[rng.uniform_below(static_cast<std::uint64_t>(alive.size()))];
  std::vector<double> out(config.xs.size(), 0.0);
  const double scale = 1.0 - t_eval;
  for (std::size_t xi = 0; xi < config.xs.size(); ++xi) {
    const double x = config.xs[xi];
    if (x == std::numeric_limits<double>::infinity()) {
      out[xi] = scale * static_cast<double>(alive.size());
      continue;
    }
    if (x == -std::numeric_limits<double>::infinity()) continue;
    std::size_t count = 0;
    for (const double pos : alive) count += pos <= x ? 1 : 0;
    out[xi] = scale * static_cast<double>(count);
  }
  return out;
}

Moments BbmSummary::moment(std::size_t x_index, int r) const {
  if (x_index >= value.size()) {
    throw Error(ErrorCode::invalid_argument, "bbm summary: x index out of range");
  }
  std::vector<double> powered;
  powered.reserve(value[x_index].size());
  for (const double v : value[x_index]) {
    if (std::isnan(v)) continue;
    double p = v;
    for (int i = 1; i < r; ++i) p *= v;
    powered.push_back(p);
  }
  if (powered.empty()) throw Error(ErrorCode::integrity, "bbm summary: all replications failed");
  Moments out;
  out.reps = static_cast<long>(powered.size());
  out.estimate = stable_sum(powered) / static_cast<double>(powered.size());
  out.stderror = jackknife_se_mean(powered);
  return out;
}

BbmSummary run_bbm(const BbmConfig& config) {
  if (config.reps < 1) throw Error(ErrorCode::invalid_argument, "bbm: reps >= 1");
  if (!(config.t_eval > 0.0 && config.t_eval < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "bbm: t_eval must lie in (0,1)");
  }
  BbmSummary out;
  out.config = config;
  const auto reps = static_cast<std::size_t>(config.reps);
  out.value.assign(config.xs.size(), std::vector<double>(reps, 0.0));
  out.population.assign(reps, 0);
  out.picked_position.assign(reps, std::numeric_limits<double>::quiet_NaN());
  std::mutex failure_mutex;
  const std::uint64_t seed = splitmix64(config.seed ^ 0x42424dull);  // bbm tag
  parallel_for(0, config.reps, config.workers, [&](long rep) {
    Philox rng(seed, static_cast<std::uint64_t>(rep));
    try {
      std::uint32_t population = 0;
      double picked = 0.0;
      const std::vector<double> values = simulate_bbm(config, rng, population, picked);
      for (std::size_t xi = 0; xi < config.xs.size(); ++xi) {
        out.value[xi][static_cast<std::size_t>(rep)] = values[xi];
      }
      out.population[static_cast<std::size_t>(rep)] = population;
      out.picked_position[static_cast<std::size_t>(rep)] = picked;
    } catch (const Error& e) {
      for (std::size_t xi = 0; xi < config.xs.size(); ++xi) {
        out.value[xi][static_cast<std::size_t>(rep)] =
            std::numeric_limits<double>::quiet_NaN();
      }
      std::lock_guard<std::mutex> lock(failure_mutex);
      ++out.failed_reps;
      if (out.first_failure.empty()) out.first_failure = e.what();
    }
  });
  return out;
}

}  // namespace cbrw
