// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_BBM_HPP
#define CBRW_BBM_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cbrw/rng.hpp"
#include "cbrw/stats.hpp"

namespace cbrw {

// Binary branching Brownian motion on [0,1): a particle born at time t0
// moves as a standard Brownian motion and splits in two at a time uniform
// on (t0, 1). Event-driven and exact: positions advance lazily by Gaussian
// increments only at split and evaluation times. The rescaled occupation
// count (1 - t) #{particles at t with position <= x} converges in law to
// the sigma^2 = 2 normalized limit variable as t -> 1.

struct BbmConfig {
  double t_eval = 0.99;
  std::vector<double> xs = {-1.0, 0.0, 1.0};
  long reps = 10'000;
  std::uint64_t seed = 1;
  int workers = 0;
  long particle_budget = 1'000'000;
};

// One replication: returns (1 - t_eval) * #{particles at t_eval with
// position <= x} for each x in xs, appending the population count and one
// uniformly chosen particle position through the output arguments.
std::vector<double> simulate_bbm(const BbmConfig& config, Philox& rng,
                                 std::uint32_t& population_out,
                                 double& picked_position_out);

struct BbmSummary {
  BbmConfig config;
  std::vector<std::vector<double>> value;  // [x_index][rep]
  std::vector<std::uint32_t> population;   // [rep]
  std::vector<double> picked_position;     // [rep]
  long failed_reps = 0;
  std::string first_failure;

  // Empirical r-th moment of the rescaled count with jackknife stderr.
  Moments moment(std::size_t x_index, int r) const;
};

BbmSummary run_bbm(const BbmConfig& config);

}  // namespace cbrw

#endif
