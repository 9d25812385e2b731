// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_SAMPLER_HPP
#define CBRW_SAMPLER_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cbrw/displacement.hpp"
#include "cbrw/offspring.hpp"
#include "cbrw/reduced.hpp"
#include "cbrw/rng.hpp"
#include "cbrw/stats.hpp"

namespace cbrw {

// Walker alias table for O(1) discrete sampling.
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> pmf);
  int sample(Philox& rng) const;

 private:
  std::vector<double> threshold_;
  std::vector<int> alias_;
};

struct SpatialTreeNode {
  std::int64_t parent = -1;      // index into nodes, -1 for the root
  std::uint32_t child_rank = 0;  // 1-based rank among siblings
  std::uint32_t depth = 0;
  double position = 0.0;
};

// Ulam-Harris-labeled rooted tree with positions. leaf_positions always
// holds the generation-n positions (in traversal order); the node list is
// only populated when full capture is requested.
struct SpatialTree {
  int horizon = 0;
  std::vector<double> leaf_positions;
  std::vector<SpatialTreeNode> nodes;
  bool full_capture = false;

  std::string label(std::size_t node_index) const;  // e.g. "2.3.6"
};

// #{generation-n individuals with position <= sqrt(n) x} / n.
// x = +inf gives the rescaled total mass, x = -inf gives 0.
double occupation_statistic(const SpatialTree& tree, double x);

// Alias tables for the reduced offspring laws, keyed by m = n - k so that a
// particle at depth d of horizon n draws from table [n - d - 1]. Safe to
// share read-only across worker threads.
class ReducedAliasSchedule {
 public:
  ReducedAliasSchedule(const OffspringLaw& law, const ExtinctionTable& table, int n);
  const AliasTable& at_depth(int depth) const;
  int horizon() const noexcept { return n_; }

 private:
  int n_;
  std::vector<AliasTable> tables_;  // index m = n - depth - 1
};

// One exact draw from the conditioned population at generation n: the
// inhomogeneous reduced tree (which never dies before n) with iid
// displacements. Throws ErrorCode::budget if the tree exceeds node_budget.
SpatialTree sample_conditioned(const ReducedAliasSchedule& schedule,
                               const DisplacementLaw& nu, Philox& rng,
                               long node_budget = 10'000'000,
                               bool capture_nodes = false);

struct RejectionDraw {
  SpatialTree tree;
  long trials = 0;
};

// Oracle sampler: runs the plain branching random walk until generation n
// is nonempty. Requires 1/q[n] <= max_expected_trials up front.
RejectionDraw sample_rejection(const OffspringLaw& law,
                               const ExtinctionTable& table,
                               const DisplacementLaw& nu, int n, Philox& rng,
                               long node_budget = 10'000'000,
                               double max_expected_trials = 10'000.0,
                               long trial_budget = 1'000'000,
                               bool capture_nodes = false);

enum class SamplerKind { conditioned, rejection };

struct SimConfig {
  int n = 100;
  long reps = 10'000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = hardware concurrency
  std::vector<double> xs = {-1.0, 0.0, 1.0};
  int r_max = 3;
  SamplerKind sampler = SamplerKind::conditioned;
  long node_budget = 10'000'000;
  double max_expected_trials = 10'000.0;
  bool keep_sorted_positions = false;  // per-rep sorted leaf positions
};

// Replication-level summary. Replications are independent with
// per-replication Philox substreams, so every array is identical for any
// worker count under the same seed.
struct SimSummary {
  SimConfig config;
  double sigma2 = 0.0;
  std::vector<std::vector<double>> statistic;  // [x_index][rep], NaN if failed
  std::vector<std::uint32_t> leaf_count;       // [rep], 0 if failed
  std::vector<double> picked_leaf;             // one uniform leaf position per rep
  std::vector<double> trials;                  // rejection mode only
  std::vector<std::vector<double>> sorted_positions;  // optional, [rep]
  long failed_reps = 0;
  std::string first_failure;

  Moments moment(std::size_t x_index, int r) const;
  std::vector<double> clean_statistics(std::size_t x_index) const;
};

SimSummary run_simulation(const OffspringLaw& law, const DisplacementLaw& nu,
                          const SimConfig& config);

}  // namespace cbrw

#endif
