// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "cbrw/errors.hpp"
#include "cbrw/parallel.hpp"

namespace cbrw {

AliasTable::AliasTable(std::span<const double> pmf) {
  const std::size_t n = pmf.size();
  if (n == 0) throw Error(ErrorCode::invalid_argument, "alias table: empty pmf");
  const double total = stable_sum(pmf);
  if (!(total > 0.0)) throw Error(ErrorCode::invalid_argument, "alias table: zero mass");
  threshold_.assign(n, 1.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = pmf[i] * static_cast<double>(n) / total;
  std::vector<int> small;
  std::vector<int> large;
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));
  }
  while (!small.empty() && !large.empty()) {
    const int s = small.back();
    const int l = large.back();
    small.pop_back();
    threshold_[static_cast<std::size_t>(s)] = scaled[static_cast<std::size_t>(s)];
    alias_[static_cast<std::size_t>(s)] = l;
    scaled[static_cast<std::size_t>(l)] -= 1.0 - scaled[static_cast<std::size_t>(s)];
    if (scaled[static_cast<std::size_t>(l)] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are numerically 1.
}

int AliasTable::sample(Philox& rng) const {
  const double z = rng.uniform01() * static_cast<double>(threshold_.size());
  auto i = static_cast<std::size_t>(z);
  if (i >= threshold_.size()) i = threshold_.size() - 1;
  const double frac = z - static_cast<double>(i);
  return frac < threshold_[i] ? static_cast<int>(i) : alias_[i];
}

std::string SpatialTree::label(std::size_t node_index) const {
  if (!full_capture || node_index >= nodes.size()) {
    throw Error(ErrorCode::invalid_argument, "label: tree was not fully captured");
  }
  std::vector<std::uint32_t> path;
  std::int64_t cur = static_cast<std::int64_t>(node_index);
  while (cur > 0) {
    path.push_back(nodes[static_cast<std::size_t>(cur)].child_rank);
    cur = nodes[static_cast<std::size_t>(cur)].parent;
  }
  if (path.empty()) return "";
  std::string out;
  for (std::size_t i = path.size(); i-- > 0;) {
    out += std::to_string(path[i]);
    if (i > 0) out += '.';
  }
  return out;
}

double occupation_statistic(const SpatialTree& tree, double x) {
  if (tree.horizon < 1) {
    throw Error(ErrorCode::invalid_argument, "occupation_statistic: empty horizon");
  }
  if (x == std::numeric_limits<double>::infinity()) {
    return static_cast<double>(tree.leaf_positions.size()) / tree.horizon;
  }
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  const double cut = std::sqrt(static_cast<double>(tree.horizon)) * x;
  std::size_t count = 0;
  for (const double p : tree.leaf_positions) count += p <= cut ? 1 : 0;
  return static_cast<double>(count) / tree.horizon;
}

ReducedAliasSchedule::ReducedAliasSchedule(const OffspringLaw& law,
                                           const ExtinctionTable& table, int n)
    : n_(n) {
  if (n < 1 || n > table.horizon()) {
    throw Error(ErrorCode::invalid_argument, "alias schedule: bad horizon");
  }
  tables_.reserve(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    // Table m serves generation k = n - m; reuse holds because the reduced
    // law depends on (k, n) only through n - k.
    const ReducedLaw rl = reduced_offspring_pmf(law, table, n - m, n);
    tables_.emplace_back(std::span<const double>(rl.pmf));
  }
}

const AliasTable& ReducedAliasSchedule::at_depth(int depth) const {
  if (depth < 0 || depth >= n_) {
    throw Error(ErrorCode::invalid_argument, "alias schedule: bad depth");
  }
  return tables_[static_cast<std::size_t>(n_ - depth - 1)];
}

namespace {

struct StackEntry {
  std::uint32_t depth;
  double position;
  std::int64_t node_index;   // -1 unless capturing
  std::uint32_t child_rank;  // rank among siblings, for capture
};

}  // namespace

SpatialTree sample_conditioned(const ReducedAliasSchedule& schedule,
                               const DisplacementLaw& nu, Philox& rng,
                               long node_budget, bool capture_nodes) {
  const int n = schedule.horizon();
  SpatialTree tree;
  tree.horizon = n;
  tree.full_capture = capture_nodes;
  long nodes_used = 0;

  std::vector<StackEntry> stack;
  stack.push_back({0u, 0.0, -1, 0u});
  while (!stack.empty()) {
    StackEntry cur = stack.back();
    stack.pop_back();
    if (++nodes_used > node_budget) {
      throw Error(ErrorCode::budget,
                  "conditioned sampler: node budget exceeded (" +
                      std::to_string(node_budget) + ")");
    }
    std::int64_t index = -1;
    if (capture_nodes) {
      index = static_cast<std::int64_t>(tree.nodes.size());
      tree.nodes.push_back({cur.node_index, cur.child_rank, cur.depth, cur.position});
    }
    if (cur.depth == static_cast<std::uint32_t>(n)) {
      tree.leaf_positions.push_back(cur.position);
      continue;
    }
    const int children = schedule.at_depth(static_cast<int>(cur.depth)).sample(rng);
    for (int c = 0; c < children; ++c) {
      const double pos = cur.position + nu.sample(rng);
      stack.push_back({cur.depth + 1, pos, index, static_cast<std::uint32_t>(c + 1)});
    }
  }
  return tree;
}

RejectionDraw sample_rejection(const OffspringLaw& law,
                               const ExtinctionTable& table,
                               const DisplacementLaw& nu, int n, Philox& rng,
                               long node_budget, double max_expected_trials,
                               long trial_budget, bool capture_nodes) {
  if (n < 1 || n > table.horizon()) {
    throw Error(ErrorCode::invalid_argument, "rejection sampler: bad horizon");
  }
  const double expected_trials = 1.0 / table.q(n);
  if (expected_trials > max_expected_trials) {
    throw Error(ErrorCode::budget,
                "rejection sampler: expected trials 1/q[n] = " +
                    std::to_string(expected_trials) +
                    " exceeds the feasibility guard; use the conditioned "
                    "reduced sampler instead");
  }
  const AliasTable offspring{law.pmf()};

  RejectionDraw out;
  for (long trial = 1; trial <= trial_budget; ++trial) {
    SpatialTree tree;
    tree.horizon = n;
    tree.full_capture = capture_nodes;
    long nodes_used = 0;
    std::vector<StackEntry> stack;
    stack.push_back({0u, 0.0, -1, 0u});
    bool aborted = false;
    while (!stack.empty()) {
      StackEntry cur = stack.back();
      stack.pop_back();
      if (++nodes_used > node_budget) {
        aborted = true;
        break;
      }
      std::int64_t index = -1;
      if (capture_nodes) {
        index = static_cast<std::int64_t>(tree.nodes.size());
        tree.nodes.push_back({cur.node_index, cur.child_rank, cur.depth, cur.position});
      }
      if (cur.depth == static_cast<std::uint32_t>(n)) {
        tree.leaf_positions.push_back(cur.position);
        continue;
      }
      const int children = offspring.sample(rng);
      for (int c = 0; c < children; ++c) {
        const double pos = cur.position + nu.sample(rng);
        stack.push_back({cur.depth + 1, pos, index, static_cast<std::uint32_t>(c + 1)});
      }
    }
    if (aborted) {
      throw Error(ErrorCode::budget, "rejection sampler: node budget exceeded");
    }
    if (!tree.leaf_positions.empty()) {
      out.tree = std::move(tree);
      out.trials = trial;
      return out;
    }
  }
  throw Error(ErrorCode::budget,
              "rejection sampler: no surviving tree within " +
                  std::to_string(trial_budget) +
                  " trials; use the conditioned reduced sampler instead");
}

Moments SimSummary::moment(std::size_t x_index, int r) const {
  const std::vector<double> clean = clean_statistics(x_index);
  return sample_moment(clean, r);
}

std::vector<double> SimSummary::clean_statistics(std::size_t x_index) const {
  if (x_index >= statistic.size()) {
    throw Error(ErrorCode::invalid_argument, "sim summary: x index out of range");
  }
  std::vector<double> clean;
  clean.reserve(statistic[x_index].size());
  for (const double v : statistic[x_index]) {
    if (!std::isnan(v)) clean.push_back(v);
  }
  if (clean.empty()) throw Error(ErrorCode::integrity, "sim summary: all replications failed");
  return clean;
}

SimSummary run_simulation(const OffspringLaw& law, const DisplacementLaw& nu,
                          const SimConfig& config) {
  if (config.n < 1) throw Error(ErrorCode::invalid_argument, "simulate: n >= 1");
  if (config.reps < 1) throw Error(ErrorCode::invalid_argument, "simulate: reps >= 1");
  if (config.r_max < 1) throw Error(ErrorCode::invalid_argument, "simulate: r_max >= 1");

  const ExtinctionTable table(law, config.n);
  std::unique_ptr<ReducedAliasSchedule> schedule;
  if (config.sampler == SamplerKind::conditioned) {
    schedule = std::make_unique<ReducedAliasSchedule>(law, table, config.n);
  } else {
    // Surface the feasibility guard before spawning workers.
    if (1.0 / table.q(config.n) > config.max_expected_trials) {
      throw Error(ErrorCode::budget,
                  "simulate: rejection sampling infeasible at n = " +
                      std::to_string(config.n));
    }
  }

  SimSummary out;
  out.config = config;
  out.sigma2 = law.sigma2();
  const auto reps = static_cast<std::size_t>(config.reps);
  out.statistic.assign(config.xs.size(), std::vector<double>(reps, 0.0));
  out.leaf_count.assign(reps, 0);
  out.picked_leaf.assign(reps, std::numeric_limits<double>::quiet_NaN());
  if (config.sampler == SamplerKind::rejection) out.trials.assign(reps, 0.0);
  if (config.keep_sorted_positions) out.sorted_positions.assign(reps, {});

  std::mutex failure_mutex;

  parallel_for(0, config.reps, config.workers, [&](long rep) {
    Philox rng(config.seed, static_cast<std::uint64_t>(rep));
    try {
      SpatialTree tree;
      if (config.sampler == SamplerKind::conditioned) {
        tree = sample_conditioned(*schedule, nu, rng, config.node_budget);
      } else {
        RejectionDraw draw =
            sample_rejection(law, table, nu, config.n, rng, config.node_budget,
                             config.max_expected_trials);
        out.trials[static_cast<std::size_t>(rep)] = static_cast<double>(draw.trials);
        tree = std::move(draw.tree);
      }
      for (std::size_t xi = 0; xi < config.xs.size(); ++xi) {
        out.statistic[xi][static_cast<std::size_t>(rep)] =
            occupation_statistic(tree, config.xs[xi]);
      }
      out.leaf_count[static_cast<std::size_t>(rep)] =
          static_cast<std::uint32_t>(tree.leaf_positions.size());
      const std::size_t pick =
          rng.uniform_below(static_cast<std::uint64_t>(tree.leaf_positions.size()));
      out.picked_leaf[static_cast<std::size_t>(rep)] = tree.leaf_positions[pick];
      if (config.keep_sorted_positions) {
        std::sort(tree.leaf_positions.begin(), tree.leaf_positions.end());
        out.sorted_positions[static_cast<std::size_t>(rep)] = std::move(tree.leaf_positions);
      }
    } catch (const Error& e) {
      for (std::size_t xi = 0; xi < config.xs.size(); ++xi) {
        out.statistic[xi][static_cast<std::size_t>(rep)] =
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
