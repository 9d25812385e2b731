// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/spine.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "cbrw/errors.hpp"
#include "cbrw/gauss.hpp"
#include "cbrw/parallel.hpp"
#include "cbrw/reduced.hpp"
#include "cbrw/rng.hpp"
#include "cbrw/stats.hpp"

namespace cbrw {

SplitTimeLaw split_time_law(const OffspringLaw& law, const ExtinctionTable& table, int n) {
  if (n < 1 || n > table.horizon()) {
    throw Error(ErrorCode::invalid_argument, "split_time_law: bad horizon");
  }
  SplitTimeLaw out;
  out.n = n;
  out.tail.assign(static_cast<std::size_t>(n) + 1, 1.0);
  out.pmf.assign(static_cast<std::size_t>(n) + 1, 0.0);

  std::vector<double> m1(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> m2(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) {
    m1[static_cast<std::size_t>(k)] = reduced_moment(law, table, k, n, 1);
    m2[static_cast<std::size_t>(k)] = reduced_moment(law, table, k, n, 2);
  }
  for (int i = 1; i <= n; ++i) {
    out.tail[static_cast<std::size_t>(i)] =
        out.tail[static_cast<std::size_t>(i) - 1] * m1[static_cast<std::size_t>(i)] /
        m2[static_cast<std::size_t>(i)];
    out.pmf[static_cast<std::size_t>(i)] =
        out.tail[static_cast<std::size_t>(i) - 1] *
        (1.0 - m1[static_cast<std::size_t>(i)] / m2[static_cast<std::size_t>(i)]);
    // Same quantity via the difference form; the two agree to roundoff.
    const double diff = out.tail[static_cast<std::size_t>(i) - 1] -
                        out.tail[static_cast<std::size_t>(i)];
    if (std::abs(diff - out.pmf[static_cast<std::size_t>(i)]) > 1e-12) {
      throw Error(ErrorCode::integrity, "split_time_law: pmf forms disagree at i=" +
                                            std::to_string(i));
    }
  }

  // Product identities tying the split-time law to the survival probability.
  const double qn = table.q(n);
  double prod_m2 = 1.0;
  for (int k = 1; k <= n; ++k) prod_m2 *= m2[static_cast<std::size_t>(k)];
  const double lhs_survive = prod_m2 * out.tail[static_cast<std::size_t>(n)];
  if (std::abs(lhs_survive * qn - 1.0) > 1e-8) {
    throw Error(ErrorCode::integrity, "split_time_law: prod m2 * tail[n] != 1/q[n]");
  }
  const double sigma2 = law.sigma2();
  double prefix_m2 = 1.0;
  std::vector<double> suffix_m1_sq(static_cast<std::size_t>(n) + 2, 1.0);
  for (int k = n; k >= 1; --k) {
    suffix_m1_sq[static_cast<std::size_t>(k)] =
        suffix_m1_sq[static_cast<std::size_t>(k) + 1] *
        m1[static_cast<std::size_t>(k)] * m1[static_cast<std::size_t>(k)];
  }
  for (int j = 1; j <= n; ++j) {
    prefix_m2 *= m2[static_cast<std::size_t>(j)];
    const double lhs = prefix_m2 * suffix_m1_sq[static_cast<std::size_t>(j) + 1] *
                       out.pmf[static_cast<std::size_t>(j)];
    if (std::abs(lhs * qn / sigma2 - 1.0) > 1e-8) {
      throw Error(ErrorCode::integrity,
                  "split_time_law: split-weight identity fails at j=" + std::to_string(j));
    }
  }
  return out;
}

namespace {

void check_horizon(const ExtinctionTable& table, int n) {
  if (n < 1 || n > table.horizon()) {
    throw Error(ErrorCode::invalid_argument, "spine moment: bad horizon");
  }
}

// Monte Carlo estimate of the pair (first, second) moment ingredients for a
// displacement law without an exact n-step CDF. Per replication one common
// trajectory S and one independent sibling trajectory T are drawn; the
// split-at-j pair endpoint is S_j + (T_n - T_j). Each term is unbiased and
// replications are iid, so the empirical stderr across replications is valid.
struct McWalkResult {
  double p_one = 0.0;        // P(S_n <= a)
  double p_one_se = 0.0;
  double sum_pairs = 0.0;    // sum_j P(pair_j both <= a)
  double sum_pairs_se = 0.0;
};

McWalkResult mc_walk_probabilities(const DisplacementLaw& nu, int n, double a,
                                   const McOptions& mc, bool with_pairs) {
  if (mc.paths < 1) throw Error(ErrorCode::invalid_argument, "mc fallback: paths >= 1");
  std::vector<double> ones(static_cast<std::size_t>(mc.paths));
  std::vector<double> pairs(with_pairs ? static_cast<std::size_t>(mc.paths) : 0);
  const std::uint64_t seed = splitmix64(mc.seed ^ 0x53504e45ull);  // spine-walk tag
  parallel_for(0, mc.paths, mc.workers, [&](long rep) {
    Philox rng(seed, static_cast<std::uint64_t>(rep));
    std::vector<double> s(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> t(with_pairs ? static_cast<std::size_t>(n) + 1 : 1, 0.0);
    for (int i = 1; i <= n; ++i) {
      s[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i) - 1] + nu.sample(rng);
    }
    if (with_pairs) {
      for (int i = 1; i <= n; ++i) {
        t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i) - 1] + nu.sample(rng);
      }
    }
    const bool one = s[static_cast<std::size_t>(n)] <= a;
    ones[static_cast<std::size_t>(rep)] = one ? 1.0 : 0.0;
    if (with_pairs) {
      double count = 0.0;
      if (one) {
        const double tn = t[static_cast<std::size_t>(n)];
        for (int j = 1; j <= n; ++j) {
          const double sibling = s[static_cast<std::size_t>(j)] + tn - t[static_cast<std::size_t>(j)];
          if (sibling <= a) count += 1.0;
        }
      }
      pairs[static_cast<std::size_t>(rep)] = count;
    }
  });
  McWalkResult out;
  const Moments m1 = sample_moment(ones, 1);
  out.p_one = m1.estimate;
  out.p_one_se = m1.stderror;
  if (with_pairs) {
    const Moments mp = sample_moment(pairs, 1);
    out.sum_pairs = mp.estimate;
    out.sum_pairs_se = mp.stderror;
  }
  return out;
}

}  // namespace

SpineEstimate many_to_one_moment(const OffspringLaw& law, const DisplacementLaw& nu,
                                 const ExtinctionTable& table, int n, double x,
                                 const McOptions* mc) {
  (void)law;
  check_horizon(table, n);
  const double scale = 1.0 / (static_cast<double>(n) * table.q(n));
  if (x == std::numeric_limits<double>::infinity()) return {scale, 0.0};
  if (x == -std::numeric_limits<double>::infinity()) return {0.0, 0.0};
  const double a = std::sqrt(static_cast<double>(n)) * x;
  if (nu.has_nstep_cdf()) {
    return {nu.nstep_cdf(n, a) * scale, 0.0};
  }
  if (mc == nullptr) {
    throw Error(ErrorCode::unavailable,
                "many_to_one_moment: no exact n-step CDF for '" + nu.name() +
                    "' and the Monte Carlo fallback is disabled");
  }
  const McWalkResult walk = mc_walk_probabilities(nu, n, a, *mc, false);
  return {walk.p_one * scale, walk.p_one_se * scale};
}

SpineEstimate many_to_two_moment(const OffspringLaw& law, const DisplacementLaw& nu,
                                 const ExtinctionTable& table, int n, double x,
                                 const SpineQuadrature& quad, const McOptions* mc) {
  check_horizon(table, n);
  if (quad.gh_nodes < 8) {
    throw Error(ErrorCode::invalid_argument,
                "many_to_two_moment: Gauss-Hermite node count must be >= 8");
  }
  const double qn = table.q(n);
  const double n2q = static_cast<double>(n) * static_cast<double>(n) * qn;
  const double sigma2 = law.sigma2();
  if (x == std::numeric_limits<double>::infinity()) {
    // Both walk probabilities are 1; the j-sum has n equal unit terms.
    return {1.0 / n2q + sigma2 / (static_cast<double>(n) * qn), 0.0};
  }
  if (x == -std::numeric_limits<double>::infinity()) return {0.0, 0.0};
  const double a = std::sqrt(static_cast<double>(n)) * x;

  if (nu.has_nstep_cdf()) {
    const GaussHermite rule = gauss_hermite(quad.gh_nodes);
    double pair_sum = 0.0;
    for (int j = 1; j < n; ++j) {
      const double sd_common = std::sqrt(static_cast<double>(j));
      const double sd_branch = std::sqrt(static_cast<double>(n - j));
      pair_sum += rule.normal_expectation([&](double z) {
        const double u = normal_cdf((a - sd_common * z) / sd_branch);
        return u * u;
      });
    }
    // j = n: the two spines coincide through the horizon; the inner CDF is a
    // step and the term reduces to P(S_n <= a).
    pair_sum += normal_cdf(x);
    const double value = normal_cdf(x) / n2q + sigma2 * pair_sum / n2q;
    return {value, 0.0};
  }
  if (mc == nullptr) {
    throw Error(ErrorCode::unavailable,
                "many_to_two_moment: no exact n-step CDF for '" + nu.name() +
                    "' and the Monte Carlo fallback is disabled");
  }
  const McWalkResult walk = mc_walk_probabilities(nu, n, a, *mc, true);
  const double value = walk.p_one / n2q + sigma2 * walk.sum_pairs / n2q;
  const double se = std::sqrt(walk.p_one_se * walk.p_one_se +
                              sigma2 * sigma2 * walk.sum_pairs_se * walk.sum_pairs_se) /
                    n2q;
  return {value, se};
}

}  // namespace cbrw
