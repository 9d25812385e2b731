// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_SPINE_HPP
#define CBRW_SPINE_HPP

#include <cstdint>
#include <vector>

#include "cbrw/displacement.hpp"
#include "cbrw/offspring.hpp"

namespace cbrw {

// Law of the first generation at which two marks on the conditioned reduced
// tree follow different children:
//   tail[i] = prod_{k=1..i} m_1(k)/m_2(k),   pmf[i] = tail[i-1] - tail[i].
struct SplitTimeLaw {
  int n = 0;
  std::vector<double> tail;  // index 0..n, tail[0] = 1
  std::vector<double> pmf;   // index 0..n, pmf[0] = 0
};

// Builds the law and validates the product identities
//   prod_k m_2(k) * tail[n] = 1/q[n]
//   prod_{k<=j} m_2(k) * prod_{k>j} m_1(k)^2 * pmf[j] = sigma^2/q[n]
// to 1e-8 relative (throws ErrorCode::integrity on violation).
SplitTimeLaw split_time_law(const OffspringLaw& law, const ExtinctionTable& table, int n);

struct SpineQuadrature {
  int gh_nodes = 64;  // configuration error below 8
};

struct McOptions {
  long paths = 1'000'000;
  std::uint64_t seed = 1;
  int workers = 0;
};

struct SpineEstimate {
  double value = 0.0;
  double stderror = 0.0;  // 0 for exact routes
};

// First moment of the conditioned occupation statistic at finite n:
//   E[Z^(n)(-inf, sqrt(n) x]/n | survival] = P(S_n <= sqrt(n) x) / (n q[n]),
// with S_n the plain n-step walk. Exact when nu carries the n-step CDF;
// otherwise a Monte Carlo walk fallback is used when `mc` is given, and
// ErrorCode::unavailable is thrown when it is not.
SpineEstimate many_to_one_moment(const OffspringLaw& law, const DisplacementLaw& nu,
                                 const ExtinctionTable& table, int n, double x,
                                 const McOptions* mc = nullptr);

// Second moment at finite n. For the normal preset the two-spine term is
//   sigma^2/(n^2 q[n]) * sum_{j=1..n} E[ Phi((sqrt(n)x - sqrt(j) Z)/sqrt(n-j))^2 ],
// evaluated by Gauss-Hermite; the j = n term degenerates to an indicator.
SpineEstimate many_to_two_moment(const OffspringLaw& law, const DisplacementLaw& nu,
                                 const ExtinctionTable& table, int n, double x,
                                 const SpineQuadrature& quad = {},
                                 const McOptions* mc = nullptr);

}  // namespace cbrw

#endif
