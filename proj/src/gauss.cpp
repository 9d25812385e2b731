// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/gauss.hpp"

#include <cmath>
#include <cstdlib>

#include "cbrw/errors.hpp"

namespace cbrw {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

GaussHermite gauss_hermite(int n) {
  if (n < 1 || n > 256) {
    throw Error(ErrorCode::invalid_argument,
                "gauss_hermite: node count must be in [1, 256]");
  }
  constexpr double kEps = 1e-14;
  constexpr int kMaxIter = 64;
  constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}

  GaussHermite rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);

  const int half = (n + 1) / 2;
  double z = 0.0;
  double pp = 0.0;
  for (int i = 0; i < half; ++i) {
    // Initial guesses for the i-th largest root.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
    }
    int iter = 0;
    for (; iter < kMaxIter; ++iter) {
      double p1 = kPiQuarterInv;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z_prev = z;
      z = z_prev - p1 / pp;
      if (std::abs(z - z_prev) <= kEps) break;
    }
    if (iter == kMaxIter) {
      throw Error(ErrorCode::integrity, "gauss_hermite: Newton did not converge");
    }
    rule.nodes[static_cast<std::size_t>(i)] = z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -z;
    const double w = 2.0 / (pp * pp);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace cbrw
