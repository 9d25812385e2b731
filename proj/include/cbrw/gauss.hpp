// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_GAUSS_HPP
#define CBRW_GAUSS_HPP

#include <vector>

namespace cbrw {

// Standard normal CDF, accurate in both tails.
double normal_cdf(double x);

// Gauss-Hermite rule for weight exp(-z^2) on the real line (physicists'
// convention): integral f(z) e^{-z^2} dz ~ sum w_i f(z_i).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;

  // E[f(Z)] for Z ~ N(0,1) via the substitution z = x/sqrt(2).
  template <typename Fn>
  double normal_expectation(Fn&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      acc += weights[i] * f(1.4142135623730951 * nodes[i]);
    }
    return acc * 0.5641895835477563;  // 1/sqrt(pi)
  }
};

// Computes the n-point rule by Newton iteration on the orthonormal Hermite
// recurrence. Valid for 1 <= n <= 256.
GaussHermite gauss_hermite(int n);

}  // namespace cbrw

#endif
