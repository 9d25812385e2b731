// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_REDUCED_HPP
#define CBRW_REDUCED_HPP

#include <vector>

#include "cbrw/offspring.hpp"

namespace cbrw {

// Offspring law of the conditioned reduced process for a particle at
// generation k-1 of horizon n. With a = 1 - q[n-k] and b = 1 - q[n-k+1]
// (iterates of the pgf at 0) the per-particle generating function is
//   fhat(s) = (f(a + s(1-a)) - b) / (1 - b),
// so p_0 vanishes identically and the process cannot die before n.
struct ReducedLaw {
  int k = 0;
  int n = 0;
  double qa = 0.0;  // q[n-k]
  double qb = 0.0;  // q[n-k+1]
  std::vector<double> pmf;  // index l; pmf[0] == 0 exactly

  double mean() const;
};

// fhat(s) evaluated in the cancellation-safe form 1 - g(qa (1-s)) / qb,
// which is exactly 0 at s = 0 because the extinction table defines
// qb = g(qa) through the same code path.
double reduced_pgf(const OffspringLaw& law, const ExtinctionTable& table,
                   int k, int n, double s);

// Coefficient extraction by binomial expansion of f(a + s(1-a)); support is
// trimmed at the smallest length with tail mass < 1e-14.
ReducedLaw reduced_offspring_pmf(const OffspringLaw& law,
                                 const ExtinctionTable& table, int k, int n);

// fhat^{(r)}(1) = qa^r / qb * f^{(r)}(1).
double reduced_factorial_moment(const OffspringLaw& law,
                                const ExtinctionTable& table, int k, int n,
                                int r);

// Raw moment m_r(k) = sum_l l^r p_l(k,n), assembled from factorial moments
// through Stirling numbers of the second kind (r <= 12).
double reduced_moment(const OffspringLaw& law, const ExtinctionTable& table,
                      int k, int n, int r);

// Stirling numbers of the second kind S(r, j) for 0 <= j <= r <= 12.
const std::vector<std::vector<double>>& stirling2_table();

}  // namespace cbrw

#endif
