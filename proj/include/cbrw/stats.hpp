// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_STATS_HPP
#define CBRW_STATS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cbrw {

// Regularized upper incomplete gamma Q(a, x).
double gammq(double a, double x);

// Survival function of the chi-square distribution with df degrees of freedom.
double chi2_sf(double x, double df);

// Kolmogorov distribution tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 lambda^2}.
double kolmogorov_q(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;  // 0 for one-sample tests
};

// Two-sided one-sample KS test against a continuous CDF.
KsResult ks_test(std::span<const double> sample,
                 const std::function<double(double)>& cdf);

// Two-sided two-sample KS test with the asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct Chi2Result {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  int bins_used = 0;
};

// Two-sample chi-square homogeneity test on aligned count vectors (cell i
// holds the number of observations with value i). Adjacent cells are pooled
// until every bin has a combined count of at least `min_pooled`.
Chi2Result chi2_two_sample_counts(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b,
                                  std::uint64_t min_pooled = 10);

struct Moments {
  double estimate = 0.0;
  double stderror = 0.0;
  long reps = 0;
};

// r-th raw sample moment of `values` with its standard error.
Moments sample_moment(std::span<const double> values, int r);

// Leave-one-out jackknife standard error of the sample mean.
double jackknife_se_mean(std::span<const double> values);

// Compensated (Neumaier) summation.
double stable_sum(std::span<const double> values);

}  // namespace cbrw

#endif
