// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cbrw/errors.hpp"

namespace cbrw {

namespace {

// Series representation of P(a,x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw Error(ErrorCode::integrity, "gammq: series did not converge");
}

// Continued fraction for Q(a,x) (modified Lentz), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  constexpr double kFpMin = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) {
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
  }
  throw Error(ErrorCode::integrity, "gammq: continued fraction did not converge");
}

}  // namespace

double gammq(double a, double x) {
  if (x < 0.0 || a <= 0.0) {
    throw Error(ErrorCode::domain, "gammq: requires x >= 0 and a > 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, double df) { return gammq(0.5 * df, 0.5 * x); }

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-14 * std::max(sum, 1e-30)) break;
    sign = -sign;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_test(std::span<const double> sample,
                 const std::function<double(double)>& cdf) {
  if (sample.empty()) throw Error(ErrorCode::invalid_argument, "ks_test: empty sample");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  const double sn = std::sqrt(n);
  KsResult out;
  out.statistic = d;
  out.p_value = kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
  out.n1 = sorted.size();
  return out;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::invalid_argument, "ks_two_sample: empty sample");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t ia = 0;
  std::size_t ib = 0;
  while (ia < sa.size() && ib < sb.size()) {
    const double va = sa[ia];
    const double vb = sb[ib];
    if (va <= vb) while (ia < sa.size() && sa[ia] == va) ++ia;
    if (vb <= va) while (ib < sb.size() && sb[ib] == vb) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double sn = std::sqrt(ne);
  KsResult out;
  out.statistic = d;
  out.p_value = kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
  out.n1 = sa.size();
  out.n2 = sb.size();
  return out;
}

Chi2Result chi2_two_sample_counts(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b,
                                  std::uint64_t min_pooled) {
  const std::size_t cells = std::max(a.size(), b.size());
  if (cells == 0) throw Error(ErrorCode::invalid_argument, "chi2: empty counts");
  auto cell = [](std::span<const std::uint64_t> v, std::size_t i) -> std::uint64_t {
    return i < v.size() ? v[i] : 0;
  };
  // Pool adjacent cells until every bin holds at least min_pooled pooled counts.
  std::vector<double> bin_a;
  std::vector<double> bin_b;
  double acc_a = 0.0;
  double acc_b = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    acc_a += static_cast<double>(cell(a, i));
    acc_b += static_cast<double>(cell(b, i));
    if (acc_a + acc_b >= static_cast<double>(min_pooled)) {
      bin_a.push_back(acc_a);
      bin_b.push_back(acc_b);
      acc_a = acc_b = 0.0;
    }
  }
  if (acc_a + acc_b > 0.0) {
    if (bin_a.empty()) {
      bin_a.push_back(acc_a);
      bin_b.push_back(acc_b);
    } else {
      bin_a.back() += acc_a;
      bin_b.back() += acc_b;
    }
  }
  const double tot_a = stable_sum(bin_a);
  const double tot_b = stable_sum(bin_b);
  const double total = tot_a + tot_b;
  if (tot_a == 0.0 || tot_b == 0.0) {
    throw Error(ErrorCode::invalid_argument, "chi2: one sample is empty");
  }
  Chi2Result out;
  out.bins_used = static_cast<int>(bin_a.size());
  if (bin_a.size() < 2) {
    out.df = 0.0;
    out.p_value = 1.0;
    return out;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < bin_a.size(); ++i) {
    const double pooled = bin_a[i] + bin_b[i];
    const double ea = pooled * tot_a / total;
    const double eb = pooled * tot_b / total;
    stat += (bin_a[i] - ea) * (bin_a[i] - ea) / ea;
    stat += (bin_b[i] - eb) * (bin_b[i] - eb) / eb;
  }
  out.statistic = stat;
  out.df = static_cast<double>(bin_a.size() - 1);
  out.p_value = chi2_sf(stat, out.df);
  return out;
}

double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double comp = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

Moments sample_moment(std::span<const double> values, int r) {
  if (values.empty()) {
    throw Error(ErrorCode::invalid_argument, "sample_moment: empty sample");
  }
  if (r < 1) throw Error(ErrorCode::invalid_argument, "sample_moment: r >= 1");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  double comp = 0.0;
  double comp_sq = 0.0;
  for (const double v : values) {
    double p = v;
    for (int i = 1; i < r; ++i) p *= v;
    double t = sum + p;
    comp += std::abs(sum) >= std::abs(p) ? (sum - t) + p : (p - t) + sum;
    sum = t;
    const double p2 = p * p;
    t = sum_sq + p2;
    comp_sq += sum_sq >= p2 ? (sum_sq - t) + p2 : (p2 - t) + sum_sq;
    sum_sq = t;
  }
  sum += comp;
  sum_sq += comp_sq;
  Moments out;
  out.reps = static_cast<long>(values.size());
  out.estimate = sum / n;
  const double var = std::max(0.0, sum_sq / n - out.estimate * out.estimate);
  out.stderror = values.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  return out;
}

double jackknife_se_mean(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  const double total = stable_sum(values);
  const double dn = static_cast<double>(n);
  // theta_i = (total - x_i)/(n-1); SE^2 = (n-1)/n * sum (theta_i - mean)^2
  const double mean_loo = total / dn;  // mean of theta_i equals the sample mean
  double ss = 0.0;
  for (const double v : values) {
    const double theta = (total - v) / (dn - 1.0);
    const double d = theta - mean_loo;
    ss += d * d;
  }
  return std::sqrt(ss * (dn - 1.0) / dn);
}

}  // namespace cbrw
