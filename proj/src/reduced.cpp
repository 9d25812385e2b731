// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/reduced.hpp"

#include <cmath>

#include "cbrw/errors.hpp"
#include "cbrw/stats.hpp"

namespace cbrw {

namespace {

constexpr int kMaxMomentOrder = 12;
constexpr double kSupportTailCut = 1e-14;

void check_generation(const ExtinctionTable& table, int k, int n) {
  if (n < 1 || n > table.horizon()) {
    throw Error(ErrorCode::domain, "reduced process: horizon outside extinction table");
  }
  if (k < 1 || k > n) {
    throw Error(ErrorCode::domain, "reduced process: generation k must lie in [1, n]");
  }
}

}  // namespace

double ReducedLaw::mean() const {
  double acc = 0.0;
  for (std::size_t l = pmf.size(); l-- > 1;) acc += static_cast<double>(l) * pmf[l];
  return acc;
}

double reduced_pgf(const OffspringLaw& law, const ExtinctionTable& table,
                   int k, int n, double s) {
  check_generation(table, k, n);
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::domain, "reduced_pgf: s must lie in [0,1]");
  }
  const double qa = table.q(n - k);
  const double qb = table.q(n - k + 1);
  return 1.0 - law.survival_map(qa * (1.0 - s)) / qb;
}

ReducedLaw reduced_offspring_pmf(const OffspringLaw& law,
                                 const ExtinctionTable& table, int k, int n) {
  check_generation(table, k, n);
  ReducedLaw out;
  out.k = k;
  out.n = n;
  out.qa = table.q(n - k);
  out.qb = table.q(n - k + 1);
  const double a = 1.0 - out.qa;
  const auto base = law.pmf();
  const int support = static_cast<int>(base.size()) - 1;

  out.pmf.assign(static_cast<std::size_t>(support) + 1, 0.0);
  // p_0 through the same safe path that built the table; identically zero.
  out.pmf[0] = (table.q(n - k + 1) - law.survival_map(out.qa)) / out.qb;

  double qa_pow = 1.0;
  for (int l = 1; l <= support; ++l) {
    qa_pow *= out.qa;
    if (qa_pow == 0.0) break;
    // sum_{j >= l} p_j C(j,l) a^{j-l}, with C(j,l) a^{j-l} updated iteratively.
    double weight = 1.0;  // C(l,l) a^0
    double acc = base[static_cast<std::size_t>(l)];
    for (int j = l; j < support; ++j) {
      weight *= a * (j + 1.0) / (j + 1.0 - l);
      acc += base[static_cast<std::size_t>(j) + 1] * weight;
    }
    out.pmf[static_cast<std::size_t>(l)] = acc * qa_pow / out.qb;
  }

  // Trim to the smallest support with tail mass below the cutoff.
  double tail = 0.0;
  std::size_t keep = out.pmf.size();
  while (keep > 2 && tail + out.pmf[keep - 1] < kSupportTailCut) {
    tail += out.pmf[keep - 1];
    --keep;
  }
  out.pmf.resize(keep);
  return out;
}

double reduced_factorial_moment(const OffspringLaw& law,
                                const ExtinctionTable& table, int k, int n,
                                int r) {
  check_generation(table, k, n);
  if (r < 1) throw Error(ErrorCode::invalid_argument, "reduced moment: r >= 1");
  const double qa = table.q(n - k);
  const double qb = table.q(n - k + 1);
  return std::pow(qa, r) / qb * law.factorial_moment(r);
}

const std::vector<std::vector<double>>& stirling2_table() {
  static const std::vector<std::vector<double>> table = [] {
    std::vector<std::vector<double>> s(kMaxMomentOrder + 1);
    for (int r = 0; r <= kMaxMomentOrder; ++r) {
      s[static_cast<std::size_t>(r)].assign(static_cast<std::size_t>(r) + 1, 0.0);
    }
    s[0][0] = 1.0;
    for (int r = 1; r <= kMaxMomentOrder; ++r) {
      for (int j = 1; j <= r; ++j) {
        const double carry = j < r ? s[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j)] : 0.0;
        s[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
            j * carry + s[static_cast<std::size_t>(r - 1)][static_cast<std::size_t>(j - 1)];
      }
    }
    return s;
  }();
  return table;
}

double reduced_moment(const OffspringLaw& law, const ExtinctionTable& table,
                      int k, int n, int r) {
  check_generation(table, k, n);
  if (r < 1 || r > kMaxMomentOrder) {
    throw Error(ErrorCode::invalid_argument,
                "reduced_moment: r must lie in [1, 12]");
  }
  const auto& stirling = stirling2_table();
  double acc = 0.0;
  for (int j = 1; j <= r; ++j) {
    acc += stirling[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] *
           reduced_factorial_moment(law, table, k, n, j);
  }
  return acc;
}

}  // namespace cbrw
