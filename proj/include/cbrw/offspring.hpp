// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_OFFSPRING_HPP
#define CBRW_OFFSPRING_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbrw {

// A critical offspring distribution: mean exactly 1 (within 1e-10), finite
// positive variance. Parametric laws with infinite support are truncated at
// a point where both the tail mass and a certified bound on the order-12
// factorial-moment tail are below 1e-15, then renormalized; criticality is
// re-validated after renormalization.
class OffspringLaw {
 public:
  static OffspringLaw geometric(double success);  // p_k = b (1-b)^k; critical iff b = 1/2
  static OffspringLaw binary();                   // p_0 = p_2 = 1/2
  static OffspringLaw poisson(double lambda);     // critical iff lambda = 1
  static OffspringLaw from_pmf(std::vector<double> pmf, std::string name = "pmf");

  // CLI grammar: "geometric:0.5" | "binary" | "poisson:1" | "pmf:p0,p1,...".
  static OffspringLaw parse(std::string_view spec);

  const std::string& name() const noexcept { return name_; }
  std::span<const double> pmf() const noexcept { return pmf_; }
  double mean() const noexcept { return mean_; }
  double sigma2() const noexcept { return sigma2_; }
  int max_support() const noexcept { return static_cast<int>(pmf_.size()) - 1; }

  // Probability generating function f(s) = sum_j p_j s^j, s in [0,1].
  double pgf(double s) const;

  // f^{(r)}(1) = sum_j p_j j(j-1)...(j-r+1). For truncated parametric laws
  // the discarded tail is certified below 1e-9 relative; otherwise throws
  // with the bound that was achieved.
  double factorial_moment(int r) const;

  // Survival map g(q) = 1 - f(1-q), evaluated in a cancellation-safe form:
  // g(q) = sum_{j>=1} p_j (1 - (1-q)^j), smallest terms first.
  double survival_map(double q) const;

 private:
  enum class Family { finite, geometric, poisson };

  OffspringLaw() = default;
  void finalize_and_validate();
  double analytic_pmf(int j) const;
  double analytic_tail_ratio(int j) const;

  std::string name_;
  std::vector<double> pmf_;
  double mean_ = 0.0;
  double sigma2_ = 0.0;
  Family family_ = Family::finite;
  double param_ = 0.0;
  double renorm_ = 1.0;  // truncated tail was divided out by this factor
};

// Survival probabilities q[k] = 1 - f_(k)(0) obtained by iterating the
// cancellation-safe survival map; q[0] = 1.
class ExtinctionTable {
 public:
  ExtinctionTable(const OffspringLaw& law, int horizon);

  int horizon() const noexcept { return static_cast<int>(q_.size()) - 1; }
  double q(int k) const;
  std::span<const double> values() const noexcept { return q_; }

 private:
  std::vector<double> q_;
};

}  // namespace cbrw

#endif
