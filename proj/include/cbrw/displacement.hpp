// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_DISPLACEMENT_HPP
#define CBRW_DISPLACEMENT_HPP

#include <string>
#include <string_view>

#include "cbrw/rng.hpp"

namespace cbrw {

// Step distribution of the walk: mean 0, variance 1. The normal preset also
// carries the exact CDF of an n-step sum; the other presets rely on the
// Monte Carlo fallbacks of their callers.
class DisplacementLaw {
 public:
  enum class Kind { normal, rademacher, uniform };

  static DisplacementLaw normal();
  static DisplacementLaw rademacher();   // +-1 with probability 1/2
  static DisplacementLaw uniform();      // uniform on [-sqrt(3), sqrt(3)]
  static DisplacementLaw parse(std::string_view spec);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double sample(Philox& rng) const;

  bool has_nstep_cdf() const noexcept { return kind_ == Kind::normal; }
  // P(S_n <= x) for the sum of n independent steps; exact for the normal
  // preset, throws ErrorCode::unavailable otherwise.
  double nstep_cdf(int n, double x) const;

 private:
  DisplacementLaw(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}
  Kind kind_;
  std::string name_;
};

}  // namespace cbrw

#endif
