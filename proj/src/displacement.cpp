// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/displacement.hpp"

#include <cmath>

#include "cbrw/errors.hpp"
#include "cbrw/gauss.hpp"

namespace cbrw {

namespace {
constexpr double kSqrt3 = 1.7320508075688772935;
}

DisplacementLaw DisplacementLaw::normal() { return {Kind::normal, "normal"}; }
DisplacementLaw DisplacementLaw::rademacher() { return {Kind::rademacher, "rademacher"}; }
DisplacementLaw DisplacementLaw::uniform() { return {Kind::uniform, "uniform"}; }

DisplacementLaw DisplacementLaw::parse(std::string_view spec) {
  if (spec == "normal") return normal();
  if (spec == "rademacher") return rademacher();
  if (spec == "uniform") return uniform();
  throw Error(ErrorCode::parse,
              "unknown displacement law: '" + std::string(spec) + "'");
}

double DisplacementLaw::sample(Philox& rng) const {
  switch (kind_) {
    case Kind::normal:
      return rng.normal();
    case Kind::rademacher:
      return rng.uniform01() < 0.5 ? -1.0 : 1.0;
    case Kind::uniform:
      return (2.0 * rng.uniform01() - 1.0) * kSqrt3;
  }
  return 0.0;
}

double DisplacementLaw::nstep_cdf(int n, double x) const {
  if (kind_ != Kind::normal) {
    throw Error(ErrorCode::unavailable,
                "displacement law '" + name_ + "' has no exact n-step CDF");
  }
  if (n < 1) throw Error(ErrorCode::invalid_argument, "nstep_cdf: n >= 1");
  return normal_cdf(x / std::sqrt(static_cast<double>(n)));
}

}  // namespace cbrw
