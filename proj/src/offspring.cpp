// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/offspring.hpp"

#include <cmath>
#include <charconv>
#include <limits>

#include "cbrw/errors.hpp"
#include "cbrw/stats.hpp"

namespace cbrw {

namespace {

constexpr double kTailMassCut = 1e-15;
constexpr int kCertifiedOrder = 12;  // highest moment order used downstream

double parse_number(std::string_view token, std::string_view what) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::parse,
                std::string("invalid ") + std::string(what) + " token: '" +
                    std::string(token) + "'");
  }
  return value;
}

}  // namespace

double OffspringLaw::analytic_pmf(int j) const {
  switch (family_) {
    case Family::geometric:
      return param_ * std::pow(1.0 - param_, j);
    case Family::poisson:
      return std::exp(-param_ + j * std::log(param_) - std::lgamma(j + 1.0));
    case Family::finite:
      return 0.0;
  }
  return 0.0;
}

double OffspringLaw::analytic_tail_ratio(int j) const {
  // Upper bound on p_{i+1}/p_i valid for all i >= j.
  switch (family_) {
    case Family::geometric:
      return 1.0 - param_;
    case Family::poisson:
      return param_ / (j + 1.0);
    case Family::finite:
      return 0.0;
  }
  return 0.0;
}

void OffspringLaw::finalize_and_validate() {
  if (pmf_.empty()) throw Error(ErrorCode::parse, "offspring pmf is empty");
  for (const double p : pmf_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::parse, "offspring pmf entries must be finite and >= 0");
    }
  }
  const double total = stable_sum(pmf_);
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::parse, "offspring pmf must sum to 1 within 1e-9, got " +
                                      std::to_string(total));
  }
  renorm_ = total;
  for (double& p : pmf_) p /= total;

  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < pmf_.size(); ++j) {
    m1 += static_cast<double>(j) * pmf_[j];
    m2 += static_cast<double>(j) * static_cast<double>(j) * pmf_[j];
  }
  mean_ = m1;
  sigma2_ = m2 - m1 * m1;
  if (std::abs(mean_ - 1.0) > 1e-10) {
    throw Error(ErrorCode::parse, "offspring law '" + name_ +
                                      "' is not critical: mean = " +
                                      std::to_string(mean_));
  }
  if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_)) {
    throw Error(ErrorCode::parse, "offspring law '" + name_ +
                                      "' needs variance in (0, inf)");
  }
}

OffspringLaw OffspringLaw::geometric(double success) {
  if (!(success > 0.0 && success < 1.0)) {
    throw Error(ErrorCode::parse, "geometric parameter must be in (0,1)");
  }
  OffspringLaw law;
  law.family_ = Family::geometric;
  law.param_ = success;
  law.name_ = "geometric:" + std::to_string(success);

  // Extend the cutoff until both the tail mass and a geometric-ratio bound
  // on the order-12 factorial-moment tail drop below kTailMassCut (relative).
  const double ratio = 1.0 - success;
  int cutoff = kCertifiedOrder + 2;
  double partial_m12 = 0.0;
  for (;; ++cutoff) {
    const double p_next = law.analytic_pmf(cutoff + 1);
    const double mass_tail = p_next / (1.0 - ratio);
    double falling = 1.0;
    for (int i = 0; i < kCertifiedOrder; ++i) falling *= cutoff + 1 - i;
    const double term_ratio = ratio * (cutoff + 2.0) / (cutoff + 2.0 - kCertifiedOrder);
    double pc = law.analytic_pmf(cutoff);
    double fc = 1.0;
    for (int i = 0; i < kCertifiedOrder; ++i) fc *= cutoff - i;
    partial_m12 += pc * fc;
    if (term_ratio < 1.0) {
      const double m12_tail = p_next * falling / (1.0 - term_ratio);
      if (mass_tail < kTailMassCut &&
          m12_tail < kTailMassCut * std::max(partial_m12, 1.0)) {
        break;
      }
    }
    if (cutoff > 4096) throw Error(ErrorCode::truncation, "geometric truncation failed");
  }
  law.pmf_.resize(static_cast<std::size_t>(cutoff) + 1);
  for (int j = 0; j <= cutoff; ++j) law.pmf_[static_cast<std::size_t>(j)] = law.analytic_pmf(j);
  law.finalize_and_validate();
  return law;
}

OffspringLaw OffspringLaw::poisson(double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::parse, "poisson parameter must be > 0");
  OffspringLaw law;
  law.family_ = Family::poisson;
  law.param_ = lambda;
  law.name_ = "poisson:" + std::to_string(lambda);

  int cutoff = kCertifiedOrder + 2;
  for (;; ++cutoff) {
    const double ratio = law.analytic_tail_ratio(cutoff + 1);
    const double p_next = law.analytic_pmf(cutoff + 1);
    if (ratio < 0.5) {
      const double mass_tail = p_next / (1.0 - ratio);
      double falling = 1.0;
      for (int i = 0; i < kCertifiedOrder; ++i) falling *= cutoff + 1 - i;
      const double term_ratio = ratio * (cutoff + 2.0) / (cutoff + 2.0 - kCertifiedOrder);
      const double m12_tail = p_next * falling / (1.0 - term_ratio);
      if (mass_tail < kTailMassCut && m12_tail < kTailMassCut) break;
    }
    if (cutoff > 4096) throw Error(ErrorCode::truncation, "poisson truncation failed");
  }
  law.pmf_.resize(static_cast<std::size_t>(cutoff) + 1);
  for (int j = 0; j <= cutoff; ++j) law.pmf_[static_cast<std::size_t>(j)] = law.analytic_pmf(j);
  law.finalize_and_validate();
  return law;
}

OffspringLaw OffspringLaw::binary() {
  OffspringLaw law;
  law.name_ = "binary";
  law.pmf_ = {0.5, 0.0, 0.5};
  law.finalize_and_validate();
  return law;
}

OffspringLaw OffspringLaw::from_pmf(std::vector<double> pmf, std::string name) {
  OffspringLaw law;
  law.name_ = std::move(name);
  law.pmf_ = std::move(pmf);
  law.finalize_and_validate();
  return law;
}

OffspringLaw OffspringLaw::parse(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view tail =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  if (head == "binary") {
    if (!tail.empty()) throw Error(ErrorCode::parse, "binary law takes no parameter");
    return binary();
  }
  if (head == "geometric") {
    return geometric(parse_number(tail, "geometric parameter"));
  }
  if (head == "poisson") {
    return poisson(parse_number(tail, "poisson parameter"));
  }
  if (head == "pmf") {
    std::vector<double> pmf;
    std::string_view rest = tail;
    while (!rest.empty()) {
      const std::size_t comma = rest.find(',');
      pmf.push_back(parse_number(rest.substr(0, comma), "pmf entry"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (pmf.empty()) throw Error(ErrorCode::parse, "pmf law needs at least one entry");
    return from_pmf(std::move(pmf));
  }
  throw Error(ErrorCode::parse,
              "unknown offspring law: '" + std::string(head) + "'");
}

double OffspringLaw::pgf(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::domain, "pgf: s must lie in [0,1]");
  }
  double acc = 0.0;
  for (std::size_t j = pmf_.size(); j-- > 0;) acc = acc * s + pmf_[j];
  return acc;
}

double OffspringLaw::factorial_moment(int r) const {
  if (r < 1) throw Error(ErrorCode::invalid_argument, "factorial_moment: r >= 1");
  double acc = 0.0;
  for (std::size_t j = pmf_.size(); j-- > 0;) {
    double falling = 1.0;
    for (int i = 0; i < r; ++i) falling *= static_cast<double>(j) - i;
    if (falling <= 0.0) break;  // j < r contributes nothing
    acc += pmf_[j] * falling;
  }
  if (family_ != Family::finite) {
    // Certify the discarded tail: sum_{j>K} p_j (j)_r with term ratio
    // bounded by tail_ratio * (j+1)/(j+1-r).
    const int cutoff = max_support();
    const double p_next = analytic_pmf(cutoff + 1) / renorm_;
    double falling = 1.0;
    for (int i = 0; i < r; ++i) falling *= cutoff + 1.0 - i;
    const double ratio_bound = analytic_tail_ratio(cutoff + 1) *
                               (cutoff + 2.0) / (cutoff + 2.0 - r);
    double bound = std::numeric_limits<double>::infinity();
    if (r <= cutoff && ratio_bound < 1.0) bound = p_next * falling / (1.0 - ratio_bound);
    if (!(bound <= 1e-9 * std::max(acc, 1.0))) {
      throw Error(ErrorCode::truncation,
                  "factorial_moment(r=" + std::to_string(r) +
                      "): truncated tail not certifiable; achieved bound " +
                      std::to_string(bound));
    }
  }
  return acc;
}

double OffspringLaw::survival_map(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::domain, "survival_map: q must lie in [0,1]");
  }
  if (q == 0.0) return 0.0;
  const double log_base = std::log1p(-q);  // log(1-q), -inf at q = 1
  double acc = 0.0;
  for (std::size_t j = pmf_.size(); j-- > 1;) {
    if (pmf_[j] == 0.0) continue;
    acc += pmf_[j] * (-std::expm1(static_cast<double>(j) * log_base));
  }
  return acc;
}

ExtinctionTable::ExtinctionTable(const OffspringLaw& law, int horizon) {
  if (horizon < 0) throw Error(ErrorCode::invalid_argument, "extinction: n >= 0");
  if (!(law.pmf()[0] > 0.0)) {
    throw Error(ErrorCode::domain,
                "extinction: law has p_0 = 0, the process never dies out and "
                "conditioning on survival is trivial");
  }
  q_.resize(static_cast<std::size_t>(horizon) + 1);
  q_[0] = 1.0;
  for (int k = 0; k < horizon; ++k) {
    q_[static_cast<std::size_t>(k) + 1] = law.survival_map(q_[static_cast<std::size_t>(k)]);
  }
}

double ExtinctionTable::q(int k) const {
  if (k < 0 || k > horizon()) {
    throw Error(ErrorCode::domain, "extinction: index outside table");
  }
  return q_[static_cast<std::size_t>(k)];
}

}  // namespace cbrw
