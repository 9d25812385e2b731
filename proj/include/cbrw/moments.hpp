// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#ifndef CBRW_MOMENTS_HPP
#define CBRW_MOMENTS_HPP

#include <atomic>
#include <vector>

namespace cbrw {

// CDF of a centered normal with variance 1-t, i.e. Phi(x / sqrt(1-t)).
// Requires t < 1; callers handle the t -> 1 boundary analytically.
double phi_scaled(double x, double t);

// First limit moment at level t: (sigma^2/2) * phi_scaled(x, t).
double mu1_t(double x, double t, double sigma2);

struct QuadratureSpec {
  int gh_nodes = 64;   // Gauss-Hermite nodes for the spatial expectation (>= 32)
  int t_panels = 128;  // uniform panels on [0,1]; composite Simpson in s
};

struct GridSpec {
  double sigma2 = 2.0;
  int r_max = 6;
  double x_min = -6.0;
  double x_max = 6.0;
  double x_step = 0.05;
  QuadratureSpec quad;
  int workers = 0;
};

// Tabulated solution of the bilinear moment recursion
//   mu_i^t(x) = sum_{j=1}^{i-1} C(i,j) int_t^1 E[mu_j^s mu_{i-j}^s (x - B_s)] ds
// built level by level (dynamic programming). The inner expectation uses
// Gauss-Hermite over B_s ~ N(0,s); lower levels are read off the grid by
// monotone (Steffen) cubic interpolation in x and linear interpolation in t;
// level-1 factors are always evaluated in closed form. The x = +inf column
// solves the one-dimensional total-mass recursion exactly in polynomial
// coefficients of u = 1-t, so the closed-form anchors carry no spatial
// quadrature error.
class MomentGrid {
 public:
  double sigma2() const noexcept { return sigma2_; }
  int r_max() const noexcept { return static_cast<int>(levels_.size()); }
  const std::vector<double>& t_nodes() const noexcept { return t_nodes_; }
  const std::vector<double>& x_nodes() const noexcept { return x_nodes_; }

  // mu_i^t(x); x may be +-infinity, t in [0,1]. Off-node queries interpolate;
  // x outside the hull is clamped and counted.
  double value(int i, double t, double x) const;
  // Raw node access (t_idx indexes t_nodes, x_idx indexes x_nodes).
  double value_at(int i, std::size_t t_idx, std::size_t x_idx) const;
  // Exact total-mass column, any t in [0,1].
  double inf_value(int i, double t) const;
  // mu_r(x) = mu_r^0(x).
  double mu(int i, double x) const { return value(i, 0.0, x); }

  // max over levels and t-nodes of |mu_i^t(inf) - (sigma^2/2)^i i! (1-t)^{i-1}|.
  double max_anchor_error() const;
  long clamp_count() const noexcept { return clamps_.load(); }

 private:
  friend MomentGrid build_moment_grid(const GridSpec&);

  struct Level {
    std::vector<std::vector<double>> val;    // [t_idx][x_idx]
    std::vector<std::vector<double>> slope;  // Steffen slopes per row
    std::vector<double> poly;                // +inf column, coefficients in u = 1-t
  };

  double eval_row(int i, std::size_t t_idx, double x) const;

  double sigma2_ = 0.0;
  std::vector<double> t_nodes_;
  std::vector<double> x_nodes_;
  std::vector<Level> levels_;
  mutable std::atomic<long> clamps_{0};
};

MomentGrid build_moment_grid(const GridSpec& spec);

struct CarlemanReport {
  // growth[r-1] = mu_{2r}(inf)^{1/(2r)} / (2r), r = 1..r_max/2.
  std::vector<double> growth;
  double max_excess = 0.0;  // max over cells of mu_{2r}(x) - mu_{2r}(inf)
};

// Verifies mu_{2r}(x) <= mu_{2r}(inf) + 1e-6 on every grid cell and reports
// the even-moment growth sequence. Requires even r_max >= 4; throws
// ErrorCode::integrity naming the offending (r, x) on violation.
CarlemanReport carleman_diagnostic(const MomentGrid& grid);

}  // namespace cbrw

#endif
