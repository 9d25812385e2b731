// SPDX-FileCopyrightText: 2026 cbrw developers
// SPDX-License-Identifier: Apache-2.0

#include "cbrw/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cbrw/errors.hpp"
#include "cbrw/gauss.hpp"
#include "cbrw/parallel.hpp"

namespace cbrw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double binomial(int n, int k) {
  double acc = 1.0;
  for (int i = 1; i <= k; ++i) acc *= static_cast<double>(n - k + i) / i;
  return acc;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// int_0^u p(v) dv as a polynomial in u.
std::vector<double> poly_integrate(const std::vector<double>& p) {
  std::vector<double> out(p.size() + 1, 0.0);
  for (std::size_t d = 0; d < p.size(); ++d) out[d + 1] = p[d] / static_cast<double>(d + 1);
  return out;
}

double poly_eval(const std::vector<double>& p, double u) {
  double acc = 0.0;
  for (std::size_t d = p.size(); d-- > 0;) acc = acc * u + p[d];
  return acc;
}

// Steffen (1990) monotonicity-preserving slopes on a uniform grid. All
// operations are positively homogeneous, so scaling the data scales the
// interpolant exactly; the sigma^2-homogeneity of the grid relies on this.
std::vector<double> steffen_slopes(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  auto secant = [&](std::size_t i) { return (y[i + 1] - y[i]) / h; };
  d[0] = secant(0);
  d[n - 1] = secant(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s0 = secant(i - 1);
    const double s1 = secant(i);
    if (s0 * s1 <= 0.0) {
      d[i] = 0.0;
    } else {
      const double p = 0.5 * (s0 + s1);
      const double lim = 2.0 * std::min(std::abs(s0), std::abs(s1));
      d[i] = (s0 > 0.0 ? 1.0 : -1.0) * std::min(std::abs(p), lim);
    }
  }
  return d;
}

double hermite_eval(double y0, double y1, double d0, double d1, double h, double u) {
  // u in [0,1] across the cell.
  const double u2 = u * u;
  const double u3 = u2 * u;
  return y0 * (2.0 * u3 - 3.0 * u2 + 1.0) + y1 * (3.0 * u2 - 2.0 * u3) +
         h * (d0 * (u3 - 2.0 * u2 + u) + d1 * (u3 - u2));
}

}  // namespace

double phi_scaled(double x, double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw Error(ErrorCode::domain, "phi_scaled: t must lie in [0,1)");
  }
  if (x == kInf) return 1.0;
  if (x == -kInf) return 0.0;
  return normal_cdf(x / std::sqrt(1.0 - t));
}

double mu1_t(double x, double t, double sigma2) {
  return 0.5 * sigma2 * phi_scaled(x, t);
}

double MomentGrid::eval_row(int i, std::size_t t_idx, double x) const {
  const Level& level = levels_[static_cast<std::size_t>(i) - 1];
  const std::vector<double>& row = level.val[t_idx];
  const std::vector<double>& slope = level.slope[t_idx];
  const double x0 = x_nodes_.front();
  const double h = x_nodes_[1] - x_nodes_[0];
  if (x <= x0) {
    if (x < x0) clamps_.fetch_add(1, std::memory_order_relaxed);
    return row.front();
  }
  if (x >= x_nodes_.back()) {
    if (x > x_nodes_.back()) clamps_.fetch_add(1, std::memory_order_relaxed);
    return row.back();
  }
  const double pos = (x - x0) / h;
  auto cell = static_cast<std::size_t>(pos);
  if (cell + 1 >= row.size()) cell = row.size() - 2;
  const double u = pos - static_cast<double>(cell);
  return hermite_eval(row[cell], row[cell + 1], slope[cell], slope[cell + 1], h, u);
}

double MomentGrid::value(int i, double t, double x) const {
  if (i < 1 || i > r_max()) {
    throw Error(ErrorCode::invalid_argument, "moment grid: level out of range");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::domain, "moment grid: t must lie in [0,1]");
  }
  if (x == kInf) return inf_value(i, t);
  if (x == -kInf) return 0.0;
  const double h = t_nodes_[1] - t_nodes_[0];
  const double pos = t / h;
  auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= t_nodes_.size()) {
    return eval_row(i, t_nodes_.size() - 1, x);
  }
  const double w = pos - static_cast<double>(k);
  const double lo = eval_row(i, k, x);
  const double hi = eval_row(i, k + 1, x);
  return (1.0 - w) * lo + w * hi;
}

double MomentGrid::value_at(int i, std::size_t t_idx, std::size_t x_idx) const {
  if (i < 1 || i > r_max() || t_idx >= t_nodes_.size() || x_idx >= x_nodes_.size()) {
    throw Error(ErrorCode::invalid_argument, "moment grid: node index out of range");
  }
  return levels_[static_cast<std::size_t>(i) - 1].val[t_idx][x_idx];
}

double MomentGrid::inf_value(int i, double t) const {
  if (i < 1 || i > r_max()) {
    throw Error(ErrorCode::invalid_argument, "moment grid: level out of range");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::domain, "moment grid: t must lie in [0,1]");
  }
  return poly_eval(levels_[static_cast<std::size_t>(i) - 1].poly, 1.0 - t);
}

double MomentGrid::max_anchor_error() const {
  double worst = 0.0;
  for (int i = 1; i <= r_max(); ++i) {
    double factorial = 1.0;
    for (int f = 2; f <= i; ++f) factorial *= f;
    const double amp = factorial * std::pow(0.5 * sigma2_, i);
    for (const double t : t_nodes_) {
      const double closed = amp * std::pow(1.0 - t, i - 1);
      worst = std::max(worst, std::abs(inf_value(i, t) - closed));
    }
  }
  return worst;
}

MomentGrid build_moment_grid(const GridSpec& spec) {
  if (spec.r_max < 1) throw Error(ErrorCode::invalid_argument, "grid: r_max >= 1");
  if (!(spec.sigma2 > 0.0)) throw Error(ErrorCode::invalid_argument, "grid: sigma2 > 0");
  if (spec.quad.gh_nodes < 32) {
    throw Error(ErrorCode::invalid_argument, "grid: Gauss-Hermite node count must be >= 32");
  }
  if (spec.quad.t_panels < 8 || spec.quad.t_panels > 65536) {
    throw Error(ErrorCode::invalid_argument, "grid: t_panels must lie in [8, 65536]");
  }
  if (!(spec.x_step > 0.0) || !(spec.x_max > spec.x_min)) {
    throw Error(ErrorCode::invalid_argument, "grid: bad x range");
  }

  MomentGrid grid;
  grid.sigma2_ = spec.sigma2;
  const int panels = spec.quad.t_panels;
  grid.t_nodes_.resize(static_cast<std::size_t>(panels) + 1);
  for (int k = 0; k <= panels; ++k) {
    grid.t_nodes_[static_cast<std::size_t>(k)] = static_cast<double>(k) / panels;
  }
  const auto x_count =
      static_cast<std::size_t>(std::llround((spec.x_max - spec.x_min) / spec.x_step)) + 1;
  if (x_count < 4) throw Error(ErrorCode::invalid_argument, "grid: too few x nodes");
  grid.x_nodes_.resize(x_count);
  for (std::size_t i = 0; i < x_count; ++i) {
    grid.x_nodes_[i] = spec.x_min + spec.x_step * static_cast<double>(i);
  }

  const std::size_t nt = grid.t_nodes_.size();
  const std::size_t nx = grid.x_nodes_.size();
  const double half_sigma2 = 0.5 * spec.sigma2;
  const double xh = spec.x_step;

  grid.levels_.resize(static_cast<std::size_t>(spec.r_max));

  // Level 1: closed form everywhere.
  {
    MomentGrid::Level& lvl = grid.levels_[0];
    lvl.val.assign(nt, std::vector<double>(nx, 0.0));
    lvl.slope.assign(nt, {});
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const double t = grid.t_nodes_[ti];
      for (std::size_t xi = 0; xi < nx; ++xi) {
        const double x = grid.x_nodes_[xi];
        if (t >= 1.0) {
          lvl.val[ti][xi] = half_sigma2 * (x > 0.0 ? 1.0 : (x == 0.0 ? 0.5 : 0.0));
        } else {
          lvl.val[ti][xi] = mu1_t(x, t, spec.sigma2);
        }
      }
      lvl.slope[ti] = steffen_slopes(lvl.val[ti], xh);
    }
    lvl.poly = {half_sigma2};
  }

  if (spec.r_max == 1) return grid;

  const GaussHermite rule = gauss_hermite(spec.quad.gh_nodes);
  std::vector<double> gh_z(rule.nodes.size());
  std::vector<double> gh_w(rule.nodes.size());
  for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
    gh_z[g] = 1.4142135623730951 * rule.nodes[g];
    gh_w[g] = rule.weights[g] * 0.5641895835477563;
  }

  // Simpson point set: even indices are t-nodes, odd indices are midpoints.
  const std::size_t ns = 2 * static_cast<std::size_t>(panels) + 1;
  std::vector<double> s_points(ns);
  for (std::size_t p = 0; p < ns; ++p) {
    s_points[p] = 0.5 * static_cast<double>(p) / panels;
  }
  s_points.back() = 1.0;

  // mu_m^s(y) for m >= 2 read from the tables; level 1 in closed form.
  auto level_factor = [&](int m, double s, std::size_t t_cell, double t_frac,
                          double y) -> double {
    if (m == 1) {
      if (s >= 1.0) return half_sigma2 * (y > 0.0 ? 1.0 : (y == 0.0 ? 0.5 : 0.0));
      return half_sigma2 * normal_cdf(y / std::sqrt(1.0 - s));
    }
    const double lo = grid.eval_row(m, t_cell, y);
    if (t_frac == 0.0) return lo;
    const double hi = grid.eval_row(m, t_cell + 1, y);
    return (1.0 - t_frac) * lo + t_frac * hi;
  };

  for (int i = 2; i <= spec.r_max; ++i) {
    MomentGrid::Level& lvl = grid.levels_[static_cast<std::size_t>(i) - 1];

    // Exact total-mass recursion in polynomial coefficients of u = 1-t.
    std::vector<double> poly_acc;
    for (int j = 1; j <= i - 1; ++j) {
      const std::vector<double> prod =
          poly_mul(grid.levels_[static_cast<std::size_t>(j) - 1].poly,
                   grid.levels_[static_cast<std::size_t>(i - j) - 1].poly);
      std::vector<double> integ = poly_integrate(prod);
      const double coeff = binomial(i, j);
      if (poly_acc.size() < integ.size()) poly_acc.resize(integ.size(), 0.0);
      for (std::size_t d = 0; d < integ.size(); ++d) poly_acc[d] += coeff * integ[d];
    }
    lvl.poly = std::move(poly_acc);

    // Integrand H_i(s, x) on the Simpson point set.
    std::vector<std::vector<double>> integrand(ns, std::vector<double>(nx, 0.0));
    parallel_for(0, static_cast<long>(ns), spec.workers, [&](long sp) {
      const auto p = static_cast<std::size_t>(sp);
      const double s = s_points[p];
      std::vector<double>& row = integrand[p];
      if (s >= 1.0) {
        // Limit integrand: the level-1 factor becomes a step at 0, every
        // level >= 2 vanishes; only i = 2 survives.
        if (i == 2) {
          const double amp = 2.0 * half_sigma2 * half_sigma2;
          for (std::size_t xi = 0; xi < nx; ++xi) {
            row[xi] = amp * normal_cdf(grid.x_nodes_[xi]);
          }
        }
        return;
      }
      const double sd = std::sqrt(s);
      std::size_t t_cell = p / 2;
      double t_frac = (p % 2 == 0) ? 0.0 : 0.5;
      if (t_cell + 1 >= nt) {
        t_cell = nt - 2;
        t_frac = 1.0;
      }
      for (std::size_t xi = 0; xi < nx; ++xi) {
        const double x = grid.x_nodes_[xi];
        double acc = 0.0;
        if (s == 0.0) {
          for (int j = 1; j <= i - 1; ++j) {
            acc += binomial(i, j) * level_factor(j, s, t_cell, t_frac, x) *
                   level_factor(i - j, s, t_cell, t_frac, x);
          }
        } else {
          for (std::size_t g = 0; g < gh_z.size(); ++g) {
            const double y = x - sd * gh_z[g];
            double pair_sum = 0.0;
            for (int j = 1; j <= i - 1; ++j) {
              pair_sum += binomial(i, j) * level_factor(j, s, t_cell, t_frac, y) *
                          level_factor(i - j, s, t_cell, t_frac, y);
            }
            acc += gh_w[g] * pair_sum;
          }
        }
        row[xi] = acc;
      }
    });

    // Composite Simpson per panel, accumulated from the right so that the
    // row at t_k holds the integral over [t_k, 1].
    lvl.val.assign(nt, std::vector<double>(nx, 0.0));
    lvl.slope.assign(nt, {});
    const double panel_h = 1.0 / panels;
    for (std::size_t k = nt - 1; k-- > 0;) {
      const std::vector<double>& left = integrand[2 * k];
      const std::vector<double>& mid = integrand[2 * k + 1];
      const std::vector<double>& right = integrand[2 * k + 2];
      for (std::size_t xi = 0; xi < nx; ++xi) {
        lvl.val[k][xi] = lvl.val[k + 1][xi] +
                         panel_h / 6.0 * (left[xi] + 4.0 * mid[xi] + right[xi]);
      }
    }

    // Monotone cleanup: absorb roundoff dips, reject real violations.
    for (std::size_t ti = 0; ti < nt; ++ti) {
      const double scale = std::max(1.0, poly_eval(lvl.poly, 1.0 - grid.t_nodes_[ti]));
      for (std::size_t xi = 1; xi < nx; ++xi) {
        const double prev = lvl.val[ti][xi - 1];
        if (lvl.val[ti][xi] < prev) {
          if (prev - lvl.val[ti][xi] > 1e-9 * scale) {
            throw Error(ErrorCode::integrity,
                        "moment grid: level " + std::to_string(i) +
                            " not monotone at t=" + std::to_string(grid.t_nodes_[ti]) +
                            ", x=" + std::to_string(grid.x_nodes_[xi]));
          }
          lvl.val[ti][xi] = prev;
        }
      }
      lvl.slope[ti] = steffen_slopes(lvl.val[ti], xh);
    }
  }
  return grid;
}

CarlemanReport carleman_diagnostic(const MomentGrid& grid) {
  const int r_max = grid.r_max();
  if (r_max < 4 || r_max % 2 != 0) {
    throw Error(ErrorCode::invalid_argument,
                "carleman_diagnostic: grid must be built with even r_max >= 4");
  }
  CarlemanReport report;
  for (int r = 1; 2 * r <= r_max; ++r) {
    const double inf_moment = grid.inf_value(2 * r, 0.0);
    report.growth.push_back(std::pow(inf_moment, 1.0 / (2.0 * r)) / (2.0 * r));
  }
  for (int r = 1; 2 * r <= r_max; ++r) {
    for (std::size_t ti = 0; ti < grid.t_nodes().size(); ++ti) {
      const double bound = grid.inf_value(2 * r, grid.t_nodes()[ti]);
      for (std::size_t xi = 0; xi < grid.x_nodes().size(); ++xi) {
        const double excess = grid.value_at(2 * r, ti, xi) - bound;
        report.max_excess = std::max(report.max_excess, excess);
        if (excess > 1e-6) {
          throw Error(ErrorCode::integrity,
                      "carleman: mu_" + std::to_string(2 * r) + "(" +
                          std::to_string(grid.x_nodes()[xi]) +
                          ") exceeds the total-mass moment by " +
                          std::to_string(excess));
        }
      }
    }
  }
  return report;
}

}  // namespace cbrw
