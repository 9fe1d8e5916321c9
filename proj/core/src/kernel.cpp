// SPDX-License-Identifier: Apache-2.0

#include "kinlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>

#include "kinlab/errors.hpp"
#include "kinlab/fft.hpp"
#include "kinlab/quadrature.hpp"
#include "kinlab/spectral.hpp"

namespace kinlab {

void validate(const KernelSpec& spec) {
  if (spec.d != 1 && spec.d != 2)
    throw argument_error("KernelSpec: d must be 1 or 2");
  if (!(spec.sigma > 0.0) || spec.sigma > 4.0)
    throw argument_error("KernelSpec: sigma must lie in (0, 4]");
  if (spec.n_q < 8) throw argument_error("KernelSpec: n_q must be >= 8");
}

namespace {

double dot2(const Vec2& a, const Vec2& b, int d) {
  double s = a[0] * b[0];
  if (d > 1) s += a[1] * b[1];
  return s;
}

// ((1+u)^{1+s} - u^{1+s}) / (1+s) for u >= 0, stable for large u.
double power_interval(double u, double s) {
  if (u == 0.0) return 1.0 / (1.0 + s);
  if (u > 4.0)
    return std::pow(u, 1.0 + s) *
           std::expm1((1.0 + s) * std::log1p(1.0 / u)) / (1.0 + s);
  return (std::pow(1.0 + u, 1.0 + s) - std::pow(u, 1.0 + s)) / (1.0 + s);
}

// int_0^1 |theta - theta0|^s dtheta, exact.
double abs_power_integral(double theta0, double s) {
  if (theta0 <= 0.0) return power_interval(-theta0, s);
  if (theta0 >= 1.0) return power_interval(theta0 - 1.0, s);
  return (std::pow(theta0, 1.0 + s) + std::pow(1.0 - theta0, 1.0 + s)) /
         (1.0 + s);
}

// Signed integral of g over [c, b] by composite Gauss-Legendre on a
// geometric mesh graded toward c (ratio 4, 26 levels), so that an algebraic
// cusp of the integrand at c costs no accuracy.
template <typename G>
double graded_gl(double c, double b, int n_q, const G& g) {
  const double h = b - c;
  if (h == 0.0) return 0.0;
  const QuadratureRule& rule = gauss_legendre(static_cast<std::size_t>(n_q));
  auto gl = [&](double a0, double b0) {
    const double mid = 0.5 * (a0 + b0), half = 0.5 * (b0 - a0);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * g(mid + half * rule.nodes[i]);
    return s * half;
  };
  constexpr int kLevels = 26;
  double total = gl(c, c + h * std::pow(0.25, kLevels));  // innermost sliver
  for (int j = kLevels - 1; j >= 0; --j)
    total += gl(c + h * std::pow(0.25, j + 1), c + h * std::pow(0.25, j));
  return total;
}

double symbol_quadrature(const KernelSpec& spec, const Vec2& xi,
                         const Vec2& eta) {
  const double s = spec.sigma;
  const double a = dot2(xi, xi, spec.d);
  const double b = dot2(xi, eta, spec.d);
  const double theta_star = a > 0.0 ? std::clamp(b / a, 0.0, 1.0) : 0.0;
  auto g = [&](double theta) {
    double r2 = 0.0;
    for (int i = 0; i < spec.d; ++i) {
      const double w = theta * xi[static_cast<std::size_t>(i)] -
                       eta[static_cast<std::size_t>(i)];
      r2 += w * w;
    }
    return std::pow(r2, 0.5 * s);
  };
  return graded_gl(theta_star, 1.0, spec.n_q, g) -
         graded_gl(theta_star, 0.0, spec.n_q, g);
}

}  // namespace

double drift_symbol_quadrature(const KernelSpec& spec, const Vec2& xi,
                               const Vec2& eta) {
  validate(spec);
  return symbol_quadrature(spec, xi, eta);
}

double drift_symbol(const KernelSpec& spec, const Vec2& xi, const Vec2& eta) {
  validate(spec);
  const double s = spec.sigma;
  const double a = dot2(xi, xi, spec.d);
  const double b = dot2(xi, eta, spec.d);
  const double c = dot2(eta, eta, spec.d);
  if (a == 0.0) return std::pow(c, 0.5 * s);
  if (s == 2.0) return a / 3.0 - b + c;
  if (s == 4.0)
    // int_0^1 (a th^2 - 2b th + c)^2 dth
    return a * a / 5.0 - a * b + (2.0 * a * c + 4.0 * b * b) / 3.0 -
           2.0 * b * c + c * c;
  if (spec.d == 1)
    return std::pow(a, 0.5 * s) * abs_power_integral(b / a, s);
  return symbol_quadrature(spec, xi, eta);
}

double kernel_fourier(const KernelSpec& spec, double t, const Vec2& xi,
                      const Vec2& eta) {
  if (!(t > 0.0)) throw argument_error("kernel_fourier: t must be > 0");
  const Vec2 txi{t * xi[0], t * xi[1]};
  return std::exp(-t * drift_symbol(spec, txi, eta));
}

namespace {

struct KernelLattice {
  std::size_t ax_x = 0, ax_v = 0;
};

KernelLattice check_kernel_grid(const KernelSpec& spec, const PhaseGrid& grid,
                                const char* who) {
  validate(spec);
  if (spec.d != 1)
    throw argument_error(std::string(who) +
                         ": lattice evaluation requires d = 1");
  if (grid.rank() != 2 || grid.find(AxisLabel::x) < 0 ||
      grid.find(AxisLabel::v) < 0)
    throw argument_error(std::string(who) +
                         ": grid must have exactly the axes {x, v}");
  return KernelLattice{grid.require(AxisLabel::x), grid.require(AxisLabel::v)};
}

// Spectral samples of the kernel transform on the grid's frequency lattice,
// with the decay guard on the outermost signed-frequency ring.
Field kernel_hat(const KernelSpec& spec, double t, const PhaseGrid& grid,
                 const KernelLattice& lat) {
  Field ghat(grid, true);
  const std::size_t nx = grid.axis(lat.ax_x).size;
  const std::size_t nv = grid.axis(lat.ax_v).size;
  const std::size_t sx = grid.stride(lat.ax_x);
  const std::size_t sv = grid.stride(lat.ax_v);

  double worst = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double xi = grid.freq(lat.ax_x, ix);
    const bool x_edge = ix == nx / 2 || ix == nx / 2 - 1;
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const double eta = grid.freq(lat.ax_v, iv);
      const double val = kernel_fourier(spec, t, {xi, 0.0}, {eta, 0.0});
      ghat.values[ix * sx + iv * sv] = val;
      if (x_edge || iv == nv / 2 || iv == nv / 2 - 1)
        worst = std::max(worst, val);
    }
  }
  if (!(worst < 1e-12)) {
    char msg[256], hint[128];
    std::snprintf(msg, sizeof msg,
                  "kernel transform is %.3e at the lattice's extreme "
                  "frequencies (needs < 1e-12) for t=%.6g",
                  worst, t);
    std::snprintf(hint, sizeof hint,
                  "use Nx=%zu, Nv=%zu (same boxes) or shrink the boxes",
                  2 * nx, 2 * nv);
    throw resolution_error(msg, hint);
  }
  return ghat;
}

}  // namespace

Field kernel_realspace(const KernelSpec& spec, double t, const PhaseGrid& grid) {
  const KernelLattice lat = check_kernel_grid(spec, grid, "kernel_realspace");
  Field ghat = kernel_hat(spec, t, grid, lat);
  inverse_axes(ghat, {lat.ax_x, lat.ax_v});
  for (auto& z : ghat.values) z = std::complex<double>(z.real(), 0.0);
  return ghat;
}

ScanResult scaling_norm_scan(const KernelSpec& spec, const PhaseGrid& grid,
                             double alpha0, double beta0, double p0, double q0,
                             const std::vector<double>& times) {
  const KernelLattice lat = check_kernel_grid(spec, grid, "scaling_norm_scan");
  if (!(alpha0 >= 0.0) || !(beta0 >= 0.0))
    throw argument_error("scaling_norm_scan: derivative orders must be >= 0");
  if (times.size() < 4)
    throw argument_error("scaling_norm_scan: need at least 4 times");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (!(times[i] > 0.0) || (i > 0 && !(times[i] > times[i - 1])))
      throw argument_error("scaling_norm_scan: times must be positive and "
                           "increasing");
  const double ratio = times[1] / times[0];
  for (std::size_t i = 2; i < times.size(); ++i)
    if (std::abs(times[i] / times[i - 1] - ratio) > 1e-9 * ratio)
      throw argument_error("scaling_norm_scan: times must be geometric");

  ScanResult out;
  for (double t : times) {
    Field ghat = kernel_hat(spec, t, grid, lat);
    if (alpha0 > 0.0 || beta0 > 0.0) {
      const std::size_t nx = grid.axis(lat.ax_x).size;
      const std::size_t nv = grid.axis(lat.ax_v).size;
      for (std::size_t ix = 0; ix < nx; ++ix) {
        const double fx =
            alpha0 > 0.0 ? std::pow(std::abs(grid.freq(lat.ax_x, ix)), alpha0)
                         : 1.0;
        for (std::size_t iv = 0; iv < nv; ++iv) {
          const double fv =
              beta0 > 0.0 ? std::pow(std::abs(grid.freq(lat.ax_v, iv)), beta0)
                          : 1.0;
          ghat.values[ix * grid.stride(lat.ax_x) +
                      iv * grid.stride(lat.ax_v)] *= fx * fv;
        }
      }
    }
    inverse_axes(ghat, {lat.ax_x, lat.ax_v});
    MixedNormSpec norm_spec;
    norm_spec.p = p0;
    norm_spec.q = q0;
    out.rows.push_back(ScanRow{t, mixed_lebesgue_norm(ghat, norm_spec)});
  }

  // Least squares of log norm against log t.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(out.rows.size());
  for (const ScanRow& r : out.rows) {
    const double x = std::log(r.t), y = std::log(r.norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.slope = (sxy - sx * sy / n) / (sxx - sx * sx / n);
  out.intercept = (sy - out.slope * sx) / n;

  const double sigma = spec.sigma;
  const double inv_p = std::isinf(p0) ? 0.0 : 1.0 / p0;
  const double inv_q = std::isinf(q0) ? 0.0 : 1.0 / q0;
  const double kappa =
      (1.0 - inv_p) * (1.0 + 1.0 / sigma) + (1.0 - inv_q) / sigma;
  out.predicted = -kappa - alpha0 * (1.0 + 1.0 / sigma) - beta0 / sigma;
  return out;
}

BoundsReport appendix_bounds_check(const KernelSpec& spec,
                                   const PhaseGrid& freq_grid) {
  const KernelLattice lat =
      check_kernel_grid(spec, freq_grid, "appendix_bounds_check");
  const double s = spec.sigma;
  const double k1 = std::pow(2.0, s) * (1.0 + s);
  const double k2 = std::pow(2.0, s) * (1.0 + std::pow(2.0, s) * (1.0 + s));
  const double c_sigma = std::pow(2.0, -0.5 * s) / k2;

  BoundsReport rep;
  rep.slack_xi.value = rep.slack_eta.value = rep.slack_radial.value =
      std::numeric_limits<double>::infinity();
  rep.all_hold = true;

  const std::size_t nx = freq_grid.axis(lat.ax_x).size;
  const std::size_t nv = freq_grid.axis(lat.ax_v).size;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double xi = freq_grid.freq(lat.ax_x, ix);
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const double eta = freq_grid.freq(lat.ax_v, iv);
      const double psi = drift_symbol(spec, {xi, 0.0}, {eta, 0.0});
      const double rhs_xi = std::pow(std::abs(xi), s);
      const double rhs_eta = std::pow(std::abs(eta), s);
      const double rhs_rad = c_sigma * std::pow(xi * xi + eta * eta, 0.5 * s);
      const double sl_xi = k1 * psi - rhs_xi;
      const double sl_eta = k2 * psi - rhs_eta;
      const double sl_rad = psi - rhs_rad;
      if (sl_xi < rep.slack_xi.value) rep.slack_xi = BoundSlack{sl_xi, xi, eta};
      if (sl_eta < rep.slack_eta.value)
        rep.slack_eta = BoundSlack{sl_eta, xi, eta};
      if (sl_rad < rep.slack_radial.value)
        rep.slack_radial = BoundSlack{sl_rad, xi, eta};
      if (sl_xi < -1e-9 * (1.0 + rhs_xi) || sl_eta < -1e-9 * (1.0 + rhs_eta) ||
          sl_rad < -1e-9 * (1.0 + rhs_rad))
        rep.all_hold = false;
    }
  }
  return rep;
}

namespace {

double moment_on_grid(const KernelSpec& spec, double t, const PhaseGrid& grid,
                      double a, int mx, int mv) {
  const KernelLattice lat = check_kernel_grid(spec, grid, "weighted_moment_check");
  Field ghat = kernel_hat(spec, t, grid, lat);
  if (mx > 0 || mv > 0) {
    const std::size_t nx = grid.axis(lat.ax_x).size;
    const std::size_t nv = grid.axis(lat.ax_v).size;
    const std::complex<double> unit(0.0, 1.0);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      // pow(0 + 0i, 0.0) is NaN, so exponent 0 must short-circuit to 1.
      const std::complex<double> fx =
          mx > 0 ? std::pow(unit * grid.freq(lat.ax_x, ix),
                            static_cast<double>(mx))
                 : std::complex<double>(1.0, 0.0);
      for (std::size_t iv = 0; iv < nv; ++iv) {
        const std::complex<double> fv =
            mv > 0 ? std::pow(unit * grid.freq(lat.ax_v, iv),
                              static_cast<double>(mv))
                   : std::complex<double>(1.0, 0.0);
        ghat.values[ix * grid.stride(lat.ax_x) + iv * grid.stride(lat.ax_v)] *=
            fx * fv;
      }
    }
  }
  inverse_axes(ghat, {lat.ax_x, lat.ax_v});

  const std::size_t nx = grid.axis(lat.ax_x).size;
  const std::size_t nv = grid.axis(lat.ax_v).size;
  const double cell = grid.cell_volume();
  double sum = 0.0;
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double x = grid.coord(lat.ax_x, ix);
    for (std::size_t iv = 0; iv < nv; ++iv) {
      const double v = grid.coord(lat.ax_v, iv);
      const double w = std::pow(1.0 + x * x + v * v, 0.5 * a);
      sum += w *
             std::abs(ghat.values[ix * grid.stride(lat.ax_x) +
                                  iv * grid.stride(lat.ax_v)]
                          .real()) *
             cell;
    }
  }
  return sum;
}

}  // namespace

MomentReport weighted_moment_check(const KernelSpec& spec, double t,
                                   const PhaseGrid& grid, double a, int mx,
                                   int mv) {
  validate(spec);
  if (!(a >= 0.0) || !(a < spec.sigma))
    throw argument_error("weighted_moment_check: requires 0 <= a < sigma");
  if (mx < 0 || mv < 0 || mx + mv > 2)
    throw argument_error(
        "weighted_moment_check: derivative multi-index must satisfy "
        "mx, mv >= 0 and mx + mv <= 2");

  std::vector<Axis> refined_axes;
  for (std::size_t i = 0; i < grid.rank(); ++i) {
    Axis ax = grid.axis(i);
    ax.size *= 4;     // halve the spacing...
    ax.extent *= 2.0;  // ...while doubling the window
    refined_axes.push_back(ax);
  }
  const PhaseGrid refined(refined_axes);

  MomentReport rep;
  rep.value = moment_on_grid(spec, t, grid, a, mx, mv);
  rep.refined_value = moment_on_grid(spec, t, refined, a, mx, mv);
  rep.rel_change = std::abs(rep.refined_value - rep.value) /
                   std::abs(rep.refined_value);
  rep.stable = rep.rel_change < 0.05;
  return rep;
}

}  // namespace kinlab
