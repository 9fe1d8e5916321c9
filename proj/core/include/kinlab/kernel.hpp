// SPDX-License-Identifier: Apache-2.0
//
// Fundamental solution of the fractional Kolmogorov equation
//   d_t G + v . grad_x G = -(-Laplace_v)^{sigma/2} G,   G(0) = delta,
// evaluated through its Fourier representation
//   Ghat(t, xi, eta) = exp(-t psi(t xi, eta)),
//   psi(xi, eta) = int_0^1 |theta xi - eta|^sigma dtheta,
// together with lattice verifications of its scaling law, its pointwise
// symbol bounds, and the integrability of its weighted derivatives.

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "kinlab/grid.hpp"

namespace kinlab {

struct KernelSpec {
  int d = 1;         // dimension of x (and of v); 1 or 2
  double sigma = 2.0;  // diffusion order, in (0, 4]
  int n_q = 32;      // Gauss-Legendre nodes per quadrature subinterval, >= 8
};

// Throws argument_error if any field is out of range.
void validate(const KernelSpec& spec);

using Vec2 = std::array<double, 2>;  // first spec.d entries are used

// The drift-averaged symbol psi(xi, eta) = int_0^1 |theta xi - eta|^sigma
// dtheta. Exact closed forms are used for sigma = 2, sigma = 4, and d = 1;
// two-dimensional fractional orders integrate by composite Gauss-Legendre
// graded toward the integrand's minimum at theta* = clamp(xi.eta/|xi|^2,0,1).
double drift_symbol(const KernelSpec& spec, const Vec2& xi, const Vec2& eta);

// The pure graded-quadrature evaluation of the same integral (no closed-form
// shortcuts); exposed so accuracy can be checked against the exact paths.
double drift_symbol_quadrature(const KernelSpec& spec, const Vec2& xi,
                               const Vec2& eta);

// Fourier transform of the kernel: exp(-t psi(t xi, eta)), in (0, 1], equal
// to 1 at xi = eta = 0 (unit mass). Requires t > 0 (argument_error).
double kernel_fourier(const KernelSpec& spec, double t, const Vec2& xi,
                      const Vec2& eta);

// Inverse transform of kernel_fourier sampled on the grid's frequency
// lattice; requires d = 1 and a grid with exactly the axes {x, v}. The
// returned field is physical and real (imaginary residue discarded).
// If the kernel has not decayed below 1e-12 at the lattice's extreme
// frequencies the grid cannot resolve it; throws resolution_error with a
// suggested refinement.
Field kernel_realspace(const KernelSpec& spec, double t, const PhaseGrid& grid);

struct ScanRow {
  double t = 0.0;
  double norm = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  double slope = 0.0;      // least-squares slope of log norm vs log t
  double intercept = 0.0;  // intercept of the same fit
  double predicted = 0.0;  // -kappa - alpha0 (1 + 1/sigma) - beta0 / sigma
};

// Measures ||D_x^{alpha0} D_v^{beta0} G(t)||_{L^{p0}_x L^{q0}_v} on the grid
// for each t and fits the decay power, comparing with the prediction
// built from kernel_decay_exponent. Times must be geometric, increasing,
// with at least 4 points; every t must pass the resolution guard.
ScanResult scaling_norm_scan(const KernelSpec& spec, const PhaseGrid& grid,
                             double alpha0, double beta0, double p0, double q0,
                             const std::vector<double>& times);

// Pointwise symbol bounds checked over a lattice of frequencies:
//   2^sigma (1+sigma)            psi >= |xi|^sigma
//   2^sigma (1+2^sigma(1+sigma)) psi >= |eta|^sigma
//   psi >= c_sigma |(xi,eta)|^sigma,
//   c_sigma = 2^{-sigma/2} / (2^sigma (1 + 2^sigma (1+sigma))).
struct BoundSlack {
  double value = 0.0;  // minimum of (lhs - rhs) over the lattice
  double xi = 0.0;     // frequency pair attaining it
  double eta = 0.0;
};

struct BoundsReport {
  BoundSlack slack_xi;      // first bound
  BoundSlack slack_eta;     // second bound
  BoundSlack slack_radial;  // radial exponential bound
  bool all_hold = false;    // every slack >= -1e-9 relative
};

// Evaluates the three bounds at every frequency pair (xi, eta) of the given
// grid (axes {x, v}, d = 1) and reports the worst slack of each.
BoundsReport appendix_bounds_check(const KernelSpec& spec,
                                   const PhaseGrid& freq_grid);

struct MomentReport {
  double value = 0.0;          // sum <(x,v)>^a |d^m G| dx dv on the base grid
  double refined_value = 0.0;  // same with window doubled and spacing halved
  double rel_change = 0.0;     // |refined - base| / |refined|
  bool stable = false;         // rel_change < 5%
};

// Discrete weighted moment of a kernel derivative,
//   sum <(x,v)>^a |d_x^{mx} d_v^{mv} G(t)| dx dv,
// with the derivative applied spectrally, recomputed on a grid with doubled
// window and halved spacing to test refinement stability. Requires
// 0 <= a < sigma, mx, mv >= 0, mx + mv <= 2 (argument_error otherwise).
MomentReport weighted_moment_check(const KernelSpec& spec, double t,
                                   const PhaseGrid& grid, double a, int mx,
                                   int mv);

}  // namespace kinlab
