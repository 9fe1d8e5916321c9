// SPDX-License-Identifier: Apache-2.0
//
// Fractional multipliers, mixed Lebesgue/Sobolev norms, smooth windows, and
// dealiased products on phase-space fields.

#ifndef KINLAB_SPECTRAL_HPP
#define KINLAB_SPECTRAL_HPP

#include <functional>
#include <vector>

#include "kinlab/grid.hpp"

namespace kinlab {

// Mixed Lebesgue exponents: p over the non-velocity axes (outer norm),
// q over the velocity axis (inner norm). Infinity selects the grid maximum.
struct MixedNormSpec {
  double p = 2.0;
  double q = 2.0;
};

// |zeta|^m over the frequency radius of the chosen axes; the zero mode maps
// to 0 for m > 0 and m = 0 is the identity. The result is returned in the
// representation the input arrived in.
Field fractional_derivative(const Field& f, const std::vector<AxisLabel>& axes,
                            double m);

// <zeta>^r = (1 + |zeta|^2)^(r/2) over the chosen axes; r may be negative.
Field bessel_multiplier(const Field& f, const std::vector<AxisLabel>& axes,
                        double r);

// First derivative along one axis via the i*zeta multiplier, returned in the
// input's representation.
Field coordinate_derivative(const Field& f, AxisLabel axis);

// Apply an arbitrary radial spectral weight over the chosen axes, in place,
// to a field whose listed axes are already spectral.
void apply_radial_multiplier(Field& fhat, const std::vector<std::size_t>& axes,
                             const std::function<double(double)>& weight);

// Discrete L^p_{t,x} L^q_v quadrature norm (inner q over v, outer p over the
// rest). Fields without a v axis reduce to the plain outer norm.
double mixed_lebesgue_norm(const Field& f, const MixedNormSpec& spec);

// Plancherel-weighted l2 of <(tau,xi)>^s <eta>^r fhat, i.e. the discrete
// H^s_{t,x} H^r_v norm. Axes not present are skipped (e.g. (x,v)-only grids
// weight <xi>^s).
double sobolev_mixed_norm(const Field& f, double s, double r);

// Discrete L^2 norm, representation-aware (Plancherel on spectral axes).
double l2_norm(const Field& f);

// C-infinity cutoff profile of length n: identically 0 on [0,guard) and
// [n-guard,n), identically 1 between the transition ramps.
std::vector<double> smooth_window(std::size_t n, std::size_t guard,
                                  std::size_t transition);

// Multiply a physical-representation axis by a window profile / by its
// lattice coordinate.
void apply_axis_profile(Field& f, std::size_t axis, const std::vector<double>& w);
void apply_axis_window(Field& f, AxisLabel axis, std::size_t guard,
                       std::size_t transition);
void multiply_by_coordinate(Field& f, AxisLabel axis);

// Pointwise product a*b where u lives on a sub-grid of f (matching labelled
// axes); both fully physical. Used for u(t,x) * f(t,x,v).
Field broadcast_multiply(const Field& f, const Field& u);

// Spectral coefficients of the product f*u, computed alias-free by the 3/2
// zero-padding rule along the listed axes (u's axes must be a subset of f's;
// both inputs fully spectral). The result is fully spectral on f's grid.
Field dealiased_broadcast_product(const Field& fhat, const Field& uhat,
                                  const std::vector<AxisLabel>& pad_axes);

// Force Hermitian symmetry fhat(-k) = conj(fhat(k)) on a fully spectral
// field by averaging conjugate pairs (exact real-valuedness in physical
// space afterwards).
void hermitian_symmetrize(Field& fhat);

}  // namespace kinlab

#endif  // KINLAB_SPECTRAL_HPP
