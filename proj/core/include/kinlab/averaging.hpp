// SPDX-License-Identifier: Apache-2.0
//
// Velocity-averaging laboratory on (t, x, v) lattices: the velocity-moment
// map, the commutator identity for the Bessel weight against free transport,
// the weighted time-frequency identity, manufactured solution pairs of the
// kinetic equation
//   d_t f + v . d_x f = (lambda D_t^alpha + D_x^alpha) D_v^beta g,
// and the measured-versus-predicted gain-of-regularity inequality.

#pragma once

#include <cstdint>

#include "kinlab/exponents.hpp"
#include "kinlab/grid.hpp"
#include "kinlab/spectral.hpp"

namespace kinlab {

// A data pair (f, g) satisfying the kinetic equation in the discrete
// spectral sense, built by inverse design from a randomized f.
struct ManufacturedPair {
  Field f;  // real, windowed in t and v, unit L^2 norm
  Field g;  // source datum, defined spectrally from f
  KineticParams params;
  std::uint64_t seed = 0;
  double target_k = 0.0;  // velocity spectral calibration of the draw
  double target_l = 0.0;  // derivative order granted to g in the estimates
  std::size_t guard_t = 0, transition_t = 0;  // time window cells
  std::size_t guard_v = 0, transition_v = 0;  // velocity window cells
  double residual = 0.0;          // relative discrete equation residual
  double removed_fraction = 0.0;  // energy removed by the divisor projections
};

// Integrates f against phi over the velocity axis with Delta v weights,
// returning a field over the remaining axes. phi must live on a single-axis
// grid matching f's v axis (argument_error otherwise); both fields physical.
Field velocity_moment(const Field& f, const Field& phi);

// Relative l2 residual of A - B - C with
//   A = <D_v>^{1-r} (d_t f + v . d_x f),
//   B = (d_t + v . d_x) <D_v>^{1-r} f,
//   C = (1-r) * inverse transform of xi eta <eta>^{-1-r} fhat,
// i.e. the discrete defect of the commutator identity
// [<eta>^{1-r}, X] = (1-r) xi eta <eta>^{-1-r}. Requires axes {t, x, v}.
double commutator_residual(const Field& f, double r);

// Relative residual of the weighted time-frequency identity
//   sum tau^2 W |fhat|^2
//     = sum W Re[ (-i tau X fhat - tau xi F[v f] - tau xi F[u f]) conj(fhat) ],
// with W = <tau>^{2s-2} <eta>^{-2r} and X fhat = i tau fhat + i xi F[v f]
// + i xi F[u f] assembled from plain pointwise products; the standalone u
// term uses the 3/2-rule dealiased product, so the residual measures exactly
// the aliasing content of the u multiplication (and vanishes to roundoff for
// u = 0). u, when present, lives on the (t, x) sub-grid.
double time_identity_residual(const Field& f, double s, double r,
                              const Field* u = nullptr);

// Builds a ManufacturedPair on the given (t, x, v) grid (all extents 2 pi,
// so frequencies are integers and the source divisor is either exactly zero
// or >= 1): draws a random real f with spectral law
// <(tau,xi)>^{-(2.25-alpha)} <max(|eta|,4)>^{-(k+0.55)}, windows it in t and
// v, then removes — by cyclic minimum-energy projections — the x mean, the
// velocity moments 0 and 1 of every (t, x) line when beta > 0, and any
// guard-band residue, and defines g spectrally as
//   ghat = (i tau fhat + i xi F[v f]) / ((lambda|tau|^alpha + |xi|^alpha)|eta|^beta)
// on modes where the divisor is >= 1e-8, zero elsewhere (|zeta|^0 == 1, so
// alpha = 0 or beta = 0 factors never vanish). Throws rejection_error when
// the projections remove more than 20% of the energy.
ManufacturedPair manufacture_pair(const KineticParams& params, double k,
                                  double l, std::uint64_t seed,
                                  const PhaseGrid& grid);

// Which velocity weight the gain-of-regularity estimate is measured in.
enum class Reg0Variant {
  weighted,  // H^{-3/2}_v on the left-hand side
  plain      // L^2_v on the left-hand side
};

struct AveragingReport {
  double s = 0.0;     // exponent from the estimate calculus
  double bigR = 0.0;  // velocity support radius (>= 1)
  double lhs_x = 0.0;       // ||D_x^s f||^2 in the variant weight
  double lhs_t = 0.0;       // R^{-2s} ||D_t^s f||^2 in the variant weight
  double lhs = 0.0;         // their sum
  double rhs_bilinear = 0.0;  // (1 + lambda R^alpha) ||D_v^l f|| ||g||
  double rhs_sobolev = 0.0;   // ||f||^2 in L^2 H^k_v
  double rhs = 0.0;           // their sum
  double ratio = 0.0;         // lhs / rhs
};

// The right-hand side assembly as a pure function of measured norms, so the
// lambda and R bookkeeping can be audited exactly.
double assemble_reg0_rhs(int lambda, double bigR, double alpha,
                         double dual_norm_dvl_f, double norm_g,
                         double f_sobolev_sq);

// Measures both sides of the gain-of-regularity estimate on a pair:
//   LHS = ||D_x^s f||^2_w + R^{-2s} ||D_t^s f||^2_w
//   RHS = (1 + lambda R^alpha) ||D_v^l f||_{p*,q*} ||g||_{p,q} + ||f||^2_{L^2 H^k_v}
// with w the variant's velocity weight, s from the estimate calculus, the
// dual exponents (p*, q*) conjugate to `norms`, and R = max(1, largest |v|
// carrying mass). Reports all pieces and the ratio.
AveragingReport verify_reg0(const ManufacturedPair& pair, Reg0Variant variant,
                            const MixedNormSpec& norms);

}  // namespace kinlab
