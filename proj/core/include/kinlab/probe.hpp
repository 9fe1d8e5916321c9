// SPDX-License-Identifier: Apache-2.0
//
// Spectral regularity probe: logarithmic shell decomposition of a field's
// energy over selected frequency axes, and a least-squares estimate of the
// supremum Sobolev index from the shell decay.

#pragma once

#include <cstddef>
#include <vector>

#include "kinlab/grid.hpp"

namespace kinlab {

// Energy of a field binned into logarithmic frequency shells
//   shell j = { zeta : base^j <= |zeta| < base^{j+1} }
// where |zeta| is the radius over the probed axes and all remaining axes are
// summed in L^2 (Plancherel weights). `energy[i]` and `count[i]` describe
// shell j = j_min + i; `zero_mode` holds the energy at radius 0, so that
// zero_mode + sum(energy) equals the squared L^2 norm.
struct ShellSpectrum {
  std::vector<AxisLabel> axes;     // probed axes
  double base = 2.0;               // shell ratio (2 = octaves)
  long long j_min = 0;             // shell index of energy[0]
  std::vector<double> energy;      // E_j, Plancherel-weighted
  std::vector<std::size_t> count;  // lattice modes per shell
  double zero_mode = 0.0;          // energy at |zeta| = 0
};

// Bins the field's spectral energy into shells over `axes`. The default
// base 2 gives octave (dyadic) shells; a smaller base such as sqrt(2) yields
// more shells on coarse grids. Requires base > 1 and a nonempty axis list.
ShellSpectrum shell_energies(const Field& f, const std::vector<AxisLabel>& axes,
                             double base = 2.0);

// Result of fitting a power law to the shell energies.
struct ExponentFit {
  double s_est = 0.0;       // estimated supremum Sobolev index
  double stderr_val = 0.0;  // standard error of s_est from the regression
  double slope = 0.0;       // fitted slope of log_base(E_j) against j
  double s_cap = 0.0;       // clamp magnitude applied to s_est
  long long j_lo = 0;       // first shell index used
  long long j_hi = 0;       // last shell index used
  std::size_t shells_used = 0;
  bool clamped = false;
};

// Least-squares fit of log_base(E_j) against j over the usable shells: the
// populated shells minus the lowest two (box-size effects) and the top 25%
// (aliasing band). If E_j ~ C * base^{j (d_ax - 2 gamma)} then the field lies
// in H^s for every s < gamma - d_ax/2, and s_est = -slope/2 recovers that
// threshold independently of d_ax. The estimate is clamped to [-s_cap, s_cap]
// with s_cap = max(1, octave span of the usable shells - 1/2); stderr_val is
// the regression standard error of the slope divided by two.
// Requires d_ax >= 1 and at least 5 usable shells (argument_error otherwise).
ExponentFit fit_exponent(const ShellSpectrum& spectrum, int d_ax);

}  // namespace kinlab
