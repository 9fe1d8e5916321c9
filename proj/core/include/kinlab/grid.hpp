// SPDX-License-Identifier: Apache-2.0
//
// Periodic phase-space grids and complex fields.
//
// Geometry: an axis of size N and extent L carries lattice points
// z_i = -L/2 + i*L/N (so v = 0 and t = 0 are lattice points and boxes are
// symmetric), and the frequency lattice {2*pi*k/L : k = -N/2 .. N/2-1} in
// standard FFT index order (array index k >= N/2 aliases to k - N).
//
// Transforms use
//   forward:  fhat(zeta) = sum_z f(z) exp(-i z.zeta) * prod(dz)
//   inverse:  f(z) = (1/prod(L)) sum_zeta fhat(zeta) exp(+i z.zeta)
// so that discrete sums approximate the continuum transforms and discrete
// mass equals the zero Fourier coefficient exactly. Plancherel:
//   sum |f|^2 prod(dz) = (1/prod(L)) sum |fhat|^2.

#ifndef KINLAB_GRID_HPP
#define KINLAB_GRID_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kinlab/errors.hpp"

namespace kinlab {

enum class AxisLabel { t, x, v };

inline const char* axis_name(AxisLabel a) {
  switch (a) {
    case AxisLabel::t:
      return "t";
    case AxisLabel::x:
      return "x";
    default:
      return "v";
  }
}

struct Axis {
  AxisLabel label;
  std::size_t size;  // power of two, >= 8
  double extent;     // periodic box length L

  double spacing() const { return extent / static_cast<double>(size); }
  bool operator==(const Axis& o) const {
    return label == o.label && size == o.size && extent == o.extent;
  }
};

inline bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

class PhaseGrid {
 public:
  PhaseGrid() = default;
  explicit PhaseGrid(std::vector<Axis> axes) : axes_(std::move(axes)) {
    for (const Axis& a : axes_) {
      if (!is_pow2(a.size) || a.size < 8)
        throw argument_error("PhaseGrid: axis size must be a power of two >= 8");
      if (!(a.extent > 0))
        throw argument_error("PhaseGrid: axis extent must be positive");
    }
    for (std::size_t i = 0; i < axes_.size(); ++i)
      for (std::size_t j = i + 1; j < axes_.size(); ++j)
        if (axes_[i].label == axes_[j].label)
          throw argument_error("PhaseGrid: duplicate axis label");
  }

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  std::size_t rank() const noexcept { return axes_.size(); }
  const Axis& axis(std::size_t i) const { return axes_.at(i); }

  // Index of the axis with the given label, or -1 when absent.
  int find(AxisLabel label) const noexcept {
    for (std::size_t i = 0; i < axes_.size(); ++i)
      if (axes_[i].label == label) return static_cast<int>(i);
    return -1;
  }
  std::size_t require(AxisLabel label) const {
    const int i = find(label);
    if (i < 0)
      throw argument_error(std::string("PhaseGrid: no axis labelled ") +
                           axis_name(label));
    return static_cast<std::size_t>(i);
  }

  std::size_t size() const noexcept {
    std::size_t n = 1;
    for (const Axis& a : axes_) n *= a.size;
    return n;
  }
  // Row-major strides; the last axis is contiguous.
  std::size_t stride(std::size_t ax) const {
    std::size_t s = 1;
    for (std::size_t i = axes_.size(); i-- > ax + 1;) s *= axes_[i].size;
    return s;
  }

  double cell_volume() const noexcept {
    double v = 1;
    for (const Axis& a : axes_) v *= a.spacing();
    return v;
  }
  double box_volume() const noexcept {
    double v = 1;
    for (const Axis& a : axes_) v *= a.extent;
    return v;
  }

  // Lattice coordinate of index i on axis ax: -L/2 + i*dz.
  double coord(std::size_t ax, std::size_t i) const {
    const Axis& a = axes_[ax];
    return -0.5 * a.extent + static_cast<double>(i) * a.spacing();
  }
  // Signed integer frequency index of array index k: k, or k - N past Nyquist.
  long long freq_index(std::size_t ax, std::size_t k) const {
    const Axis& a = axes_[ax];
    const long long n = static_cast<long long>(a.size);
    const long long kk = static_cast<long long>(k);
    return kk < n / 2 ? kk : kk - n;
  }
  // Frequency 2*pi*k~/L of array index k on axis ax.
  double freq(std::size_t ax, std::size_t k) const {
    return 6.283185307179586476925287 * static_cast<double>(freq_index(ax, k)) /
           axes_[ax].extent;
  }

  bool operator==(const PhaseGrid& o) const { return axes_ == o.axes_; }
  bool operator!=(const PhaseGrid& o) const { return !(*this == o); }

 private:
  std::vector<Axis> axes_;
};

// Complex field on a phase grid. `spectral[a]` records whether axis a is
// currently in frequency representation; fully physical and fully spectral
// are the common states, but mixed states are allowed for staged transforms.
struct Field {
  PhaseGrid grid;
  std::vector<std::complex<double>> values;
  std::vector<std::uint8_t> spectral;

  Field() = default;
  explicit Field(const PhaseGrid& g, bool spectral_rep = false)
      : grid(g),
        values(g.size(), std::complex<double>(0.0, 0.0)),
        spectral(g.rank(), spectral_rep ? 1 : 0) {}

  bool fully_physical() const {
    for (auto s : spectral)
      if (s) return false;
    return true;
  }
  bool fully_spectral() const {
    for (auto s : spectral)
      if (!s) return false;
    return true;
  }
};

}  // namespace kinlab

#endif  // KINLAB_GRID_HPP
