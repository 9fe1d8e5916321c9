// SPDX-License-Identifier: Apache-2.0

#include "kinlab/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "kinlab/errors.hpp"
#include "kinlab/fft.hpp"

namespace kinlab {
namespace {

std::vector<std::size_t> resolve_axes(const PhaseGrid& g,
                                      const std::vector<AxisLabel>& labels) {
  std::vector<std::size_t> axes;
  axes.reserve(labels.size());
  for (AxisLabel l : labels) axes.push_back(g.require(l));
  return axes;
}

struct AxisView {
  std::size_t stride;
  std::size_t size;
  std::vector<double> freq;  // indexed by array index
};

AxisView make_axis_view(const PhaseGrid& g, std::size_t ax) {
  AxisView view;
  view.stride = g.stride(ax);
  view.size = g.axis(ax).size;
  view.freq.resize(view.size);
  for (std::size_t k = 0; k < view.size; ++k) view.freq[k] = g.freq(ax, k);
  return view;
}

}  // namespace

void apply_radial_multiplier(Field& f, const std::vector<std::size_t>& axes,
                             const std::function<double(double)>& weight) {
  std::vector<AxisView> views;
  views.reserve(axes.size());
  for (std::size_t ax : axes) {
    if (ax >= f.grid.rank())
      throw argument_error("apply_radial_multiplier: axis out of range");
    if (!f.spectral[ax])
      throw argument_error("apply_radial_multiplier: axis not spectral");
    views.push_back(make_axis_view(f.grid, ax));
  }
  const std::size_t total = f.values.size();
  for (std::size_t i = 0; i < total; ++i) {
    double r2 = 0.0;
    for (const AxisView& v : views) {
      const double w = v.freq[(i / v.stride) % v.size];
      r2 += w * w;
    }
    f.values[i] *= weight(std::sqrt(r2));
  }
}

Field fractional_derivative(const Field& f, const std::vector<AxisLabel>& labels,
                            double m) {
  if (!(m >= 0))
    throw argument_error("fractional_derivative: order must be >= 0");
  Field out = f;
  const auto axes = resolve_axes(out.grid, labels);
  std::vector<std::size_t> converted;
  for (std::size_t ax : axes)
    if (!out.spectral[ax]) converted.push_back(ax);
  forward_axes(out, converted);
  if (m > 0) {
    apply_radial_multiplier(out, axes, [m](double r) {
      return r == 0.0 ? 0.0 : std::pow(r, m);
    });
  }
  inverse_axes(out, converted);
  return out;
}

Field bessel_multiplier(const Field& f, const std::vector<AxisLabel>& labels,
                        double r) {
  Field out = f;
  const auto axes = resolve_axes(out.grid, labels);
  std::vector<std::size_t> converted;
  for (std::size_t ax : axes)
    if (!out.spectral[ax]) converted.push_back(ax);
  forward_axes(out, converted);
  apply_radial_multiplier(out, axes, [r](double rad) {
    return std::pow(1.0 + rad * rad, 0.5 * r);
  });
  inverse_axes(out, converted);
  return out;
}

Field coordinate_derivative(const Field& f, AxisLabel axis) {
  Field out = f;
  const std::size_t ax = out.grid.require(axis);
  const bool was_physical = !out.spectral[ax];
  if (was_physical) forward_axes(out, {ax});
  const std::size_t n = out.grid.axis(ax).size;
  const std::size_t s = out.grid.stride(ax);
  const std::size_t block = s * n;
  for (std::size_t base = 0; base < out.values.size(); base += block)
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> mult(0.0, out.grid.freq(ax, k));
      std::complex<double>* p = out.values.data() + base + k * s;
      for (std::size_t i = 0; i < s; ++i) p[i] *= mult;
    }
  if (was_physical) inverse_axes(out, {ax});
  return out;
}

double mixed_lebesgue_norm(const Field& f, const MixedNormSpec& spec) {
  if (!(spec.p >= 1.0) || !(spec.q >= 1.0))
    throw argument_error("mixed_lebesgue_norm: exponents must be >= 1");
  const Field phys = f.fully_physical() ? f : physical_copy(f);
  const PhaseGrid& g = phys.grid;

  const int vax = g.find(AxisLabel::v);
  const bool p_inf = std::isinf(spec.p);
  const bool q_inf = std::isinf(spec.q);

  double outer_weight = 1.0;  // product of spacings over non-v axes
  for (std::size_t a = 0; a < g.rank(); ++a)
    if (static_cast<int>(a) != vax) outer_weight *= g.axis(a).spacing();

  double outer_acc = 0.0, outer_max = 0.0;
  auto accumulate_outer = [&](double inner) {
    if (p_inf)
      outer_max = std::max(outer_max, inner);
    else
      outer_acc += std::pow(inner, spec.p);
  };

  if (vax < 0) {
    for (const auto& z : phys.values) accumulate_outer(std::abs(z));
  } else {
    const std::size_t s = g.stride(static_cast<std::size_t>(vax));
    const std::size_t n = g.axis(static_cast<std::size_t>(vax)).size;
    const double dv = g.axis(static_cast<std::size_t>(vax)).spacing();
    const std::size_t block = s * n;
    for (std::size_t base = 0; base < phys.values.size(); base += block) {
      for (std::size_t off = 0; off < s; ++off) {
        double acc = 0.0, vmax = 0.0;
        const std::complex<double>* p = phys.values.data() + base + off;
        for (std::size_t k = 0; k < n; ++k) {
          const double a = std::abs(p[k * s]);
          if (q_inf)
            vmax = std::max(vmax, a);
          else
            acc += std::pow(a, spec.q) * dv;
        }
        accumulate_outer(q_inf ? vmax : std::pow(acc, 1.0 / spec.q));
      }
    }
  }
  return p_inf ? outer_max : std::pow(outer_acc * outer_weight, 1.0 / spec.p);
}

double sobolev_mixed_norm(const Field& f, double s, double r) {
  const Field spec = f.fully_spectral() ? f : spectral_copy(f);
  const PhaseGrid& g = spec.grid;

  std::vector<AxisView> tx_views;
  for (AxisLabel l : {AxisLabel::t, AxisLabel::x})
    if (g.find(l) >= 0) tx_views.push_back(make_axis_view(g, g.require(l)));
  std::vector<AxisView> v_views;
  if (g.find(AxisLabel::v) >= 0)
    v_views.push_back(make_axis_view(g, g.require(AxisLabel::v)));

  double sum = 0.0;
  const std::size_t total = spec.values.size();
  for (std::size_t i = 0; i < total; ++i) {
    double r2tx = 0.0;
    for (const AxisView& v : tx_views) {
      const double w = v.freq[(i / v.stride) % v.size];
      r2tx += w * w;
    }
    double r2v = 0.0;
    for (const AxisView& v : v_views) {
      const double w = v.freq[(i / v.stride) % v.size];
      r2v += w * w;
    }
    const double wtx = std::pow(1.0 + r2tx, s);
    const double wv = std::pow(1.0 + r2v, r);
    sum += wtx * wv * std::norm(spec.values[i]);
  }
  return std::sqrt(sum / g.box_volume());
}

double l2_norm(const Field& f) {
  double weight = 1.0;
  for (std::size_t a = 0; a < f.grid.rank(); ++a)
    weight *= f.spectral[a] ? 1.0 / f.grid.axis(a).extent : f.grid.axis(a).spacing();
  double sum = 0.0;
  for (const auto& z : f.values) sum += std::norm(z);
  return std::sqrt(sum * weight);
}

std::vector<double> smooth_window(std::size_t n, std::size_t guard,
                                  std::size_t transition) {
  if (2 * (guard + transition) >= n)
    throw argument_error("smooth_window: guards and ramps exceed the axis");
  auto ramp = [](double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double h0 = std::exp(-1.0 / u);
    const double h1 = std::exp(-1.0 / (1.0 - u));
    return h0 / (h0 + h1);
  };
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double rise =
        ramp((static_cast<double>(i) - static_cast<double>(guard)) /
             static_cast<double>(transition));
    const double fall =
        ramp((static_cast<double>(n - 1 - i) - static_cast<double>(guard)) /
             static_cast<double>(transition));
    w[i] = rise * fall;
  }
  return w;
}

void apply_axis_profile(Field& f, std::size_t axis, const std::vector<double>& w) {
  if (axis >= f.grid.rank())
    throw argument_error("apply_axis_profile: axis out of range");
  if (f.spectral[axis])
    throw argument_error("apply_axis_profile: axis must be physical");
  const std::size_t n = f.grid.axis(axis).size;
  if (w.size() != n) throw argument_error("apply_axis_profile: length mismatch");
  const std::size_t s = f.grid.stride(axis);
  const std::size_t block = s * n;
  for (std::size_t base = 0; base < f.values.size(); base += block)
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double>* p = f.values.data() + base + k * s;
      for (std::size_t i = 0; i < s; ++i) p[i] *= w[k];
    }
}

void apply_axis_window(Field& f, AxisLabel axis, std::size_t guard,
                       std::size_t transition) {
  const std::size_t ax = f.grid.require(axis);
  apply_axis_profile(f, ax, smooth_window(f.grid.axis(ax).size, guard, transition));
}

void multiply_by_coordinate(Field& f, AxisLabel axis) {
  const std::size_t ax = f.grid.require(axis);
  const std::size_t n = f.grid.axis(ax).size;
  std::vector<double> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = f.grid.coord(ax, i);
  apply_axis_profile(f, ax, coords);
}

Field broadcast_multiply(const Field& f, const Field& u) {
  if (!f.fully_physical() || !u.fully_physical())
    throw argument_error("broadcast_multiply: both fields must be physical");
  // Map u's axes onto f's; they must agree in label, size, and extent.
  std::vector<long long> u_axis_of(f.grid.rank(), -1);
  for (std::size_t ua = 0; ua < u.grid.rank(); ++ua) {
    const int fa = f.grid.find(u.grid.axis(ua).label);
    if (fa < 0 || !(f.grid.axis(static_cast<std::size_t>(fa)) == u.grid.axis(ua)))
      throw argument_error("broadcast_multiply: axis mismatch");
    u_axis_of[static_cast<std::size_t>(fa)] = static_cast<long long>(ua);
  }
  Field out = f;
  const std::size_t total = out.values.size();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t ui = 0;
    for (std::size_t a = 0; a < f.grid.rank(); ++a) {
      if (u_axis_of[a] < 0) continue;
      const std::size_t idx = (i / f.grid.stride(a)) % f.grid.axis(a).size;
      ui += idx * u.grid.stride(static_cast<std::size_t>(u_axis_of[a]));
    }
    out.values[i] *= u.values[ui];
  }
  return out;
}

namespace {

// Signed frequency index of array index k on an axis of size n.
inline long long signed_index(std::size_t k, std::size_t n) {
  return k < n / 2 ? static_cast<long long>(k)
                   : static_cast<long long>(k) - static_cast<long long>(n);
}
// Array index of signed frequency kk on an axis of size n (kk in [-n/2, n/2)).
inline std::size_t array_index(long long kk, std::size_t n) {
  return kk >= 0 ? static_cast<std::size_t>(kk)
                 : static_cast<std::size_t>(kk + static_cast<long long>(n));
}

std::vector<std::size_t> shape_strides(const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> s(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) s[i - 1] = s[i] * shape[i];
  return s;
}

}  // namespace

Field dealiased_broadcast_product(const Field& fhat, const Field& uhat,
                                  const std::vector<AxisLabel>& pad_labels) {
  if (!fhat.fully_spectral() || !uhat.fully_spectral())
    throw argument_error("dealiased_broadcast_product: inputs must be spectral");
  const PhaseGrid& fg = fhat.grid;
  const PhaseGrid& ug = uhat.grid;

  for (std::size_t ua = 0; ua < ug.rank(); ++ua) {
    const int fa = fg.find(ug.axis(ua).label);
    if (fa < 0 || !(fg.axis(static_cast<std::size_t>(fa)) == ug.axis(ua)))
      throw argument_error("dealiased_broadcast_product: axis mismatch");
  }
  std::vector<std::size_t> f_pad_axes;
  for (AxisLabel l : pad_labels) {
    f_pad_axes.push_back(fg.require(l));
    if (ug.find(l) < 0)
      throw argument_error(
          "dealiased_broadcast_product: pad axis absent from the factor");
  }

  // Padded shapes: 3n/2 along pad axes.
  auto padded_shape = [&](const PhaseGrid& g,
                          const std::vector<AxisLabel>& pads) {
    std::vector<std::size_t> shape(g.rank());
    for (std::size_t a = 0; a < g.rank(); ++a) {
      shape[a] = g.axis(a).size;
      for (AxisLabel l : pads)
        if (g.axis(a).label == l) shape[a] = 3 * shape[a] / 2;
    }
    return shape;
  };
  const auto f_shape = padded_shape(fg, pad_labels);
  const auto u_shape = padded_shape(ug, pad_labels);
  const auto f_strides = shape_strides(f_shape);
  const auto u_strides = shape_strides(u_shape);

  auto embed = [&](const Field& src, const std::vector<std::size_t>& shape,
                   const std::vector<std::size_t>& strides) {
    std::size_t total = 1;
    for (auto s : shape) total *= s;
    std::vector<std::complex<double>> out(total, std::complex<double>(0, 0));
    const PhaseGrid& g = src.grid;
    for (std::size_t i = 0; i < src.values.size(); ++i) {
      std::size_t j = 0;
      for (std::size_t a = 0; a < g.rank(); ++a) {
        const std::size_t n = g.axis(a).size;
        const std::size_t idx = (i / g.stride(a)) % n;
        j += array_index(signed_index(idx, n), shape[a]) * strides[a];
      }
      out[j] = src.values[i];
    }
    return out;
  };

  auto pad_to_physical = [&](std::vector<std::complex<double>>& data,
                             const PhaseGrid& g,
                             const std::vector<std::size_t>& shape,
                             const std::vector<std::size_t>& strides) {
    for (std::size_t a = 0; a < g.rank(); ++a) {
      bool is_pad = false;
      for (AxisLabel l : pad_labels)
        if (g.axis(a).label == l) is_pad = true;
      if (!is_pad) continue;
      // Scale by (-1)^k / L, then backward FFT (lattice origin at -L/2).
      const double inv_l = 1.0 / g.axis(a).extent;
      const std::size_t n = shape[a], s = strides[a];
      const std::size_t block = s * n;
      for (std::size_t base = 0; base < data.size(); base += block)
        for (std::size_t k = 0; k < n; ++k) {
          const double c = (k & 1u) ? -inv_l : inv_l;
          std::complex<double>* p = data.data() + base + k * s;
          for (std::size_t i = 0; i < s; ++i) p[i] *= c;
        }
      raw_fft_axis(data, shape, a, +1);
    }
  };

  auto f_pad = embed(fhat, f_shape, f_strides);
  auto u_pad = embed(uhat, u_shape, u_strides);
  pad_to_physical(f_pad, fg, f_shape, f_strides);
  pad_to_physical(u_pad, ug, u_shape, u_strides);

  // Pointwise multiply, broadcasting u over the axes it lacks.
  std::vector<long long> u_axis_of(fg.rank(), -1);
  for (std::size_t ua = 0; ua < ug.rank(); ++ua)
    u_axis_of[static_cast<std::size_t>(fg.find(ug.axis(ua).label))] =
        static_cast<long long>(ua);
  for (std::size_t i = 0; i < f_pad.size(); ++i) {
    std::size_t ui = 0;
    for (std::size_t a = 0; a < fg.rank(); ++a) {
      if (u_axis_of[a] < 0) continue;
      const std::size_t idx = (i / f_strides[a]) % f_shape[a];
      ui += idx * u_strides[static_cast<std::size_t>(u_axis_of[a])];
    }
    f_pad[i] *= u_pad[ui];
  }

  // Back to spectral along pad axes: forward FFT then dz' * (-1)^k.
  for (std::size_t a = 0; a < fg.rank(); ++a) {
    bool is_pad = false;
    for (AxisLabel l : pad_labels)
      if (fg.axis(a).label == l) is_pad = true;
    if (!is_pad) continue;
    raw_fft_axis(f_pad, f_shape, a, -1);
    const double dz = fg.axis(a).extent / static_cast<double>(f_shape[a]);
    const std::size_t n = f_shape[a], s = f_strides[a];
    const std::size_t block = s * n;
    for (std::size_t base = 0; base < f_pad.size(); base += block)
      for (std::size_t k = 0; k < n; ++k) {
        const double c = (k & 1u) ? -dz : dz;
        std::complex<double>* p = f_pad.data() + base + k * s;
        for (std::size_t i = 0; i < s; ++i) p[i] *= c;
      }
  }

  // Truncate back to the original band.
  Field out(fg, true);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t a = 0; a < fg.rank(); ++a) {
      const std::size_t n = fg.axis(a).size;
      const std::size_t idx = (i / fg.stride(a)) % n;
      j += array_index(signed_index(idx, n), f_shape[a]) * f_strides[a];
    }
    out.values[i] = f_pad[j];
  }
  return out;
}

void hermitian_symmetrize(Field& fhat) {
  if (!fhat.fully_spectral())
    throw argument_error("hermitian_symmetrize: field must be spectral");
  const PhaseGrid& g = fhat.grid;
  const std::size_t total = fhat.values.size();
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t m = 0;
    for (std::size_t a = 0; a < g.rank(); ++a) {
      const std::size_t n = g.axis(a).size;
      const std::size_t idx = (i / g.stride(a)) % n;
      m += ((n - idx) % n) * g.stride(a);
    }
    if (m < i) continue;
    if (m == i) {
      fhat.values[i] = std::complex<double>(fhat.values[i].real(), 0.0);
    } else {
      const std::complex<double> avg =
          0.5 * (fhat.values[i] + std::conj(fhat.values[m]));
      fhat.values[i] = avg;
      fhat.values[m] = std::conj(avg);
    }
  }
}

}  // namespace kinlab
