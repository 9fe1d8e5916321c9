// SPDX-License-Identifier: Apache-2.0

#include "kinlab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "kinlab/errors.hpp"
#include "kinlab/fft.hpp"

namespace kinlab {

namespace {

// Shell index j with base^j <= r < base^{j+1}, robust at shell boundaries:
// the log-based guess is corrected with direct comparisons against
// consistently computed powers.
long long shell_index(double r, double base) {
  long long j = static_cast<long long>(
      std::floor(std::log(r) / std::log(base)));
  while (r < std::pow(base, static_cast<double>(j))) --j;
  while (r >= std::pow(base, static_cast<double>(j + 1))) ++j;
  return j;
}

}  // namespace

ShellSpectrum shell_energies(const Field& f, const std::vector<AxisLabel>& axes,
                             double base) {
  if (axes.empty()) throw argument_error("shell_energies: no axes selected");
  if (!(base > 1.0)) throw argument_error("shell_energies: base must be > 1");

  const Field spec = f.fully_spectral() ? f : spectral_copy(f);
  const PhaseGrid& g = spec.grid;

  struct View {
    std::size_t stride, size;
    std::vector<double> freq;
  };
  std::vector<View> views;
  for (AxisLabel l : axes) {
    const std::size_t ax = g.require(l);
    View v{g.stride(ax), g.axis(ax).size, {}};
    v.freq.resize(v.size);
    for (std::size_t k = 0; k < v.size; ++k) v.freq[k] = g.freq(ax, k);
    views.push_back(std::move(v));
  }

  const double weight = 1.0 / g.box_volume();
  std::map<long long, std::pair<double, std::size_t>> shells;
  double zero_mode = 0.0;

  const std::size_t total = spec.values.size();
  for (std::size_t i = 0; i < total; ++i) {
    double r2 = 0.0;
    for (const View& v : views) {
      const double w = v.freq[(i / v.stride) % v.size];
      r2 += w * w;
    }
    const double e = std::norm(spec.values[i]) * weight;
    if (r2 == 0.0) {
      zero_mode += e;
      continue;
    }
    auto& slot = shells[shell_index(std::sqrt(r2), base)];
    slot.first += e;
    slot.second += 1;
  }

  ShellSpectrum out;
  out.axes = axes;
  out.base = base;
  out.zero_mode = zero_mode;
  if (shells.empty()) return out;
  out.j_min = shells.begin()->first;
  const long long j_max = shells.rbegin()->first;
  out.energy.assign(static_cast<std::size_t>(j_max - out.j_min + 1), 0.0);
  out.count.assign(out.energy.size(), 0);
  for (const auto& [j, slot] : shells) {
    out.energy[static_cast<std::size_t>(j - out.j_min)] = slot.first;
    out.count[static_cast<std::size_t>(j - out.j_min)] = slot.second;
  }
  return out;
}

ExponentFit fit_exponent(const ShellSpectrum& spectrum, int d_ax) {
  if (d_ax < 1) throw argument_error("fit_exponent: d_ax must be >= 1");

  std::vector<std::size_t> populated;
  for (std::size_t i = 0; i < spectrum.energy.size(); ++i)
    if (spectrum.energy[i] > 0.0 && spectrum.count[i] > 0)
      populated.push_back(i);

  const std::size_t m = populated.size();
  const std::size_t top_drop = (m + 3) / 4;  // ceil(25%): aliasing band
  if (m < 2 + top_drop + 5)
    throw argument_error(
        "fit_exponent: fewer than 5 usable shells after discarding the "
        "lowest 2 and the top 25%");
  const std::size_t lo = 2, hi = m - top_drop;  // usable range in `populated`

  const double log_base = std::log(spectrum.base);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(hi - lo);
  for (std::size_t idx = lo; idx < hi; ++idx) {
    const double x =
        static_cast<double>(spectrum.j_min) + static_cast<double>(populated[idx]);
    const double y = std::log(spectrum.energy[populated[idx]]) / log_base;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double sxx_c = sxx - sx * sx / n;
  const double slope = (sxy - sx * sy / n) / sxx_c;
  const double intercept = (sy - slope * sx) / n;

  double ssr = 0.0;
  for (std::size_t idx = lo; idx < hi; ++idx) {
    const double x =
        static_cast<double>(spectrum.j_min) + static_cast<double>(populated[idx]);
    const double y = std::log(spectrum.energy[populated[idx]]) / log_base;
    const double rsd = y - (slope * x + intercept);
    ssr += rsd * rsd;
  }
  const double se_slope =
      n > 2 ? std::sqrt(ssr / (n - 2.0) / sxx_c) : 0.0;

  ExponentFit fit;
  fit.slope = slope;
  fit.j_lo = spectrum.j_min + static_cast<long long>(populated[lo]);
  fit.j_hi = spectrum.j_min + static_cast<long long>(populated[hi - 1]);
  fit.shells_used = hi - lo;
  const double octaves =
      static_cast<double>(fit.j_hi - fit.j_lo) * std::log2(spectrum.base);
  fit.s_cap = std::max(1.0, octaves - 0.5);
  fit.stderr_val = se_slope / 2.0;
  fit.s_est = std::clamp(-slope / 2.0, -fit.s_cap, fit.s_cap);
  fit.clamped = fit.s_est != -slope / 2.0;
  return fit;
}

}  // namespace kinlab
