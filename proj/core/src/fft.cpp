// SPDX-License-Identifier: Apache-2.0

#include "kinlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

#include "kinlab/errors.hpp"

namespace kinlab {
namespace {

// FFTW plan creation is not thread-safe; execution via the new-array
// interface is. Plans are cached per (shape, axis, sign) and created with
// FFTW_ESTIMATE only: measured planning selects algorithms by timing, which
// would make outputs depend on machine load. FFTW_UNALIGNED keeps plans
// valid for any buffer the new-array execute is handed.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const std::vector<std::size_t>& shape, std::size_t axis, int sign) {
    const Key key{shape, axis, sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    // Guru layout: one transform dimension (the axis), every other axis a
    // loop dimension. Row-major strides.
    std::vector<std::ptrdiff_t> strides(shape.size(), 1);
    for (std::size_t i = shape.size(); i-- > 1;)
      strides[i - 1] = strides[i] * static_cast<std::ptrdiff_t>(shape[i]);

    fftw_iodim64 dim;
    dim.n = static_cast<std::ptrdiff_t>(shape[axis]);
    dim.is = strides[axis];
    dim.os = strides[axis];

    std::vector<fftw_iodim64> howmany;
    for (std::size_t a = 0; a < shape.size(); ++a) {
      if (a == axis) continue;
      fftw_iodim64 h;
      h.n = static_cast<std::ptrdiff_t>(shape[a]);
      h.is = strides[a];
      h.os = strides[a];
      howmany.push_back(h);
    }

    std::vector<std::complex<double>> scratch(total(shape));
    auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_guru64_dft(
        1, &dim, static_cast<int>(howmany.size()),
        howmany.empty() ? nullptr : howmany.data(), ptr, ptr,
        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw error("fft: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  using Key = std::tuple<std::vector<std::size_t>, std::size_t, int>;

  static std::size_t total(const std::vector<std::size_t>& shape) {
    std::size_t n = 1;
    for (auto s : shape) n *= s;
    return n;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

std::vector<std::size_t> grid_shape(const PhaseGrid& g) {
  std::vector<std::size_t> shape(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) shape[i] = g.axis(i).size;
  return shape;
}

// Multiply values by factor(k) along one axis, where k is the array index.
template <class Fn>
void scale_axis(Field& f, std::size_t axis, Fn&& factor) {
  const std::size_t n = f.grid.axis(axis).size;
  const std::size_t stride = f.grid.stride(axis);
  const std::size_t total = f.values.size();
  const std::size_t block = stride * n;
  for (std::size_t base = 0; base < total; base += block)
    for (std::size_t k = 0; k < n; ++k) {
      const double c = factor(k);
      std::complex<double>* p = f.values.data() + base + k * stride;
      for (std::size_t i = 0; i < stride; ++i) p[i] *= c;
    }
}

}  // namespace

void raw_fft_axis(std::vector<std::complex<double>>& data,
                  const std::vector<std::size_t>& shape, std::size_t axis,
                  int sign) {
  std::size_t n = 1;
  for (auto s : shape) n *= s;
  if (data.size() != n) throw argument_error("raw_fft_axis: shape mismatch");
  if (axis >= shape.size()) throw argument_error("raw_fft_axis: axis out of range");
  fftw_plan plan = PlanCache::instance().get(shape, axis, sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

void forward_axes(Field& f, const std::vector<std::size_t>& axes) {
  const auto shape = grid_shape(f.grid);
  for (std::size_t ax : axes) {
    if (ax >= f.grid.rank()) throw argument_error("forward_axes: axis out of range");
    if (f.spectral[ax]) throw argument_error("forward_axes: axis already spectral");
    raw_fft_axis(f.values, shape, ax, -1);
    // Lattice origin at -L/2: fhat_k = dz * (-1)^k * FFT_k (N even).
    const double dz = f.grid.axis(ax).spacing();
    scale_axis(f, ax, [dz](std::size_t k) { return (k & 1u) ? -dz : dz; });
    f.spectral[ax] = 1;
  }
}

void inverse_axes(Field& f, const std::vector<std::size_t>& axes) {
  const auto shape = grid_shape(f.grid);
  for (std::size_t ax : axes) {
    if (ax >= f.grid.rank()) throw argument_error("inverse_axes: axis out of range");
    if (!f.spectral[ax]) throw argument_error("inverse_axes: axis not spectral");
    // f_i = (1/L) * BFFT_i((-1)^k fhat_k).
    const double inv_l = 1.0 / f.grid.axis(ax).extent;
    scale_axis(f, ax, [inv_l](std::size_t k) { return (k & 1u) ? -inv_l : inv_l; });
    raw_fft_axis(f.values, shape, ax, +1);
    f.spectral[ax] = 0;
  }
}

Field spectral_copy(const Field& f) {
  Field out = f;
  std::vector<std::size_t> axes;
  for (std::size_t a = 0; a < out.grid.rank(); ++a)
    if (!out.spectral[a]) axes.push_back(a);
  forward_axes(out, axes);
  return out;
}

Field physical_copy(const Field& f) {
  Field out = f;
  std::vector<std::size_t> axes;
  for (std::size_t a = 0; a < out.grid.rank(); ++a)
    if (out.spectral[a]) axes.push_back(a);
  inverse_axes(out, axes);
  return out;
}

}  // namespace kinlab
