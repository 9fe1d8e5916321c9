// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the unit tests: grid builders, random fields, and
// field comparisons.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "kinlab/fft.hpp"
#include "kinlab/grid.hpp"
#include "kinlab/rng.hpp"
#include "kinlab/spectral.hpp"

namespace testutil {

inline constexpr double kTwoPi = 6.283185307179586476925287;

inline kinlab::PhaseGrid grid_x(std::size_t nx, double lx = kTwoPi) {
  return kinlab::PhaseGrid({{kinlab::AxisLabel::x, nx, lx}});
}

inline kinlab::PhaseGrid grid_xv(std::size_t nx, std::size_t nv,
                                 double lx = kTwoPi, double lv = kTwoPi) {
  return kinlab::PhaseGrid(
      {{kinlab::AxisLabel::x, nx, lx}, {kinlab::AxisLabel::v, nv, lv}});
}

inline kinlab::PhaseGrid grid_txv(std::size_t nt, std::size_t nx,
                                  std::size_t nv, double lt = kTwoPi,
                                  double lx = kTwoPi, double lv = kTwoPi) {
  return kinlab::PhaseGrid({{kinlab::AxisLabel::t, nt, lt},
                            {kinlab::AxisLabel::x, nx, lx},
                            {kinlab::AxisLabel::v, nv, lv}});
}

// Physical field with iid complex normal entries.
inline kinlab::Field random_field(const kinlab::PhaseGrid& g,
                                  std::uint64_t seed,
                                  std::uint64_t stream = 0) {
  kinlab::CounterRng rng(seed, stream);
  kinlab::Field f(g);
  for (auto& z : f.values) z = {rng.normal(), rng.normal()};
  return f;
}

// Physical real field with iid normal entries.
inline kinlab::Field random_real_field(const kinlab::PhaseGrid& g,
                                       std::uint64_t seed,
                                       std::uint64_t stream = 0) {
  kinlab::CounterRng rng(seed, stream);
  kinlab::Field f(g);
  for (auto& z : f.values) z = {rng.normal(), 0.0};
  return f;
}

inline double max_abs(const kinlab::Field& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z));
  return m;
}

inline double max_abs_diff(const kinlab::Field& a, const kinlab::Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

inline double max_imag(const kinlab::Field& f) {
  double m = 0.0;
  for (const auto& z : f.values) m = std::max(m, std::abs(z.imag()));
  return m;
}

// Fills a fully spectral field from a radial spectral amplitude profile with
// random phases, then symmetrizes and returns the physical (real) field.
template <class Amp>
inline kinlab::Field field_from_spectrum(const kinlab::PhaseGrid& g, Amp amp,
                                         std::uint64_t seed) {
  kinlab::CounterRng rng(seed, 0xf1e1d5ULL);
  kinlab::Field fhat(g, true);
  const std::size_t rank = g.rank();
  for (std::size_t idx = 0; idx < fhat.values.size(); ++idx) {
    std::vector<double> freqs(rank);
    std::size_t rem = idx;
    for (std::size_t a = 0; a < rank; ++a) {
      const std::size_t stride = g.stride(a);
      const std::size_t k = rem / stride;
      rem %= stride;
      freqs[a] = g.freq(a, k);
    }
    const double magnitude = amp(freqs);
    const auto phase = rng.unit_phase();
    fhat.values[idx] = magnitude * phase;
  }
  kinlab::hermitian_symmetrize(fhat);
  kinlab::Field f = kinlab::physical_copy(fhat);
  for (auto& z : f.values) z = {z.real(), 0.0};
  return f;
}

}  // namespace testutil
