// SPDX-License-Identifier: Apache-2.0
//
// Counter-based deterministic random generator. Each (seed, stream) pair
// names an independent stream whose i-th draw depends only on (seed, stream,
// i), so concurrent trials cannot perturb each other's values and repeated
// runs are bit-identical on every platform.

#ifndef KINLAB_RNG_HPP
#define KINLAB_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace kinlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(splitmix64(splitmix64(seed) ^
                         (0x9E3779B97F4A7C15ULL * (stream + 0x632BE59BD9B4E019ULL)))) {}

  std::uint64_t next_u64() {
    return splitmix64(base_ + 0x9E3779B97F4A7C15ULL * counter_++);
  }

  // Uniform in [0,1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0,1]; never zero, safe under log.
  double uniform01_open0() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Standard normal via the Box-Muller map; consumes exactly two draws so the
  // counter advance is call-count deterministic.
  double normal() {
    const double u1 = uniform01_open0();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  std::complex<double> unit_phase() {
    const double theta = 6.283185307179586476925287 * uniform01();
    return {std::cos(theta), std::sin(theta)};
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace kinlab

#endif  // KINLAB_RNG_HPP
