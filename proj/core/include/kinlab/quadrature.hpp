// SPDX-License-Identifier: Apache-2.0
//
// Gauss-Legendre quadrature rules on [-1,1], computed once per order by
// Newton iteration on the Legendre polynomials and cached.

#ifndef KINLAB_QUADRATURE_HPP
#define KINLAB_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "kinlab/errors.hpp"

namespace kinlab {

struct QuadratureRule {
  std::vector<double> nodes;    // ascending in (-1,1)
  std::vector<double> weights;  // positive, summing to 2
};

namespace detail {

inline QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess for the i-th root (descending order).
    double x = std::cos(3.14159265358979323846 * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double pj = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = pj;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Re-evaluate the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double pj = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = pj;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] =
        2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace detail

// Cached n-point Gauss-Legendre rule on [-1,1].
inline const QuadratureRule& gauss_legendre(int n) {
  if (n < 1 || n > 512) throw argument_error("gauss_legendre: order out of range");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_legendre(n)).first;
  return it->second;
}

// Integrate fn over [a,b] with an n-point rule.
template <class Fn>
double integrate_gl(Fn&& fn, double a, double b, int n) {
  if (!(b >= a)) throw argument_error("integrate_gl: inverted interval");
  if (b == a) return 0.0;
  const QuadratureRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace kinlab

#endif  // KINLAB_QUADRATURE_HPP
