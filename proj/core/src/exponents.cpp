// SPDX-License-Identifier: Apache-2.0

#include "kinlab/exponents.hpp"

#include <string>

#include "kinlab/errors.hpp"

namespace kinlab {

namespace {

const ExtReal kZero(0);
const ExtReal kOne(1);

void check_order_range(const ExtReal& alpha, const ExtReal& beta,
                       const ExtReal& k) {
  if (alpha < kZero || alpha > kOne)
    throw argument_error("alpha must lie in [0, 1]");
  if (beta < kZero) throw argument_error("beta must be >= 0");
  if (k < kZero) throw argument_error("k must be >= 0");
}

void check_exponent_pair(const ExtReal& p, const ExtReal& p_prime,
                         const char* name) {
  if (p < kOne)
    throw argument_error(std::string(name) + " must be >= 1");
  if (p_prime < p)
    throw argument_error(std::string(name) +
                         "' must dominate the base exponent");
}

}  // namespace

void validate(const KineticParams& p) {
  if (p.alpha < kZero || p.alpha > kOne)
    throw argument_error("KineticParams: alpha must lie in [0, 1]");
  if (p.beta < kZero) throw argument_error("KineticParams: beta must be >= 0");
  if (p.lambda != 0 && p.lambda != 1)
    throw argument_error("KineticParams: lambda must be 0 or 1");
  if (p.d < 1) throw argument_error("KineticParams: d must be >= 1");
  if (p.k < kZero) throw argument_error("KineticParams: k must be >= 0");
  if (p.l < kZero) throw argument_error("KineticParams: l must be >= 0");
  if (p.R < kOne) throw argument_error("KineticParams: R must be >= 1");
  if (!(p.T > kZero)) throw argument_error("KineticParams: T must be > 0");
}

void validate(const RoughTransportParams& p) {
  if (!(p.s > kZero) || p.s > ExtReal::ratio(1, 2))
    throw argument_error("RoughTransportParams: s must lie in (0, 1/2]");
  if (p.s0 < p.s || p.s0 > 2 * p.s)
    throw argument_error("RoughTransportParams: s0 must lie in [s, 2s]");
  if (p.r < kZero || !(p.r < ExtReal::ratio(1, 2)))
    throw argument_error("RoughTransportParams: r must lie in [0, 1/2)");
  if (p.r0 < kZero || p.r0 > 2 * p.r)
    throw argument_error("RoughTransportParams: r0 must lie in [0, 2r]");
}

ExtReal averaging_exponent_weighted(const ExtReal& alpha, const ExtReal& beta,
                                    const ExtReal& k, const ExtReal& l) {
  check_order_range(alpha, beta, k);
  if (l < kZero || l > beta)
    throw domain_error("averaging_exponent_weighted: requires 0 <= l <= beta");
  return (kOne - alpha) * (kOne + 2 * k) / (2 * (kOne + beta + 2 * k - l));
}

ExtReal averaging_exponent_plain(const ExtReal& alpha, const ExtReal& beta,
                                 const ExtReal& k, const ExtReal& l) {
  check_order_range(alpha, beta, k);
  if (l < kZero || l > kOne + beta)
    throw domain_error("averaging_exponent_plain: requires 0 <= l <= 1 + beta");
  return (kOne - alpha) * k / (kOne + beta + 2 * k - l);
}

std::optional<ExtReal> averaging_exponent_sup_lp(
    const ExtReal& alpha, const ExtReal& beta, const ExtReal& k, int d,
    const ExtReal& p, const ExtReal& q, const ExtReal& p_prime,
    const ExtReal& q_prime) {
  check_order_range(alpha, beta, k);
  if (d < 1) throw argument_error("averaging_exponent_sup_lp: d must be >= 1");
  check_exponent_pair(p, p_prime, "p");
  check_exponent_pair(q, q_prime, "q");
  const ExtReal denom = kOne + beta + k;
  const ExtReal base = (kOne - alpha) * k / denom;
  const ExtReal p_trade =
      (kOne / p_prime - kOne / p) * (ExtReal(d) + (alpha + beta + k) / denom);
  const ExtReal q_trade =
      (kOne / q_prime - kOne / q) * ExtReal(d) * (kOne - alpha) / denom;
  const ExtReal sup = base + p_trade + q_trade;
  if (!(sup > kZero)) return std::nullopt;
  return sup;
}

bool rough_transport_admissible(const KineticParams& kp,
                                const RoughTransportParams& rp) {
  validate(kp);
  validate(rp);
  if (rp.r0 * rp.s + rp.s0 * rp.r < 2 * rp.r * rp.s) return false;
  if (kp.l > kOne - 2 * rp.r + kp.beta) return false;
  const ExtReal denom = kOne + kp.beta + 2 * kp.k - kp.l;
  if (!(denom > kZero)) return false;
  const ExtReal cap = (kOne - kp.alpha) * (kp.k + rp.r) / denom;
  return !(rp.s > cap);
}

ExtReal classical_average_exponent(const ExtReal& alpha, const ExtReal& beta,
                                   const ExtReal& p) {
  check_order_range(alpha, beta, kZero);
  if (!(p > kOne) || p > ExtReal(2))
    throw domain_error("classical_average_exponent: requires p in (1, 2]");
  return (kOne - alpha) / ((kOne + beta) * conjugate_exponent(p));
}

ExtReal kolmogorov_order(const ExtReal& alpha, const ExtReal& beta,
                         const ExtReal& k) {
  check_order_range(alpha, beta, k);
  if (alpha == kOne)
    throw domain_error("kolmogorov_order: undefined at alpha = 1");
  return (alpha + beta + k) / (kOne - alpha);
}

ExtReal kernel_decay_exponent(int d, const ExtReal& sigma, const ExtReal& p0,
                              const ExtReal& q0) {
  if (d < 1) throw argument_error("kernel_decay_exponent: d must be >= 1");
  if (!(sigma > kZero))
    throw argument_error("kernel_decay_exponent: sigma must be > 0");
  if (p0 < kOne || q0 < kOne)
    throw argument_error("kernel_decay_exponent: exponents must be >= 1");
  const ExtReal dd(d);
  return (dd - dd / p0) * (kOne + kOne / sigma) + (dd - dd / q0) / sigma;
}

std::optional<TimeWeights> cauchy_time_weights(
    const ExtReal& alpha, const ExtReal& beta, const ExtReal& k, int d,
    const ExtReal& s, const ExtReal& p, const ExtReal& q,
    const ExtReal& p_prime, const ExtReal& q_prime) {
  check_order_range(alpha, beta, k);
  if (alpha == kOne)
    throw domain_error("cauchy_time_weights: requires alpha < 1");
  if (d < 1) throw argument_error("cauchy_time_weights: d must be >= 1");
  if (s < kZero) throw argument_error("cauchy_time_weights: s must be >= 0");
  check_exponent_pair(p, p_prime, "p");
  check_exponent_pair(q, q_prime, "q");
  const ExtReal sigma = kolmogorov_order(alpha, beta, k);
  const ExtReal dd(d);
  const ExtReal p_gap = kOne / p - kOne / p_prime;
  const ExtReal q_gap = kOne / q - kOne / q_prime;
  const ExtReal omega =
      sigma / p_prime - (kOne + sigma) * s - dd * (kOne + sigma) * p_gap -
      dd * q_gap;
  const ExtReal omega_prime =
      k - (kOne + sigma) * s - (sigma + dd * (kOne + sigma)) * p_gap -
      dd * q_gap;
  if (!(omega > kZero) || !(omega_prime > kZero)) return std::nullopt;
  return TimeWeights{omega, omega_prime};
}

ExtReal rough_advection_s_sup(const ExtReal& sigma, const ExtReal& s0) {
  if (!(sigma > kZero))
    throw argument_error("rough_advection_s_sup: sigma must be > 0");
  if (!(s0 > kZero))
    throw argument_error("rough_advection_s_sup: s0 must be > 0");
  const ExtReal shared = sigma / (kOne + 2 * sigma);
  if (!(sigma > ExtReal::ratio(1, 2))) {
    const ExtReal rough = s0 * sigma / ((kOne - sigma) * (kOne + 2 * sigma));
    return min(shared, rough);
  }
  return min(shared, s0 * min(kOne, sigma));
}

}  // namespace kinlab
