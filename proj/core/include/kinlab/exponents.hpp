// SPDX-License-Identifier: Apache-2.0
//
// Exact-rational exponent calculus for kinetic averaging estimates:
// gain-of-regularity exponents, admissibility checks for rough transport
// coefficients, kernel decay rates, and time weights for the Cauchy problem.

#pragma once

#include <optional>

#include "kinlab/exact.hpp"

namespace kinlab {

// Parameters of the kinetic model
//   d_t f + v . grad_x f + u . grad_x f = (lambda D_t^alpha + D_x^alpha) D_v^beta g
// together with the bookkeeping indices used by the estimates.
struct KineticParams {
  ExtReal alpha;    // fractional order in t and x, in [0, 1]
  ExtReal beta;     // fractional order in v, >= 0
  int lambda = 1;   // 0 or 1: toggles the |tau|^alpha part of the source symbol
  int d = 1;        // spatial dimension, >= 1
  ExtReal k;        // velocity regularity index of f, >= 0
  ExtReal l;        // velocity derivative order granted to g, >= 0
  ExtReal R = 1;    // velocity support radius, >= 1
  ExtReal T = 1;    // time horizon, > 0
};

// Throws argument_error if any field is out of range.
void validate(const KineticParams& p);

// Which mixed norm the rough transport coefficient is measured in.
enum class NormPair { two_inf, inf_two };

// Regularity bookkeeping for a rough (non-Lipschitz) transport coefficient.
struct RoughTransportParams {
  ExtReal s;    // regularity gained, in (0, 1/2]
  ExtReal s0;   // coefficient regularity, in [s, 2s]
  ExtReal r;    // velocity weight order, in [0, 1/2)
  ExtReal r0;   // auxiliary weight order, in [0, 2r]
  NormPair pair = NormPair::two_inf;
};

// Throws argument_error if any field is out of range.
void validate(const RoughTransportParams& p);

// s = (1 - alpha) (1 + 2k) / (2 (1 + beta + 2k - l)).
// Requires 0 <= l <= beta (domain_error otherwise); the result lies in [0, 1/2].
ExtReal averaging_exponent_weighted(const ExtReal& alpha, const ExtReal& beta,
                                    const ExtReal& k, const ExtReal& l);

// s = (1 - alpha) k / (1 + beta + 2k - l).
// Requires 0 <= l <= 1 + beta (domain_error otherwise).
ExtReal averaging_exponent_plain(const ExtReal& alpha, const ExtReal& beta,
                                 const ExtReal& k, const ExtReal& l);

// Supremal averaging exponent with an L^p -> L^{p'} / L^q -> L^{q'}
// integrability trade, or std::nullopt when the trade leaves nothing:
//   (1-alpha) k / (1+beta+k)
//     + (1/p' - 1/p) (d + (alpha+beta+k)/(1+beta+k))
//     + (1/q' - 1/q)  d (1-alpha) / (1+beta+k).
// Requires p' >= p >= 1 and q' >= q >= 1 (argument_error otherwise).
std::optional<ExtReal> averaging_exponent_sup_lp(
    const ExtReal& alpha, const ExtReal& beta, const ExtReal& k, int d,
    const ExtReal& p, const ExtReal& q, const ExtReal& p_prime,
    const ExtReal& q_prime);

// True iff the (s, s0, r, r0) bookkeeping is admissible for the model:
//   r0 s + s0 r >= 2 r s,   0 <= l <= 1 - 2r + beta,
//   0 <= s <= (1-alpha)(k+r) / (1+beta+2k-l).
// Validates both parameter packs first.
bool rough_transport_admissible(const KineticParams& kp,
                                const RoughTransportParams& rp);

// Classical averaging exponent s = (1-alpha) / ((1+beta) p*), with p* the
// conjugate exponent of p. Requires p in (1, 2] (domain_error otherwise).
ExtReal classical_average_exponent(const ExtReal& alpha, const ExtReal& beta,
                                   const ExtReal& p);

// Order sigma = (alpha + beta + k) / (1 - alpha) of the hypoelliptic scaling
// associated with the model. Requires alpha < 1 (domain_error at alpha = 1);
// satisfies (1 + sigma) alpha + beta - sigma + k = 0 identically.
ExtReal kolmogorov_order(const ExtReal& alpha, const ExtReal& beta,
                         const ExtReal& k);

// Decay exponent of the transport kernel in mixed Lebesgue norms:
//   kappa = (d - d/p0)(1 + 1/sigma) + (d - d/q0)/sigma.
// Requires d >= 1, sigma > 0, p0 >= 1, q0 >= 1.
ExtReal kernel_decay_exponent(int d, const ExtReal& sigma, const ExtReal& p0,
                              const ExtReal& q0);

// Time weights for the fixed-point estimate of the Cauchy problem.
struct TimeWeights {
  ExtReal omega;        // weight on the source term
  ExtReal omega_prime;  // weight on the commutator term
};

// omega  = sigma/p' - (1+sigma) s - d (1+sigma)(1/p - 1/p') - d (1/q - 1/q'),
// omega' = k - (1+sigma) s - (sigma + d (1+sigma))(1/p - 1/p') - d (1/q - 1/q'),
// with sigma = kolmogorov_order(alpha, beta, k). Returns std::nullopt when
// either weight is <= 0 (no contraction). Requires alpha < 1, s >= 0,
// p' >= p >= 1, q' >= q >= 1.
std::optional<TimeWeights> cauchy_time_weights(
    const ExtReal& alpha, const ExtReal& beta, const ExtReal& k, int d,
    const ExtReal& s, const ExtReal& p, const ExtReal& q,
    const ExtReal& p_prime, const ExtReal& q_prime);

// Supremal regularity for advection by a C^{s0} coefficient at scaling order
// sigma:
//   sigma <= 1/2 : min{ sigma/(1+2 sigma), s0 sigma / ((1-sigma)(1+2 sigma)) }
//   sigma >  1/2 : min{ sigma/(1+2 sigma), s0 min{1, sigma} }.
// Requires sigma > 0 and s0 > 0 (argument_error otherwise).
ExtReal rough_advection_s_sup(const ExtReal& sigma, const ExtReal& s0);

}  // namespace kinlab
