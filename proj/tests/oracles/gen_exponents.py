# SPDX-License-Identifier: Apache-2.0
#
# Generates oracle_exponents.hpp: exact-rational reference values for the
# exponent calculus, computed independently with Python fractions.
# Run from tests/oracles/:  python3 gen_exponents.py

from fractions import Fraction as F


def weighted(alpha, beta, k, l):
    # s = (1 - alpha)(1 + 2k) / (2 (1 + beta + 2k - l)), requires 0 <= l <= beta
    assert 0 <= l <= beta
    return (1 - alpha) * (1 + 2 * k) / (2 * (1 + beta + 2 * k - l))


def plain(alpha, beta, k, l):
    # s = (1 - alpha) k / (1 + beta + 2k - l), requires 0 <= l <= 1 + beta
    assert 0 <= l <= 1 + beta
    return (1 - alpha) * k / (1 + beta + 2 * k - l)


def sup_lp(alpha, beta, k, d, p, pp, q, qp):
    # base plus integrability trade-offs (1/p' - 1/p <= 0 for p' >= p);
    # exponents may be "inf" -> 1/inf = 0. Negative totals mean "infeasible".
    def inv(x):
        return 0 if x == "inf" else F(1, 1) / x

    base = (1 - alpha) * k / (1 + beta + k)
    s = base
    s += (inv(pp) - inv(p)) * (d + (alpha + beta + k) / (1 + beta + k))
    s += (inv(qp) - inv(q)) * d * (1 - alpha) / (1 + beta + k)
    return s


def kolmogorov_order(alpha, beta, k):
    assert alpha != 1
    return (alpha + beta + k) / (1 - alpha)


def kernel_decay(d, sigma, p0, q0):
    def inv(x):
        return 0 if x == "inf" else F(1, 1) / x

    return (d - d * inv(p0)) * (1 + F(1, 1) / sigma) + (d - d * inv(q0)) / sigma


def cauchy_time_weights(alpha, beta, k, d, s, p, q, pp, qp):
    def inv(x):
        return 0 if x == "inf" else F(1, 1) / x

    sigma = kolmogorov_order(alpha, beta, k)
    omega = sigma * inv(pp) - (1 + sigma) * s - d * (1 + sigma) * (inv(p) - inv(pp)) \
        - d * (inv(q) - inv(qp))
    omega_p = k - (1 + sigma) * s - (sigma + d * (1 + sigma)) * (inv(p) - inv(pp)) \
        - d * (inv(q) - inv(qp))
    return omega, omega_p


def rough_advection_s_sup(sigma, s0):
    assert sigma > 0 and s0 > 0
    cap = sigma / (1 + 2 * sigma)
    if sigma <= F(1, 2):
        other = s0 * sigma / ((1 - sigma) * (1 + 2 * sigma))
    else:
        other = s0 * min(F(1, 1), sigma)
    return min(cap, other)


def cpp_frac(x):
    if x == "inf":
        return "INF"
    f = F(x)
    return "%d.0 / %d.0" % (f.numerator, f.denominator)


rows_weighted = []
for (a, b, k, l) in [
    (F(0), F(2), F(1, 2), F(0)),
    (F(0), F(0), F(0), F(0)),
    (F(1, 2), F(1), F(1), F(1)),
    (F(1, 4), F(3, 2), F(2), F(1, 2)),
    (F(1), F(1), F(1), F(0)),
    (F(1, 3), F(1, 3), F(1, 3), F(1, 3)),
    (F(9, 10), F(3), F(5), F(2)),
]:
    rows_weighted.append((a, b, k, l, weighted(a, b, k, l)))

rows_plain = []
for (a, b, k, l) in [
    (F(0), F(0), F(1), F(0)),
    (F(0), F(1), F(1, 2), F(3, 2)),
    (F(1, 2), F(0), F(2), F(1)),
    (F(1), F(2), F(3), F(0)),
    (F(1, 4), F(1, 2), F(3, 4), F(5, 4)),
    (F(2, 5), F(7, 5), F(12, 5), F(1, 5)),
]:
    rows_plain.append((a, b, k, l, plain(a, b, k, l)))

rows_sup = []
for (a, b, k, d, p, pp, q, qp) in [
    (F(0), F(0), F(1), 1, F(2), F(2), F(2), F(2)),       # equality case
    (F(0), F(0), F(1), 1, F(1), "inf", F(1), "inf"),      # large gaps: infeasible
    (F(1, 2), F(1), F(2), 2, F(2), F(4), F(2), F(2)),     # infeasible
    (F(1, 2), F(1), F(2), 2, F(2), F(12, 5), F(2), F(2)),  # marginal, feasible
    (F(0), F(1), F(1), 1, F(2), F(2), F(2), F(4)),        # q-gap only
    (F(1, 4), F(1, 2), F(1), 1, F(3, 2), F(3), F(2), F(4)),
]:
    s = sup_lp(a, b, k, d, p, pp, q, qp)
    rows_sup.append((a, b, k, d, p, pp, q, qp, s, s > 0))

rows_kol = []
for (a, b, k) in [
    (F(0), F(0), F(1)),
    (F(1, 2), F(1), F(2)),
    (F(1, 3), F(2, 3), F(1, 3)),
    (F(3, 4), F(0), F(1, 2)),
]:
    rows_kol.append((a, b, k, kolmogorov_order(a, b, k)))

rows_decay = []
for (d, sg, p0, q0) in [
    (1, F(2), "inf", "inf"),
    (1, F(2), F(2), F(2)),
    (2, F(1), F(1), F(1)),
    (1, F(1, 2), "inf", F(2)),
    (3, F(3), F(2), "inf"),
]:
    rows_decay.append((d, sg, p0, q0, kernel_decay(d, sg, p0, q0)))

rows_tw = []
for (a, b, k, d, s, p, q, pp, qp) in [
    (F(0), F(0), F(1), 1, F(1, 5), F(2), F(2), F(2), F(2)),    # (0.1, 0.6)
    (F(0), F(0), F(1), 1, F(1, 4), F(2), F(2), F(2), F(2)),    # infeasible
    (F(0), F(0), F(1), 1, F(0), F(2), F(2), F(2), F(2)),       # (sigma/p', k)
    (F(0), F(0), F(1), 1, F(1, 20), F(2), F(2), F(5, 2), F(2)),  # p-gap
    (F(1, 2), F(1), F(1), 1, F(1, 20), F(2), F(2), F(2), F(2)),  # sigma = 5
]:
    om, omp = cauchy_time_weights(a, b, k, d, s, p, q, pp, qp)
    rows_tw.append((a, b, k, d, s, p, q, pp, qp, om, omp, om > 0 and omp > 0))

rows_adv = []
for (sg, s0) in [
    (F(1), F(1, 3)),
    (F(1), F(1)),
    (F(1, 2), F(1)),
    (F(1, 4), F(1, 2)),
    (F(3), F(1, 10)),
    (F(2), F(1, 8)),
]:
    rows_adv.append((sg, s0, rough_advection_s_sup(sg, s0)))

# Burgers chain instance: eps = 1/20
eps = F(1, 20)
alpha_b = eps * eps
beta_b = 1 + eps * eps
k_b = F(1, 2) - eps
r_b = F(1, 2) - eps
r0_b = F(1, 2) - F(5, 2) * eps
s0_b = F(1, 3)
s_b = s0_b - eps
denom_true = 1 + beta_b + 2 * k_b - 0  # l = 0
cap_true = (1 - alpha_b) * (k_b + r_b) / denom_true
quoted = (1 - eps * eps) * (1 - 2 * eps) / (3 + eps * eps + 2 * eps)
adm_lhs = r0_b * s_b + s0_b * r_b
adm_rhs = 2 * r_b * s_b

lines = []
lines.append("// GENERATED by tests/oracles/gen_exponents.py. DO NOT EDIT.")
lines.append("// Exact-rational reference values for the exponent calculus.")
lines.append("#pragma once")
lines.append("")
lines.append("#include <limits>")
lines.append("")
lines.append("namespace oracle {")
lines.append("")
lines.append("inline constexpr double INF = std::numeric_limits<double>::infinity();")
lines.append("")
lines.append("struct WeightedRow { double alpha, beta, k, l, s; };")
lines.append("inline constexpr WeightedRow kWeighted[] = {")
for r in rows_weighted:
    lines.append("    {%s}," % ", ".join(cpp_frac(x) for x in r))
lines.append("};")
lines.append("")
lines.append("struct PlainRow { double alpha, beta, k, l, s; };")
lines.append("inline constexpr PlainRow kPlain[] = {")
for r in rows_plain:
    lines.append("    {%s}," % ", ".join(cpp_frac(x) for x in r))
lines.append("};")
lines.append("")
lines.append("struct SupRow { double alpha, beta, k; int d; double p, pp, q, qp, s; bool feasible; };")
lines.append("inline constexpr SupRow kSup[] = {")
for r in rows_sup:
    a, b, k, d, p, pp, q, qp, s, ok = r
    lines.append("    {%s, %s, %s, %d, %s, %s, %s, %s, %s, %s}," % (
        cpp_frac(a), cpp_frac(b), cpp_frac(k), d, cpp_frac(p), cpp_frac(pp),
        cpp_frac(q), cpp_frac(qp), cpp_frac(s), "true" if ok else "false"))
lines.append("};")
lines.append("")
lines.append("struct KolRow { double alpha, beta, k, sigma; };")
lines.append("inline constexpr KolRow kKolmogorov[] = {")
for r in rows_kol:
    lines.append("    {%s}," % ", ".join(cpp_frac(x) for x in r))
lines.append("};")
lines.append("")
lines.append("struct DecayRow { int d; double sigma, p0, q0, kappa; };")
lines.append("inline constexpr DecayRow kDecay[] = {")
for r in rows_decay:
    d, sg, p0, q0, kp = r
    lines.append("    {%d, %s, %s, %s, %s}," % (
        d, cpp_frac(sg), cpp_frac(p0), cpp_frac(q0), cpp_frac(kp)))
lines.append("};")
lines.append("")
lines.append("struct TimeWeightRow {")
lines.append("  double alpha, beta, k; int d;")
lines.append("  double s, p, q, pp, qp, omega, omega_prime;")
lines.append("  bool feasible;")
lines.append("};")
lines.append("inline constexpr TimeWeightRow kTimeWeights[] = {")
for r in rows_tw:
    a, b, k, d, s, p, q, pp, qp, om, omp, ok = r
    lines.append("    {%s, %s, %s, %d, %s, %s, %s, %s, %s, %s, %s, %s}," % (
        cpp_frac(a), cpp_frac(b), cpp_frac(k), d, cpp_frac(s), cpp_frac(p),
        cpp_frac(q), cpp_frac(pp), cpp_frac(qp), cpp_frac(om), cpp_frac(omp),
        "true" if ok else "false"))
lines.append("};")
lines.append("")
lines.append("struct AdvectionRow { double sigma, s0, s_sup; };")
lines.append("inline constexpr AdvectionRow kAdvection[] = {")
for r in rows_adv:
    lines.append("    {%s}," % ", ".join(cpp_frac(x) for x in r))
lines.append("};")
lines.append("")
lines.append("// Rough-transport chain instance (eps = 1/20).")
lines.append("inline constexpr double kChainEps = %s;" % cpp_frac(eps))
lines.append("inline constexpr double kChainAlpha = %s;" % cpp_frac(alpha_b))
lines.append("inline constexpr double kChainBeta = %s;" % cpp_frac(beta_b))
lines.append("inline constexpr double kChainK = %s;" % cpp_frac(k_b))
lines.append("inline constexpr double kChainR = %s;" % cpp_frac(r_b))
lines.append("inline constexpr double kChainR0 = %s;" % cpp_frac(r0_b))
lines.append("inline constexpr double kChainS0 = %s;" % cpp_frac(s0_b))
lines.append("inline constexpr double kChainS = %s;" % cpp_frac(s_b))
lines.append("inline constexpr double kChainCap = %s;" % cpp_frac(cap_true))
lines.append("inline constexpr double kChainQuoted = %s;" % cpp_frac(quoted))
lines.append("inline constexpr double kChainAdmLhs = %s;" % cpp_frac(adm_lhs))
lines.append("inline constexpr double kChainAdmRhs = %s;" % cpp_frac(adm_rhs))
lines.append("")
lines.append("}  // namespace oracle")
lines.append("")

with open("oracle_exponents.hpp", "w") as fh:
    fh.write("\n".join(lines))
print("wrote oracle_exponents.hpp (%d rows)" % (
    len(rows_weighted) + len(rows_plain) + len(rows_sup) + len(rows_kol)
    + len(rows_decay) + len(rows_tw) + len(rows_adv)))
