# SPDX-License-Identifier: Apache-2.0
#
# Generates oracle_quadrature.hpp: Gauss-Legendre nodes and weights on
# [-1, 1] for n = 16 and n = 32, computed with mpmath at 30 digits
# (Newton refinement of Chebyshev initial guesses on the Legendre
# polynomial).
# Run from tests/oracles/:  python3 gen_quadrature.py

import mpmath as mp

mp.mp.dps = 30


def gauss_legendre(n):
    nodes, weights = [], []
    for i in range(n):
        # Chebyshev-like initial guess, refined by Newton on P_n.
        x = mp.cos(mp.pi * (i + mp.mpf(3) / 4) / (n + mp.mpf(1) / 2))
        for _ in range(60):
            p = mp.legendre(n, x)
            dp = n * (x * mp.legendre(n, x) - mp.legendre(n - 1, x)) / (x * x - 1)
            step = p / dp
            x -= step
            if abs(step) < mp.mpf("1e-28"):
                break
        dp = n * (x * mp.legendre(n, x) - mp.legendre(n - 1, x)) / (x * x - 1)
        nodes.append(x)
        weights.append(2 / ((1 - x * x) * dp * dp))
    order = sorted(range(n), key=lambda j: nodes[j])
    return [nodes[j] for j in order], [weights[j] for j in order]


def fmt(x):
    return mp.nstr(mp.mpf(x), 17, strip_zeros=False)


lines = []
lines.append("// GENERATED by tests/oracles/gen_quadrature.py. DO NOT EDIT.")
lines.append("// mpmath (30 digits) Gauss-Legendre nodes/weights on [-1, 1].")
lines.append("#pragma once")
lines.append("")
lines.append("#include <cstddef>")
lines.append("")
lines.append("namespace oracle {")
lines.append("")
for n in (16, 32):
    xs, ws = gauss_legendre(n)
    assert abs(sum(ws) - 2) < mp.mpf("1e-27")
    # Exactness on t^{2n-2}, the highest even monomial integrated exactly.
    mono = sum(w * x ** (2 * n - 2) for x, w in zip(xs, ws))
    assert abs(mono - mp.mpf(2) / (2 * n - 1)) < mp.mpf("1e-26")
    lines.append("inline constexpr std::size_t kGaussN%d = %d;" % (n, n))
    lines.append("inline constexpr double kGaussNodes%d[] = {" % n)
    for x in xs:
        lines.append("    %s," % fmt(x))
    lines.append("};")
    lines.append("inline constexpr double kGaussWeights%d[] = {" % n)
    for w in ws:
        lines.append("    %s," % fmt(w))
    lines.append("};")
    lines.append("")
lines.append("}  // namespace oracle")
lines.append("")

with open("oracle_quadrature.hpp", "w") as fh:
    fh.write("\n".join(lines))
print("wrote oracle_quadrature.hpp (n=16, n=32)")
