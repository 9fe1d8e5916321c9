# SPDX-License-Identifier: Apache-2.0
#
# Generates oracle_burgers.hpp: normalization constants for the compact
# equilibrium profile  f(v) = C_theta [rho^{2 theta} - (v-u)^2]_+^{p},
# p = (1-theta)/(2 theta).  The defining integral is
#   I_theta = int_{-1}^{1} (1 - t^2)^p dt = sqrt(pi) Gamma(p+1)/Gamma(p+3/2)
# and C_theta = 1 / I_theta.  Computed with mpmath.
# Run from tests/oracles/:  python3 gen_burgers.py

import mpmath as mp

mp.mp.dps = 30

thetas = [mp.mpf(1), mp.mpf("0.9"), mp.mpf("0.75"), mp.mpf("0.6"),
          mp.mpf("0.5"), mp.mpf(1) / 3, mp.mpf("0.25")]

rows = []
for th in thetas:
    p = (1 - th) / (2 * th)
    gamma_form = mp.sqrt(mp.pi) * mp.gamma(p + 1) / mp.gamma(p + mp.mpf(3) / 2)
    quad_form = mp.quad(lambda t: mp.power(1 - t * t, p), [-1, 0, 1])
    assert abs(gamma_form - quad_form) < mp.mpf("1e-25") * gamma_form
    rows.append((th, p, 1 / gamma_form))

# Spot checks of the closed forms.
assert abs(rows[0][2] - mp.mpf(1) / 2) < mp.mpf("1e-25")        # theta = 1
assert abs(rows[4][2] - 2 / mp.pi) < mp.mpf("1e-25")            # theta = 1/2


def fmt(x):
    return mp.nstr(mp.mpf(x), 17, strip_zeros=False)


lines = []
lines.append("// GENERATED by tests/oracles/gen_burgers.py. DO NOT EDIT.")
lines.append("// mpmath (30 digits) normalization constants for the compact")
lines.append("// equilibrium profile with exponent p = (1-theta)/(2 theta).")
lines.append("#pragma once")
lines.append("")
lines.append("namespace oracle {")
lines.append("")
lines.append("struct IsentropicRow { double theta, p, c_theta; };")
lines.append("inline constexpr IsentropicRow kIsentropic[] = {")
for (th, p, c) in rows:
    lines.append("    {%s, %s, %s}," % (fmt(th), fmt(p), fmt(c)))
lines.append("};")
lines.append("")
lines.append("}  // namespace oracle")
lines.append("")

with open("oracle_burgers.hpp", "w") as fh:
    fh.write("\n".join(lines))
print("wrote oracle_burgers.hpp (%d rows)" % len(rows))
