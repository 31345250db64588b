"""
Extremal sign functions
=======================

Each q in (-1, 1) gives n + 1 breakpoints on (0, 1/2) and an even step
function orthogonal to every trigonometric polynomial of degree < n.
Pairing it with the box gives a lower bound for E_n; the best q gives
the value itself.
"""

import numpy as np

from trigl1.extremal_signs import (lower_bound_via_duality, orthogonality_residual,
                                   pairing_value, sign_function)
from trigl1.l1_oracle import box_power_fit, box_power_problem, markov_certificate

n = 5
for q in (-0.8, 0.0, 0.6):
    g = sign_function(n, q)
    worst = max(abs(orthogonality_residual(g, k)) for k in range(n))
    print(f"q={q:+.1f}  breakpoints {np.round(g.breakpoints, 4)}  max moment {worst:.1e}")

# scan q at fixed h; the envelope is the dual bound
h = 0.29
qs = np.linspace(-0.95, 0.95, 9)
print()
print("  q      pairing")
for q in qs:
    print(f"{q:+.3f}  {pairing_value(sign_function(n, q), h):.6f}")

best = lower_bound_via_duality(n, h)
print(f"\nmaximised: {best.value:.8f} at q={best.q:.6f}")

# the oracle optimum carries the same sign structure
fit = box_power_fit(n, h, 1, 2048)
cert = markov_certificate(box_power_problem(n, h, 1, 2048), fit.tau, n)
print(f"oracle:    {fit.value:.8f}  sign moments <= {cert.excess():.1e}")
