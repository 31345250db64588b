"""
Higher smoothness
=================

The kernel U combines dilated copies of chi_h^2 with binomial weights so
that f - U*f averages the symmetric 2k-th difference of f.  Its powers
feed the same kind of series as the box did.
"""

import numpy as np

from trigl1.inequalities import function_set
from trigl1.l1_oracle import function_fit
from trigl1.stechkin import (StechkinKernel, gamma_star, stechkin_inequality_check,
                             stechkin_series, u_fourier, w2k_poly, w2k_value)

n = 4
for k in (1, 2, 3):
    kern = StechkinKernel(k, 1 / (2 * n))
    print(f"k={k}  a={np.round(kern.a, 4)}  U^(0)={u_fourier(kern, 0):.3f}  "
          f"U^(n)={u_fourier(kern, n):+.4f}")

# W_{2k} two ways: quadrature of the difference, and the multiplier 1 - U^
f = function_set(3, n, trials=1)[0]
kern = StechkinKernel(2, 0.1)
x = np.linspace(0, 1, 5, endpoint=False)
print("\nquadrature ", np.round(w2k_value(f, kern, x), 10))
print("multiplier ", np.round(w2k_poly(f, kern)(x), 10))

for k in (1, 2):
    s = stechkin_series(n, StechkinKernel(k, 1 / (2 * n)), 10, 2048)
    print(f"\nk={k}  terms {np.round(s.terms[:5], 5)} ...  partial sum {s.partial_sum:.5f}")

funcs = function_set(0, n, trials=20)
values = [function_fit(g, n, 1024).value for g in funcs]
for k in (1, 2):
    rep = stechkin_inequality_check(n, k, funcs, values=values)
    print(f"gamma*_{2 * k} = {gamma_star(2 * k)}  worst ratio {rep.worst:.3f}  holds {rep.passed}")
