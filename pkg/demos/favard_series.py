"""
Convolution powers and the Favard constants
===========================================

At h = 1/(2n) the best L1 error of the j-fold self-convolution of the box
is the Favard constant F_j, whatever n is.  Summing them gives
sec(1) + tan(1), the constant in a Jackson type estimate.
"""

from trigl1.closed_forms import favard_F, sec_plus_tan_one
from trigl1.inequalities import extrapolation_series, function_set, jackson_tau_N
from trigl1.l1_oracle import en_chi_oracle

print(" j   F_j             oracle n=2   oracle n=4")
for j in range(1, 6):
    print(f"{j:2d}   {favard_F(j):.12f}  {en_chi_oracle(2, 1 / 4, j):.8f}   "
          f"{en_chi_oracle(4, 1 / 8, j):.8f}")

series = extrapolation_series(4, 1 / 8, 40)
print(f"\nsum of F_j, j <= 40: {series.partial_sum:.12f}")
print(f"sec(1) + tan(1):     {sec_plus_tan_one():.12f}")

# The truncated construction: error against its guaranteed bound.
n = 4
f = function_set(11, n, trials=1, span=2)[0]
for N in (1, 2, 4, 6):
    t = jackson_tau_N(f, n, 1 / (2 * n), N, 2048)
    print(f"N={N}  ||f - tau|| = {t.error:.5f}   bound {t.bound:.5f}")
