"""
How well can T_{2n-1} approximate a box in L1?
===============================================

The periodised box chi~_h has height 1/h on (-h/2, h/2).  We tabulate
c(h, n) = E_n(chi~_h)_1 for n = 8 across h and compare with the LP oracle.
"""

import numpy as np

from trigl1.closed_forms import en_chi, theoremC_limit, upper_bound
from trigl1.l1_oracle import en_chi_oracle

n = 8

# Narrow boxes cannot be approximated at all: c = 1 up to h = 1/(2n).
for h in (0.02, 0.05, 1 / 16):
    print(f"h={h:.4f}  E={en_chi(n, h).value:.6f}")

# Between the flat part and h = 1 the value sits under min(1, 1/(2nh)),
# touching it at the odd multiples of 1/(2n).
print()
print("   h      E        ceiling   method       oracle")
for h in np.linspace(0.07, 1.0, 12):
    r = en_chi(n, h)
    print(f"{h:.3f}  {r.value:.6f}  {upper_bound(n, h):.6f}  {r.method:<11}  "
          f"{en_chi_oracle(n, h, m=2048):.6f}")

# At h = 1/n the constants decrease towards 1 - 2 v0.
print()
for k in (4, 8, 16, 32, 64):
    print(f"n={k:3d}  E_n(chi~_(1/n)) = {en_chi(k, 1 / k).value:.10f}")
print(f"limit        {theoremC_limit():.10f}")
