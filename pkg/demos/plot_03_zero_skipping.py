"""
Why zeros must break a jump into cycles
=======================================

A permutation that runs through a zero entry is not a cycle of the arc
graph. Skipping the zero and averaging what is left can report a value
no cycle achieves.
"""

import numpy as np

from maxeig.jumps import enumerate_jumps
from maxeig.spectral import mu_jump, mu_karp

A = np.array([[0.0, 9.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]])

for jump in enumerate_jumps(A):
    print(jump.sigma, "p =", jump.p, "s =", jump.s, "p^(1/s) =", round(jump.literal_mean, 4),
          "cycle products:", jump.cycle_products())

# the largest p^(1/s) above is 9, from a jump using a12 = 9 alone
print("jump scan:", mu_jump(A).mu, " Karp:", mu_karp(A).mu)
