"""
Three routes to the max eigenvalue
==================================

The max eigenvalue ``mu`` is the largest geometric mean of a cycle in the
arc graph of ``A``. We reach it by scanning permutations, by Karp's
recurrence in the log domain, and by power iteration, and compare.
"""

import math

import numpy as np

from maxeig.spectral import critical_matrix, mu_jump, mu_karp, mu_power

A = np.array([[0.0, 8.0, 1.0], [3.0, 0.0, 2.0], [4.0, 1.0, 1.0]])

for method in (mu_jump, mu_karp, mu_power):
    pair = method(A)
    print(f"{pair.method.value:>5}: mu = {pair.mu:.12g}  cycle = {[v + 1 for v in pair.critical_cycle.nodes]}")

# the 2-cycle 1 -> 2 -> 1 carries 8 * 3 = 24, beating the 3-cycle's 64^(1/3) = 4;
# averaging over whole permutations instead of cycles would land on 4
print("sqrt(24) =", math.sqrt(24))

pair = mu_karp(A)
print("eigenvector:", pair.x)
print("critical matrix:\n", critical_matrix(A, pair).entries)
