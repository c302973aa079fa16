"""
A valley in mu as one judgement moves
=====================================

Scaling ``a_12`` by ``tau`` and ``a_21`` by ``1/tau`` keeps the matrix SR.
Here the two 3-cycles carry ``2 tau`` and ``0.5 / tau``, so ``mu`` is the
larger of their cube roots and 1, bottoming out at ``tau = 0.5``.
"""

import numpy as np

from maxeig.ahp import tau_scan

A = np.array([[1, 2, 2], [0.5, 1, 2], [0.5, 0.5, 1]])
scan = tau_scan(A, 0.1, 10.0, 41)

for tau, mu in scan.table()[::4]:
    bar = "#" * int(40 * (mu - 1))
    print(f"tau={tau:7.3f}  mu={mu:.5f}  {bar}")

print("lowest sample at tau =", round(scan.tau_at_min, 4), "mu0 =", round(scan.mu0, 6))
print("shape findings:", scan.findings or "none")
