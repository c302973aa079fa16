"""
Max-times arithmetic in a few lines
===================================

Addition is ``max`` and multiplication is ordinary ``*``. Zero absorbs,
and ``max`` is idempotent, so ``A ⊕ A = A``.
"""

import numpy as np

from maxeig.core import kleene_star, max_matmat, max_matvec, oplus

A = np.array([[2.0, 0.0], [11.0, 15.0]])
x = np.array([10.0, 13.0])

# each output is the largest single product in its row
print("A ⊗ x =", max_matvec(A, x))

# idempotent addition
print("A ⊕ A == A:", np.array_equal(oplus(A, A), A))

# matrix product, same rule row by column
print("A ⊗ A =\n", max_matmat(A, A))

# the closure I ⊕ B ⊕ B² ⊕ ... stays finite when every cycle of B is below 1
B = A / 20
print("B* =\n", kleene_star(B))
