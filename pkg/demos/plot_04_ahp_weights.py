"""
Ranking from a pairwise comparison matrix
=========================================

An SR matrix has ``a_ij * a_ji = 1``. Its max-eigenvector gives weights
whose worst relative error against the judgements is ``mu - 1``, and no
other weight vector does better.
"""

import numpy as np

from maxeig.ahp import error_bound, from_weights, is_transitive, relative_error, weight_vector

# consistent judgements: recover the weights exactly
B = from_weights([4.0, 2.0, 1.0])
wv = weight_vector(B)
print("consistent:", is_transitive(B), wv.normalized("sum"), "error", wv.error)

# one inconsistent triple
A = np.array([[1, 2, 2], [0.5, 1, 2], [0.5, 0.5, 1]])
wv = weight_vector(A)
print("inconsistent: weights", wv.w, "mu", wv.mu, "error", wv.error, "bound", error_bound(A))

# nudging the weights only makes things worse
for eps in (0.9, 1.1):
    w = wv.w.copy()
    w[1] *= eps
    print(f"w2 x {eps}: error {relative_error(A, w):.6f}")
