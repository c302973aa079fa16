"""Random test matrices: sparse irreducible nonnegative and symmetrically reciprocal."""

import numpy as np

from .core import is_irreducible

__all__ = ["random_irreducible", "random_weights", "random_sr"]


def random_irreducible(n, rng, *, max_sparsity=0.5, low=0.1, high=10.0, max_tries=1000):
    """Irreducible ``n×n`` matrix with entries in ``{0} ∪ (low, high)``.

    Each matrix draws a zero fraction uniformly from ``[0, max_sparsity]``;
    candidates that are not strongly connected are redrawn.
    """
    for _ in range(max_tries):
        sparsity = rng.uniform(0.0, max_sparsity)
        A = rng.uniform(low, high, size=(n, n))
        A[rng.random((n, n)) < sparsity] = 0.0
        if is_irreducible(A):
            return A
    raise RuntimeError(f"no irreducible {n}x{n} matrix after {max_tries} draws")


def random_weights(n, rng, spread=9.0):
    """Positive weights, log-uniform in ``[1/spread, spread]``."""
    return np.exp(rng.uniform(-np.log(spread), np.log(spread), size=n))


def random_sr(n, rng, spread=9.0):
    """SR matrix with upper-triangle entries log-uniform in ``[1/spread, spread]``.

    The strict upper triangle is drawn independently, so for ``n >= 3`` the
    result is inconsistent (not transitive) with probability 1.
    """
    logs = np.zeros((n, n))
    iu = np.triu_indices(n, 1)
    logs[iu] = rng.uniform(-np.log(spread), np.log(spread), size=len(iu[0]))
    logs = logs - logs.T
    A = np.exp(logs)
    # exact reciprocity: recompute the lower triangle from the upper one
    A[iu[1], iu[0]] = 1.0 / A[iu]
    np.fill_diagonal(A, 1.0)
    return A
