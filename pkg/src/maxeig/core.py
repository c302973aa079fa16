"""
Max-times semiring primitives.

The semiring is the set of nonnegative reals with ``a ⊕ b = max(a, b)`` and
``a ⊗ b = a * b``. Zero is the additive identity (and absorbing), one is the
multiplicative identity.

Matrices and vectors are plain float64 numpy arrays. :func:`as_matrix` and
:func:`as_vector` validate inputs and return read-only copies, so every
function here is pure.

Graph convention: entry ``a[i, j] > zero_threshold`` is an arc. Cycles are
written as node sequences ``(i1, ..., iL)`` with weight
``a[i1, i2] * a[i2, i3] * ... * a[iL, i1]``; this is the order in which a
permutation walks its cycles. Reversing all arcs does not change any cycle
weight, so the spectral quantities are independent of orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidEntryError

__all__ = [
    "NumericPolicy",
    "DEFAULT_POLICY",
    "as_matrix",
    "as_vector",
    "max_identity",
    "max_matvec",
    "max_matmat",
    "oplus",
    "scalar_mul",
    "max_power",
    "kleene_star",
    "adjacency",
    "is_irreducible",
    "product",
    "geometric_mean",
    "close",
]


@dataclass(frozen=True)
class NumericPolicy:
    """Shared numeric settings.

    Attributes:
        rel_tol: relative tolerance used when comparing computed reals.
        zero_threshold: entries ``<= zero_threshold`` are structural zeros
            (absent arcs). The default keeps exact-zero semantics.
        log_domain: compute long products as ``exp(sum(log))``.
        log_min_terms: products with more factors than this use the log
            domain when ``log_domain`` is set.
    """

    rel_tol: float = 1e-9
    zero_threshold: float = 0.0
    log_domain: bool = True
    log_min_terms: int = 8

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if not self.zero_threshold >= 0:
            raise ValueError(
                f"zero_threshold must be nonnegative, got {self.zero_threshold}"
            )

    def is_zero(self, value):
        return value <= self.zero_threshold


DEFAULT_POLICY = NumericPolicy()


def _readonly(arr):
    arr.setflags(write=False)
    return arr


def as_matrix(A):
    """Validate ``A`` as a square nonnegative finite matrix.

    Returns a read-only float64 copy. Raises :class:`DimensionError` for
    non-square or empty input and :class:`InvalidEntryError` for negative,
    NaN or infinite entries.
    """
    arr = np.array(A, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidEntryError("matrix entries must be finite")
    if np.any(arr < 0):
        i, j = map(int, np.argwhere(arr < 0)[0])
        raise InvalidEntryError(f"matrix entry a[{i},{j}] = {arr[i, j]} is negative")
    return _readonly(arr)


def as_vector(x):
    """Validate ``x`` as a nonnegative finite vector (read-only float64 copy)."""
    arr = np.array(x, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionError(f"expected a non-empty vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise InvalidEntryError("vector entries must be finite and nonnegative")
    return _readonly(arr)


def max_identity(n):
    """Semiring unit: ones on the diagonal, zeros elsewhere."""
    return _readonly(np.eye(n))


def max_matvec(A, x):
    """``(A ⊗ x)_i = max_j a_ij * x_j``.

    >>> max_matvec([[2, 0], [11, 15]], [10, 13]).tolist()
    [20.0, 195.0]
    """
    A = as_matrix(A)
    x = as_vector(x)
    if A.shape[1] != x.shape[0]:
        raise DimensionError(f"cannot apply {A.shape} matrix to vector of length {x.size}")
    return _readonly(np.max(A * x[None, :], axis=1))


def max_matmat(A, B):
    """``(A ⊗ B)_ij = max_k a_ik * b_kj``."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    return _readonly(_matmat(A, B))


def _matmat(A, B):
    # (n, n, 1) * (1, n, n) -> max over the shared index
    return np.max(A[:, :, None] * B[None, :, :], axis=1)


def oplus(A, B):
    """Entrywise maximum of two equally shaped matrices."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")
    return _readonly(np.maximum(A, B))


def scalar_mul(c, x):
    """Multiply every entry of ``x`` by the nonnegative scalar ``c``."""
    c = float(c)
    if not (c >= 0 and math.isfinite(c)):
        raise InvalidEntryError(f"scalar must be finite and nonnegative, got {c}")
    x = as_vector(x)
    return _readonly(c * x)


def max_power(A, k):
    """``A ⊗ A ⊗ ... ⊗ A`` (``k`` factors; ``k = 0`` gives the unit)."""
    A = as_matrix(A)
    if k < 0:
        raise ValueError("power must be nonnegative")
    result = np.eye(A.shape[0])
    base = A.copy()
    while k:
        if k & 1:
            result = _matmat(result, base)
        base = _matmat(base, base)
        k >>= 1
    return _readonly(result)


def kleene_star(A):
    """Max-times closure ``I ⊕ A ⊕ A² ⊕ ... ⊕ A^(n-1)``.

    Computed as ``(I ⊕ A)^(n-1)`` by repeated squaring; the two agree because
    ``⊕`` is idempotent.
    """
    A = as_matrix(A)
    n = A.shape[0]
    M = np.maximum(np.eye(n), A)
    result = np.eye(n)
    k = n - 1
    while k:
        if k & 1:
            result = _matmat(result, M)
        M = _matmat(M, M)
        k >>= 1
    return _readonly(result)


def adjacency(A, policy=DEFAULT_POLICY):
    """Boolean arc pattern: ``True`` where ``a_ij`` is not a structural zero."""
    A = as_matrix(A)
    return A > policy.zero_threshold


def _reachable(adj, start):
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[start] = True
    frontier = [start]
    while frontier:
        nxt = np.flatnonzero(adj[frontier].any(axis=0) & ~seen)
        seen[nxt] = True
        frontier = nxt.tolist()
    return seen


def is_irreducible(A, policy=DEFAULT_POLICY):
    """True iff the arc graph of ``A`` is strongly connected.

    A 1×1 matrix is always irreducible: a single node is trivially strongly
    connected, whatever its entry.
    """
    adj = adjacency(A, policy)
    if adj.shape[0] == 1:
        return True
    return bool(_reachable(adj, 0).all() and _reachable(adj.T, 0).all())


def product(values, policy=DEFAULT_POLICY):
    """Product of positive reals, through logs when there are many factors."""
    values = list(values)
    if policy.log_domain and len(values) > policy.log_min_terms:
        if any(v == 0 for v in values):
            return 0.0
        return math.exp(math.fsum(math.log(v) for v in values))
    return math.prod(values)


def geometric_mean(values):
    """``(v_1 * ... * v_L) ** (1/L)`` computed in the log domain."""
    values = list(values)
    if not values:
        raise ValueError("geometric mean of an empty sequence")
    if any(v == 0 for v in values):
        return 0.0
    if len(values) == 1:
        return float(values[0])
    return math.exp(math.fsum(math.log(v) for v in values) / len(values))


def close(a, b, rel_tol):
    """Symmetric relative comparison; two zeros compare equal."""
    return abs(a - b) <= rel_tol * max(abs(a), abs(b))
