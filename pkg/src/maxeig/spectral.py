"""
Maximum cycle geometric mean and max-eigenvectors.

Three independent routes to ``mu(A)``:

* :func:`mu_jump` enumerates every permutation of the index set and takes the
  largest geometric mean over the cycles of those permutations whose entries
  are all nonzero.
* :func:`mu_karp` runs Karp's maximum mean-cycle recursion on log-weights.
* :func:`mu_power` iterates ``x <- A ⊗ x`` until the normalized iterates
  repeat and reads ``mu`` off the growth over one period.

The eigenvector of every route is verified against ``A ⊗ x = mu x``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    DEFAULT_POLICY,
    as_matrix,
    is_irreducible,
    kleene_star,
    max_matvec,
    product,
)
from .errors import ConvergenceError, EigenvectorError
from .jumps import (
    Cycle,
    JumpKind,
    check_jump_limit,
    enumerate_jumps,
    iter_permutation_cycles,
    jump_partitions,
    make_cycle,
)

__all__ = [
    "Method",
    "Eigenpair",
    "CriticalMatrix",
    "mu_jump",
    "mu_karp",
    "mu_power",
    "max_eigenvector",
    "critical_matrix",
    "critical_arcs",
    "find_critical_cycle",
    "eigen_residual",
    "diagonal_shortcut",
    "all_jumps_below_one",
]


class Method(enum.Enum):
    JUMP = "jump"
    KARP = "karp"
    POWER = "power"


@dataclass(frozen=True)
class Eigenpair:
    """Result of a ``mu`` computation.

    Attributes:
        mu: the maximum cycle geometric mean.
        x: eigenvector normalized to max entry 1, or ``None`` when ``mu = 0``.
        critical_cycle: lexicographically smallest cycle achieving ``mu``.
        critical_nodes: union of the nodes of all critical cycles.
        method: which route produced the value.
        has_cycle: ``False`` when ``A`` has no cycle of nonzero entries; then
            ``mu`` is 0 by convention.
        irreducible: whether ``A`` was irreducible.
        verified: whether ``x`` passed the eigen-equation check.
        iterations: power-method steps taken (0 for the other methods).
        period: period of the power iterates (0 for the other methods).
    """

    mu: float
    x: Optional[np.ndarray]
    critical_cycle: Optional[Cycle]
    critical_nodes: frozenset
    method: Method
    has_cycle: bool = True
    irreducible: bool = True
    verified: bool = True
    iterations: int = 0
    period: int = 0


@dataclass(frozen=True)
class CriticalMatrix:
    """``entries`` keeps ``base[i, j]`` on critical cycles and 0 elsewhere."""

    base: np.ndarray
    entries: np.ndarray

    @property
    def arcs(self):
        return [tuple(map(int, ij)) for ij in np.argwhere(self.entries > 0)]


def _no_cycle(A, method):
    return Eigenpair(
        mu=0.0,
        x=None,
        critical_cycle=None,
        critical_nodes=frozenset(),
        method=method,
        has_cycle=False,
        irreducible=is_irreducible(A),
        verified=False,
    )


# -- jump enumeration ------------------------------------------------------


def _scan_jump_range(A, start, stop, zero_threshold):
    """Log geometric mean of every all-nonzero cycle met in a permutation slice.

    Returns ``{cycle_nodes: log_mean}``. Zero-containing cycles are dropped
    as a whole, never skipped entry by entry.
    """
    n = A.shape[0]
    with np.errstate(divide="ignore"):
        logA = np.where(A > zero_threshold, np.log(A), -np.inf).tolist()
    seen = {}
    for cycles in iter_permutation_cycles(n, start, stop):
        for cyc in cycles:
            if cyc in seen:
                continue
            L = len(cyc)
            total = math.fsum(logA[cyc[t]][cyc[(t + 1) % L]] for t in range(L))
            seen[cyc] = total / L
    return {c: v for c, v in seen.items() if v != -math.inf}


def _merge_candidates(parts, rel_tol):
    best = -math.inf
    for part in parts:
        if part:
            best = max(best, max(part.values()))
    if best == -math.inf:
        return best, []
    cutoff = best + math.log1p(-rel_tol)
    crit = sorted({c for part in parts for c, v in part.items() if v >= cutoff})
    return best, crit


def mu_jump(A, *, jump_limit=None, parts=1, executor=None, policy=DEFAULT_POLICY):
    """``mu(A)`` by exhaustive jump enumeration.

    Every permutation is decomposed into cycles and each cycle whose entries
    are all nonzero contributes its geometric mean; ``mu`` is the largest.

    Args:
        A: nonnegative square matrix with ``n <= jump_limit``.
        jump_limit: overrides the default limit of 9.
        parts: number of disjoint permutation ranges to scan separately.
        executor: optional :class:`concurrent.futures.Executor`; when given,
            the ranges are scanned through ``executor.submit``.
        policy: numeric settings.

    Returns:
        An :class:`Eigenpair` with ``method = Method.JUMP``. A matrix with no
        all-nonzero cycle yields ``mu = 0`` and ``has_cycle = False``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    check_jump_limit(n, jump_limit)
    ranges = jump_partitions(n, parts)
    if executor is None:
        results = [_scan_jump_range(A, a, b, policy.zero_threshold) for a, b in ranges]
    else:
        futures = [
            executor.submit(_scan_jump_range, A, a, b, policy.zero_threshold)
            for a, b in ranges
        ]
        results = [f.result() for f in futures]
    best, crit = _merge_candidates(results, policy.rel_tol)
    if not crit:
        return _no_cycle(A, Method.JUMP)
    cycle = make_cycle(A, crit[0], policy)
    mu = cycle.geo_mean if cycle.length == 1 else math.exp(best)
    nodes = frozenset(v for c in crit for v in c)
    return _finish(A, mu, cycle, nodes, Method.JUMP, policy)


def _finish(A, mu, cycle, nodes, method, policy, x=None, **extra):
    irreducible = is_irreducible(A, policy)
    verified = True
    if x is None:
        try:
            x = max_eigenvector(A, mu, nodes, policy=policy)
        except EigenvectorError:
            if irreducible:
                raise
            warnings.warn(
                "reducible matrix: eigenvector failed the eigen-equation check",
                RuntimeWarning,
                stacklevel=3,
            )
            x = _closure_column(A, mu, nodes)
            verified = False
    return Eigenpair(
        mu=mu,
        x=x,
        critical_cycle=cycle,
        critical_nodes=nodes,
        method=method,
        irreducible=irreducible,
        verified=verified,
        **extra,
    )


# -- critical graph and eigenvector ----------------------------------------


def critical_arcs(A, mu, policy=DEFAULT_POLICY):
    """Boolean matrix of arcs ``(i, j)`` lying on a cycle of mean ``mu``.

    Arc ``(i, j)`` is critical when ``a_ij / mu`` times the best path weight
    from ``j`` back to ``i`` in ``A / mu`` equals 1 within ``rel_tol``.
    """
    A = as_matrix(A)
    if mu <= 0:
        return np.zeros(A.shape, dtype=bool)
    B = A / mu
    star = kleene_star(B)
    closing = B * star.T
    return (A > policy.zero_threshold) & (closing >= 1.0 - policy.rel_tol)


def find_critical_cycle(A, mu, *, allow_self_loops=True, policy=DEFAULT_POLICY):
    """Lexicographically smallest cycle in the critical graph, or ``None``.

    With ``allow_self_loops=False`` only cycles of length at least 2 count.
    """
    A = as_matrix(A)
    arcs = critical_arcs(A, mu, policy)
    if not allow_self_loops:
        np.fill_diagonal(arcs, False)
    n = A.shape[0]
    succ = [np.flatnonzero(arcs[v]).tolist() for v in range(n)]
    for s in range(n):
        path = _smallest_cycle_through(arcs, succ, s)
        if path is not None:
            return make_cycle(A, path, policy)
    return None


def _reaches(arcs, src, dst, blocked):
    stack, seen = [src], {src}
    while stack:
        v = stack.pop()
        if v == dst:
            return True
        for u in np.flatnonzero(arcs[v]).tolist():
            if u not in seen and u not in blocked:
                seen.add(u)
                stack.append(u)
    return False


def _smallest_cycle_through(arcs, succ, s):
    # greedy descent; the reachability test guarantees we never dead-end
    path, visited, v = [s], {s}, s
    while True:
        if arcs[v, s] and (v != s or len(path) == 1):
            return tuple(path)
        for u in succ[v]:
            if u in visited:
                continue
            if _reaches(arcs, u, s, visited - {s}):
                path.append(u)
                visited.add(u)
                v = u
                break
        else:
            return None


def _closure_column(A, mu, nodes):
    star = kleene_star(A / mu)
    col = np.array(star[:, min(nodes)])
    col /= col.max()
    col.setflags(write=False)
    return col


def eigen_residual(A, mu, x):
    """``max_i |(A ⊗ x)_i - mu x_i| / max((A ⊗ x)_i, mu x_i)`` (0/0 taken as 0)."""
    lhs = np.asarray(max_matvec(A, x))
    rhs = mu * np.asarray(x)
    scale = np.maximum(lhs, rhs)
    diff = np.abs(lhs - rhs)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(scale > 0, diff / scale, 0.0)
    return float(rel.max())


def max_eigenvector(A, mu, critical_nodes, policy=DEFAULT_POLICY):
    """Max-eigenvector for ``mu`` from the Kleene closure of ``A / mu``.

    The column of ``(A / mu)*`` at the smallest critical node satisfies
    ``A ⊗ x = mu x``; it is returned scaled so that its largest entry is 1.

    Raises:
        ValueError: ``mu <= 0`` or no critical node given.
        EigenvectorError: the result fails the eigen-equation, which means
            ``mu`` is not the eigenvalue of ``A``.
    """
    A = as_matrix(A)
    if not mu > 0:
        raise ValueError("max_eigenvector needs mu > 0")
    if not critical_nodes:
        raise ValueError("max_eigenvector needs at least one critical node")
    x = _closure_column(A, mu, critical_nodes)
    res = eigen_residual(A, mu, x)
    if res > policy.rel_tol:
        raise EigenvectorError(
            f"A ⊗ x != mu x (relative residual {res:.3g}); mu={mu!r} is not the eigenvalue"
        )
    return x


def critical_matrix(A, pair, policy=DEFAULT_POLICY):
    """Keep the entries on cycles of geometric mean ``pair.mu``; zero the rest."""
    A = as_matrix(A)
    arcs = critical_arcs(A, pair.mu, policy)
    entries = np.where(arcs, A, 0.0)
    entries.setflags(write=False)
    return CriticalMatrix(base=A, entries=entries)


# -- Karp --------------------------------------------------------------------


def mu_karp(A, policy=DEFAULT_POLICY):
    """``mu(A)`` by Karp's maximum mean-cycle recursion on ``log a_ij``.

    ``D[k, v]`` is the heaviest log-weight of a walk with exactly ``k`` arcs
    ending at ``v`` (any start), and
    ``log mu = max_v min_k (D[n, v] - D[k, v]) / (n - k)``. Zero entries are
    absent arcs. Runs in ``O(n^3)`` with dense storage.
    """
    A = as_matrix(A)
    n = A.shape[0]
    with np.errstate(divide="ignore"):
        W = np.where(A > policy.zero_threshold, np.log(A), -np.inf)
    D = np.full((n + 1, n), -np.inf)
    D[0] = 0.0
    for k in range(1, n + 1):
        D[k] = np.max(D[k - 1][:, None] + W, axis=0)
    finite = np.isfinite(D[n])
    if not finite.any():
        return _no_cycle(A, Method.KARP)
    ks = np.arange(n)[:, None]
    with np.errstate(invalid="ignore"):
        ratios = (D[n][None, :] - D[:n]) / (n - ks)
    ratios = np.where(np.isfinite(D[:n]), ratios, np.inf)
    per_node = ratios.min(axis=0)
    lam = float(per_node[finite].max())
    mu = math.exp(lam)
    return _from_mu(A, mu, Method.KARP, policy)


def _from_mu(A, mu, method, policy, x=None, **extra):
    arcs = critical_arcs(A, mu, policy)
    nodes = frozenset(int(v) for v in np.flatnonzero(arcs.any(axis=1)))
    cycle = find_critical_cycle(A, mu, policy=policy)
    return _finish(A, mu, cycle, nodes, method, policy, x=x, **extra)


# -- power iteration --------------------------------------------------------


def mu_power(A, max_iter=100_000, tol=1e-12, *, x0=None, policy=DEFAULT_POLICY):
    """``mu(A)`` by max-times power iteration with period detection.

    Iterates ``x <- (A ⊗ x) / max(A ⊗ x)`` from ``x0`` (all ones by default)
    and compares each normalized iterate with the previous ``n^2`` ones. When
    ``x_k`` matches ``x_(k-p)`` within ``tol``, ``mu`` is the ``p``-th root
    of the growth over those ``p`` steps and the eigenvector is
    ``⊕_j mu^(p-1-j) x_(k-p+j)`` over ``j = 0..p-1`` (unnormalized iterates).

    Raises:
        ConvergenceError: no repetition within ``max_iter`` steps; carries
            the last normalized iterate.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if not is_irreducible(A, policy):
        warnings.warn(
            "power iteration on a reducible matrix may not become periodic",
            RuntimeWarning,
            stacklevel=2,
        )
    x = np.ones(n) if x0 is None else np.array(x0, dtype=float)
    if x.shape != (n,) or np.any(x < 0) or not np.any(x > 0):
        raise ValueError("x0 must be a nonnegative, nonzero vector of length n")
    x = x / x.max()
    window = max(n * n, 1)
    hist = np.empty((window + 1, n))
    logs = np.empty(window + 1)
    hist[0], logs[0] = x, 0.0
    total = 0.0
    for k in range(1, max_iter + 1):
        y = np.max(A * x[None, :], axis=1)
        m = y.max()
        if m <= 0:
            raise ConvergenceError("iterate vanished: A has no cycle", x, k)
        x = y / m
        total += math.log(m)
        slot = k % (window + 1)
        hist[slot], logs[slot] = x, total
        depth = min(k, window)
        prev = (k - np.arange(1, depth + 1)) % (window + 1)
        H = hist[prev]
        ok = np.all(np.abs(H - x) <= tol * np.maximum(np.abs(H), np.abs(x)), axis=1)
        if ok.any():
            p = int(np.argmax(ok)) + 1
            mu = math.exp((total - logs[prev[p - 1]]) / p)
            vec = _power_eigenvector(hist, logs, k, p, window, mu)
            return _from_mu(A, mu, Method.POWER, policy, x=vec, iterations=k, period=p)
    raise ConvergenceError(
        f"power iteration did not become periodic within {max_iter} steps", x, max_iter
    )


def _power_eigenvector(hist, logs, k, p, window, mu):
    base = (k - p) % (window + 1)
    v = np.zeros(hist.shape[1])
    for j in range(p):
        slot = (k - p + j) % (window + 1)
        scale = math.exp(logs[slot] - logs[base] + (p - 1 - j) * math.log(mu))
        v = np.maximum(v, scale * hist[slot])
    v /= v.max()
    v.setflags(write=False)
    return v


# -- structural shortcuts ----------------------------------------------------


def diagonal_shortcut(A, *, jump_limit=None, policy=DEFAULT_POLICY):
    """``max a_ii`` when the diagonal product beats every other jump product.

    Returns ``None`` when ``prod(a_ii) <= max p(alpha)`` over the
    non-identity jumps ``alpha`` (``p`` skips zero entries).
    """
    A = as_matrix(A)
    n = A.shape[0]
    diag = product(np.diag(A).tolist(), policy)
    others = (
        j.p for j in enumerate_jumps(A, jump_limit=jump_limit, policy=policy)
        if any(j.sigma[i] != i for i in range(n))
    )
    if all(diag > p for p in others):
        return float(np.diag(A).max())
    return None


def all_jumps_below_one(A, *, jump_limit=None, policy=DEFAULT_POLICY):
    """True iff every all-nonzero cycle of every jump has product below 1.

    Equivalent to ``mu(A) < 1``. Cycles containing a structural zero are
    ignored as a whole; a matrix without any cycle gives ``True``.
    """
    A = as_matrix(A)
    for jump in enumerate_jumps(A, jump_limit=jump_limit, policy=policy):
        for _, prod in jump.cycle_products(policy.zero_threshold):
            if prod >= 1.0:
                return False
    return True


def principal_jumps(A, *, jump_limit=None, policy=DEFAULT_POLICY):
    """The jumps that use no diagonal entry."""
    return [
        j for j in enumerate_jumps(A, jump_limit=jump_limit, policy=policy)
        if j.kind is JumpKind.PRINCIPAL
    ]
