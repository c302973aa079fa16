"""
Symmetrically reciprocal (SR) matrices and max-eigenvector ranking.

An SR matrix is a positive matrix with ``a_ij * a_ji = 1``; it is transitive
when ``a_ij = w_i / w_j`` for some positive weights ``w``. For an SR matrix
the max-eigenvector ``w`` minimizes

    e(w) = max_ik |a_ik - w_i / w_k| / a_ik

and the minimum equals ``mu(A) - 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import numpy as np

from .core import DEFAULT_POLICY, as_matrix, close
from .errors import InvalidEntryError, ReciprocityError
from .jumps import check_jump_limit, enumerate_jumps, resolve_jump_limit
from .spectral import find_critical_cycle, max_eigenvector, mu_jump, mu_karp

__all__ = [
    "SRMatrix",
    "WeightVector",
    "TauScan",
    "RatioReport",
    "validate_sr",
    "from_weights",
    "subordinate_jump_products",
    "is_transitive",
    "weight_vector",
    "relative_error",
    "error_bound",
    "perturb_tau",
    "tau_scan",
    "eigenvector_ratio_report",
]


@dataclass(frozen=True)
class SRMatrix:
    """A matrix certified symmetrically reciprocal. Build with :func:`validate_sr`."""

    base: np.ndarray

    @property
    def n(self):
        return self.base.shape[0]


@dataclass(frozen=True)
class WeightVector:
    """Weights ``w`` (max entry 1), their error ``e(w)`` and ``B = (w_i / w_j)``."""

    w: np.ndarray
    error: float
    induced: np.ndarray
    mu: float

    def normalized(self, how="max"):
        if how == "max":
            return self.w / self.w.max()
        if how == "sum":
            return self.w / self.w.sum()
        raise ValueError(f"unknown normalization {how!r}")


@dataclass(frozen=True)
class TauScan:
    """``mu(A^tau)`` sampled on a geometric grid.

    ``tau1`` is the last grid point of the initial decreasing run, ``tau2``
    the first grid point of the final increasing run, and ``mu0`` the
    smallest sampled value. ``findings`` lists departures from the
    decreasing/constant/increasing shape; it is empty for a clean valley.
    """

    taus: np.ndarray
    mus: np.ndarray
    tau1: float
    tau2: float
    mu0: float
    tau_at_min: float
    entry: tuple
    findings: list = field(default_factory=list)

    @property
    def unimodal(self):
        return not self.findings

    @property
    def resolution(self):
        """Grid spacing as a ratio between neighbouring ``tau`` values."""
        return float(self.taus[1] / self.taus[0])

    def table(self):
        return list(zip(self.taus.tolist(), self.mus.tolist()))


@dataclass(frozen=True)
class RatioReport:
    """Ratios ``y_i / x_i`` of the eigenvectors of ``A^tau0`` and ``A^tau1``.

    A clause is ``None`` when its hypothesis on ``mu(tau0)`` vs ``mu(tau1)``
    does not apply.

    Attributes:
        case: ``"increase"``, ``"decrease"`` or ``"equal"`` for the
            comparison of ``mu(tau1)`` with ``mu(tau0)``.
        increase_clause: ``r_a > r_i`` for every ``i != a``.
        decrease_clause: ``r_b < r_i`` for every ``i != b``.
        sandwich_clause: ``r_a >= r_i >= r_b`` for every ``i``.
    """

    entry: tuple
    tau0: float
    tau1: float
    mu0: float
    mu1: float
    x: np.ndarray
    y: np.ndarray
    ratios: np.ndarray
    case: str
    increase_clause: Optional[bool]
    decrease_clause: Optional[bool]
    sandwich_clause: bool

    def as_dict(self):
        return {
            "entry": list(self.entry),
            "tau0": self.tau0,
            "tau1": self.tau1,
            "mu0": self.mu0,
            "mu1": self.mu1,
            "x": self.x.tolist(),
            "y": self.y.tolist(),
            "ratios": self.ratios.tolist(),
            "case": self.case,
            "increase_clause": self.increase_clause,
            "decrease_clause": self.decrease_clause,
            "sandwich_clause": self.sandwich_clause,
        }


def _base(A):
    return A.base if isinstance(A, SRMatrix) else as_matrix(A)


def validate_sr(A, policy=DEFAULT_POLICY):
    """Certify ``A`` as symmetrically reciprocal.

    Raises:
        InvalidEntryError: some entry is not strictly positive.
        ReciprocityError: some ``a_ij * a_ji`` differs from 1 by more than
            ``rel_tol``; the worst pair is reported.
    """
    if isinstance(A, SRMatrix):
        return A
    A = as_matrix(A)
    if np.any(A <= 0):
        i, j = map(int, np.argwhere(A <= 0)[0])
        raise InvalidEntryError(f"SR matrices need positive entries; a[{i},{j}] = {A[i, j]}")
    prod = A * A.T
    dev = np.abs(prod - 1.0)
    i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
    if dev[i, j] > policy.rel_tol:
        i, j = min(i, j), max(i, j)
        raise ReciprocityError((int(i), int(j)), float(prod[i, j]))
    return SRMatrix(A)


def from_weights(w):
    """The transitive SR matrix ``b_ij = w_i / w_j``."""
    w = np.asarray(w, dtype=float)
    if w.ndim != 1 or np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise InvalidEntryError("weights must be finite and strictly positive")
    B = w[:, None] / w[None, :]
    B.setflags(write=False)
    return SRMatrix(B)


@lru_cache(maxsize=None)
def _permutation_table(n):
    table = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    table.setflags(write=False)
    return table


def _jump_products(A, jump_limit):
    """Full products of every jump, one row per permutation in lexicographic order."""
    n = A.shape[0]
    check_jump_limit(n, jump_limit)
    sigma = _permutation_table(n)
    return sigma, A[np.arange(n), sigma].prod(axis=1)


def _near_one(values, rel_tol):
    return np.abs(values - 1.0) <= rel_tol * np.maximum(values, 1.0)


def subordinate_jump_products(A, *, jump_limit=None, policy=DEFAULT_POLICY):
    """True iff every jump that uses a diagonal entry has product 1.

    Accepts a raw matrix as well as an :class:`SRMatrix`. For ``n <= 3`` every
    SR matrix passes; from ``n = 4`` on a fixed point plus a 3-cycle is a
    subordinate jump whose product is the 3-cycle product, which is 1 only
    for consistent triples.
    """
    A = _base(A)
    sigma, prods = _jump_products(A, jump_limit)
    subordinate = (sigma == np.arange(A.shape[0])).any(axis=1)
    return bool(np.all(_near_one(prods[subordinate], policy.rel_tol)))


def is_transitive(A, *, jump_limit=None, policy=DEFAULT_POLICY):
    """True iff ``A`` is consistent: ``a_ij * a_jk = a_ik`` for all ``i, j, k``.

    Up to the jump limit this checks that every jump has product 1; beyond
    it the equivalent pairwise test is used.
    """
    A = _base(A)
    n = A.shape[0]
    if n <= resolve_jump_limit(jump_limit):
        _, prods = _jump_products(A, jump_limit)
        return bool(np.all(_near_one(prods, policy.rel_tol)))
    lhs = A[:, :, None] * A[None, :, :]
    rhs = np.broadcast_to(A[:, None, :], lhs.shape)
    return bool(np.all(np.abs(lhs - rhs) <= policy.rel_tol * np.maximum(lhs, rhs)))


def relative_error(A, w):
    """``e(w) = max_ik |a_ik - w_i / w_k| / a_ik``."""
    A = _base(A)
    w = np.asarray(w, dtype=float)
    if w.shape != (A.shape[0],):
        raise ValueError(f"weight vector has shape {w.shape}, expected ({A.shape[0]},)")
    if np.any(w <= 0):
        raise InvalidEntryError("weights must be strictly positive")
    ratio = w[:, None] / w[None, :]
    return float(np.max(np.abs(A - ratio) / A))


def weight_vector(A, policy=DEFAULT_POLICY):
    """Max-eigenvector weights of an SR matrix and their relative error.

    The error of the max-eigenvector is ``mu(A) - 1``; a mismatch raises
    ``RuntimeError``.
    """
    sr = validate_sr(A, policy)
    pair = mu_karp(sr.base, policy)
    w = max_eigenvector(sr.base, pair.mu, pair.critical_nodes, policy)
    err = relative_error(sr, w)
    expected = pair.mu - 1.0
    if abs(err - expected) > policy.rel_tol * max(1.0, pair.mu):
        raise RuntimeError(f"e(w) = {err!r} differs from mu - 1 = {expected!r}")
    induced = w[:, None] / w[None, :]
    induced.setflags(write=False)
    return WeightVector(w=w, error=err, induced=induced, mu=pair.mu)


def error_bound(A, *, jump_limit=None, policy=DEFAULT_POLICY):
    """``c = g - 1`` where ``g`` is the largest cycle geometric mean over all jumps.

    Each jump is split into its cycles and a cycle of ``k`` entries with
    product ``P`` contributes ``P ** (1/k)``. For every ``i, j`` and the
    max-eigenvector ``w`` this gives ``1/(1+c) <= a_ij w_j / w_i <= 1+c``,
    and ``c`` equals the optimal relative error.
    """
    sr = validate_sr(A, policy)
    pair = mu_jump(sr.base, jump_limit=jump_limit, policy=policy)
    return max(pair.mu - 1.0, 0.0)


def max_jump(A, *, jump_limit=None, policy=DEFAULT_POLICY):
    """The jump with the largest product ``p`` (first in lexicographic order on ties)."""
    best = None
    for j in enumerate_jumps(_base(A), jump_limit=jump_limit, policy=policy):
        if best is None or j.p > best.p * (1.0 + policy.rel_tol):
            best = j
    return best


def _perturbation_entry(A, pair, policy):
    cycle = pair.critical_cycle
    if cycle is None or cycle.length < 2:
        cycle = find_critical_cycle(A, pair.mu, allow_self_loops=False, policy=policy)
    if cycle is None:
        raise ValueError("no critical cycle of length >= 2 to perturb")
    return cycle.arcs[0]


def perturb_tau(A, pair, tau, *, entry=None, policy=DEFAULT_POLICY):
    """``A^tau``: one critical entry times ``tau``, its mirror divided by ``tau``.

    The entry is the first arc of ``pair.critical_cycle`` (or of the smallest
    critical cycle of length at least 2 when that is a self-loop) unless
    ``entry = (i, j)`` is given. Reciprocity is preserved.
    """
    sr = validate_sr(A, policy)
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if entry is None:
        entry = _perturbation_entry(sr.base, pair, policy)
    i, j = entry
    if i == j:
        raise ValueError("cannot perturb a diagonal entry of an SR matrix")
    out = np.array(sr.base)
    out[i, j] = sr.base[i, j] * tau
    out[j, i] = sr.base[j, i] / tau
    out.setflags(write=False)
    return validate_sr(out, policy)


def tau_scan(A, tau_min, tau_max, steps, *, entry=None, policy=DEFAULT_POLICY):
    """Sample ``mu(A^tau)`` for ``steps`` geometrically spaced ``tau``.

    ``mu`` falls, may stay flat, then rises; ``tau1`` and ``tau2`` are
    located on the grid, so their error is one grid step.
    """
    sr = validate_sr(A, policy)
    if not (0 < tau_min < tau_max) or steps < 3:
        raise ValueError("need 0 < tau_min < tau_max and steps >= 3")
    pair = mu_karp(sr.base, policy)
    if entry is None:
        entry = _perturbation_entry(sr.base, pair, policy)
    taus = np.geomspace(tau_min, tau_max, int(steps))
    mus = np.array([
        mu_karp(perturb_tau(sr, pair, t, entry=entry, policy=policy).base, policy).mu
        for t in taus
    ])
    tol = policy.rel_tol

    def falls(a, b):
        return b < a and not close(a, b, tol)

    k1 = 0
    while k1 + 1 < len(mus) and falls(mus[k1], mus[k1 + 1]):
        k1 += 1
    k2 = len(mus) - 1
    while k2 > 0 and falls(mus[k2], mus[k2 - 1]):
        k2 -= 1
    findings = []
    if k2 < k1:
        findings.append(f"rising run starts at index {k2} before falling run ends at {k1}")
    else:
        flat = mus[k1:k2 + 1]
        bad = [k1 + t for t in range(len(flat)) if not close(flat[t], flat[0], tol)]
        if bad:
            findings.append(
                f"mu not constant between tau1 and tau2 (first departure at tau={taus[bad[0]]:.6g})"
            )
    m = int(np.argmin(mus))
    taus.setflags(write=False)
    mus.setflags(write=False)
    return TauScan(
        taus=taus,
        mus=mus,
        tau1=float(taus[k1]),
        tau2=float(taus[k2]),
        mu0=float(mus[m]),
        tau_at_min=float(taus[m]),
        entry=tuple(entry),
        findings=findings,
    )


def _pair_at(A, tau, entry, policy):
    B = np.array(A)
    i, j = entry
    B[i, j] *= tau
    B[j, i] /= tau
    return B, mu_karp(B, policy)


def eigenvector_ratio_report(A, tau0, tau1, *, entry=(0, 1), policy=DEFAULT_POLICY):
    """Compare the max-eigenvectors of ``A^tau0`` and ``A^tau1``.

    Entry ``(a, b)`` of ``A`` is scaled by ``tau`` and ``(b, a)`` by
    ``1/tau``. With ``r_i = y_i / x_i`` (``x`` for ``tau0``, ``y`` for
    ``tau1``) the report records whether ``r_a`` is the strict maximum when
    ``mu`` rises, whether ``r_b`` is the strict minimum when ``mu`` falls,
    and whether ``r_a >= r_i >= r_b`` when ``mu`` is unchanged.

    When ``mu`` is unchanged both eigenvectors are taken at a common critical
    node so they come from the same closure column.
    """
    sr = validate_sr(A, policy)
    if not (0 < tau0 <= tau1):
        raise ValueError("need 0 < tau0 <= tau1")
    a, b = entry
    if a == b:
        raise ValueError("entry must be off-diagonal")
    B0, p0 = _pair_at(sr.base, tau0, entry, policy)
    B1, p1 = _pair_at(sr.base, tau1, entry, policy)
    tol = policy.rel_tol
    if close(p0.mu, p1.mu, tol):
        case = "equal"
        common = p0.critical_nodes & p1.critical_nodes
        if common:
            node = frozenset([min(common)])
            x = max_eigenvector(B0, p0.mu, node, policy)
            y = max_eigenvector(B1, p1.mu, node, policy)
        else:
            x, y = p0.x, p1.x
    else:
        case = "increase" if p1.mu > p0.mu else "decrease"
        x, y = p0.x, p1.x
    r = np.asarray(y) / np.asarray(x)
    others_a = np.delete(r, a)
    others_b = np.delete(r, b)

    def gt(u, v):
        return u > v and not close(u, v, tol)

    def ge(u, v):
        return u >= v or close(u, v, tol)

    inc = all(gt(r[a], v) for v in others_a) if case == "increase" else None
    dec = all(gt(v, r[b]) for v in others_b) if case == "decrease" else None
    sandwich = all(ge(r[a], v) and ge(v, r[b]) for v in r)
    r.setflags(write=False)
    return RatioReport(
        entry=(a, b),
        tau0=float(tau0),
        tau1=float(tau1),
        mu0=p0.mu,
        mu1=p1.mu,
        x=np.asarray(x),
        y=np.asarray(y),
        ratios=r,
        case=case,
        increase_clause=inc,
        decrease_clause=dec,
        sandwich_clause=sandwich,
    )
