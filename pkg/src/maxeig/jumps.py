"""
Jumps: one entry from every row and every column.

A jump of an n×n matrix is the selection ``a[i, sigma(i)]`` for a permutation
``sigma``. Its entries split along the disjoint cycles of ``sigma``; a cycle
whose entries are all nonzero is a cycle of the arc graph, and every
elementary cycle of the graph shows up inside some jump (pad it with fixed
points). Enumerating all ``n!`` jumps therefore visits every cycle.
"""

from __future__ import annotations

import enum
import itertools
import math
import os
from dataclasses import dataclass, field

from .core import DEFAULT_POLICY, as_matrix, geometric_mean, product
from .errors import JumpLimitError

__all__ = [
    "DEFAULT_JUMP_LIMIT",
    "JumpKind",
    "Cycle",
    "Jump",
    "resolve_jump_limit",
    "cycle_decomposition",
    "make_cycle",
    "enumerate_jumps",
    "jump_partitions",
]

DEFAULT_JUMP_LIMIT = 9


class JumpKind(enum.Enum):
    PRINCIPAL = "principal"
    SUBORDINATE = "subordinate"


@dataclass(frozen=True)
class Cycle:
    """An elementary cycle ``nodes[0] -> nodes[1] -> ... -> nodes[0]``.

    ``weight`` is ``a[i1, i2] * ... * a[iL, i1]`` and ``geo_mean`` its
    ``L``-th root. Nodes are stored rotated so the smallest index is first.
    """

    nodes: tuple
    weight: float
    geo_mean: float

    @property
    def length(self):
        return len(self.nodes)

    @property
    def arcs(self):
        L = len(self.nodes)
        return tuple((self.nodes[k], self.nodes[(k + 1) % L]) for k in range(L))


@dataclass(frozen=True)
class Jump:
    """A permutation pattern together with its products.

    Attributes:
        sigma: the permutation; the jump selects ``a[i, sigma[i]]``.
        cycles: disjoint cycle decomposition of ``sigma`` (fixed points
            included as 1-cycles), each rotated to start at its minimum.
        p: product of the nonzero selected entries (1 if there are none).
        s: number of nonzero selected entries.
        kind: principal when ``sigma`` has no fixed point.
        entries: the selected values ``a[i, sigma[i]]``.
    """

    sigma: tuple
    cycles: tuple
    p: float
    s: int
    kind: JumpKind
    entries: tuple = field(repr=False)

    @property
    def literal_mean(self):
        """``p ** (1/s)`` over the whole jump, zeros skipped; 0 when ``s = 0``.

        This is the per-jump value obtained by reading "product of the nonzero
        entries" literally. It can exceed every true cycle mean (see
        :meth:`cycle_means`) and is kept only for comparison.
        """
        if self.s == 0:
            return 0.0
        return self.p ** (1.0 / self.s)

    def full_product(self):
        """Product of all ``n`` selected entries, zeros included."""
        return math.prod(self.entries)

    def cycle_products(self, zero_threshold=0.0):
        """``(cycle, product)`` for each cycle whose entries are all nonzero."""
        out = []
        for cyc in self.cycles:
            vals = [self.entries[i] for i in cyc]
            if all(v > zero_threshold for v in vals):
                out.append((cyc, math.prod(vals)))
        return out


def resolve_jump_limit(jump_limit=None):
    """Explicit value, else ``$MAXEIG_JUMP_LIMIT``, else the default (9)."""
    if jump_limit is not None:
        return int(jump_limit)
    env = os.environ.get("MAXEIG_JUMP_LIMIT")
    if env:
        return int(env)
    return DEFAULT_JUMP_LIMIT


def check_jump_limit(n, jump_limit=None):
    limit = resolve_jump_limit(jump_limit)
    if n > limit:
        raise JumpLimitError(n, limit)
    return limit


def cycle_decomposition(sigma):
    """Disjoint cycles of ``sigma``, each starting at its smallest element.

    >>> cycle_decomposition((1, 2, 0, 3))
    ((0, 1, 2), (3,))
    """
    seen = [False] * len(sigma)
    cycles = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = sigma[i]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def make_cycle(A, nodes, policy=DEFAULT_POLICY):
    """Build a :class:`Cycle` from a node sequence (rotated to its minimum)."""
    nodes = tuple(int(v) for v in nodes)
    if len(set(nodes)) != len(nodes) or not nodes:
        raise ValueError(f"cycle nodes must be distinct and non-empty: {nodes}")
    k = nodes.index(min(nodes))
    nodes = nodes[k:] + nodes[:k]
    L = len(nodes)
    vals = [float(A[nodes[t], nodes[(t + 1) % L]]) for t in range(L)]
    return Cycle(nodes, product(vals, policy), geometric_mean(vals))


def _make_jump(A, sigma, policy):
    entries = tuple(float(A[i, sigma[i]]) for i in range(len(sigma)))
    nonzero = [v for v in entries if v > policy.zero_threshold]
    principal = all(sigma[i] != i for i in range(len(sigma)))
    return Jump(
        sigma=tuple(sigma),
        cycles=cycle_decomposition(sigma),
        p=product(nonzero, policy) if nonzero else 1.0,
        s=len(nonzero),
        kind=JumpKind.PRINCIPAL if principal else JumpKind.SUBORDINATE,
        entries=entries,
    )


def jump_partitions(n, parts):
    """Split ``range(n!)`` into ``parts`` contiguous ``(start, stop)`` ranges."""
    total = math.factorial(n)
    parts = max(1, min(int(parts), total))
    bounds = [total * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


def enumerate_jumps(A, *, start=0, stop=None, jump_limit=None, policy=DEFAULT_POLICY):
    """Yield the :class:`Jump` of every permutation of ``range(n)``.

    Permutations come in lexicographic order; ``start``/``stop`` select a
    slice of that order so the space can be split with
    :func:`jump_partitions` and processed independently.

    Raises :class:`JumpLimitError` when ``n`` exceeds the jump limit.
    """
    A = as_matrix(A)
    n = A.shape[0]
    check_jump_limit(n, jump_limit)
    perms = itertools.islice(itertools.permutations(range(n)), start, stop)
    for sigma in perms:
        yield _make_jump(A, sigma, policy)


def iter_permutation_cycles(n, start=0, stop=None):
    """Yield the cycle decomposition of each permutation in a slice.

    Lighter than :func:`enumerate_jumps` when only the cycle structure is
    needed.
    """
    for sigma in itertools.islice(itertools.permutations(range(n)), start, stop):
        yield cycle_decomposition(sigma)
