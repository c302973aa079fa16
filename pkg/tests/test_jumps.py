import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from maxeig.errors import JumpLimitError
from maxeig.jumps import (
    JumpKind,
    cycle_decomposition,
    enumerate_jumps,
    jump_partitions,
    make_cycle,
    resolve_jump_limit,
)

from conftest import RAMP3


def test_single_jump_for_1x1():
    jumps = list(enumerate_jumps([[5]]))
    assert len(jumps) == 1
    assert jumps[0].sigma == (0,)
    assert jumps[0].kind is JumpKind.SUBORDINATE
    assert jumps[0].p == 5 and jumps[0].s == 1


def test_s3_structure():
    jumps = list(enumerate_jumps(np.ones((3, 3))))
    fixed = [sum(j.sigma[i] == i for i in range(3)) for j in jumps]
    assert len(jumps) == 6
    assert sorted(fixed) == [0, 0, 1, 1, 1, 3]
    assert sum(j.kind is JumpKind.PRINCIPAL for j in jumps) == 2


def test_ramp3_principal_products():
    jumps = list(enumerate_jumps(RAMP3))
    principal = sorted(j.p for j in jumps if j.kind is JumpKind.PRINCIPAL)
    subordinate = [j for j in jumps if j.kind is JumpKind.SUBORDINATE]
    assert principal == [84, 96]
    assert len(subordinate) == 4


def test_zero_entries_skipped_in_p():
    A = [[0, 9, 0], [1, 0, 0], [0, 0, 2]]
    cyc3 = next(j for j in enumerate_jumps(A) if j.sigma == (1, 2, 0))
    assert cyc3.p == 9 and cyc3.s == 1
    assert cyc3.literal_mean == 9  # the uncorrected rule
    assert cyc3.cycle_products() == []


def test_cycle_decomposition_examples():
    assert cycle_decomposition((0, 1, 2)) == ((0,), (1,), (2,))
    assert cycle_decomposition((1, 0, 2)) == ((0, 1), (2,))
    assert cycle_decomposition((2, 0, 1)) == ((0, 2, 1),)


@given(st.permutations(list(range(7))))
def test_cycle_decomposition_partitions_and_reconstructs(perm):
    cycles = cycle_decomposition(tuple(perm))
    assert sorted(v for c in cycles for v in c) == list(range(7))
    for c in cycles:
        assert c[0] == min(c)
        for k, v in enumerate(c):
            assert perm[v] == c[(k + 1) % len(c)]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_all_permutations_once(n):
    sigmas = [j.sigma for j in enumerate_jumps(np.ones((n, n)))]
    assert len(sigmas) == math.factorial(n)
    assert set(sigmas) == set(itertools.permutations(range(n)))


@pytest.mark.parametrize("parts", [1, 2, 5, 7, 24, 100])
def test_partitions_cover_disjointly(parts):
    A = np.arange(16, dtype=float).reshape(4, 4)
    whole = [j.sigma for j in enumerate_jumps(A)]
    pieces = []
    for a, b in jump_partitions(4, parts):
        pieces.extend(j.sigma for j in enumerate_jumps(A, start=a, stop=b))
    assert pieces == whole


def test_jump_invariants(rng):
    A = rng.uniform(0, 3, (5, 5))
    A[A < 1] = 0
    for j in enumerate_jumps(A):
        assert sorted(j.sigma) == list(range(5))
        assert (j.kind is JumpKind.PRINCIPAL) == all(j.sigma[i] != i for i in range(5))
        assert j.s <= 5
        if j.s:
            assert j.p > 0


def test_jump_limit_refusal(monkeypatch):
    monkeypatch.delenv("MAXEIG_JUMP_LIMIT", raising=False)
    with pytest.raises(JumpLimitError, match="jump_limit=9"):
        next(enumerate_jumps(np.ones((10, 10))))
    with pytest.raises(JumpLimitError, match="jump_limit=3"):
        next(enumerate_jumps(np.ones((4, 4)), jump_limit=3))


def test_jump_limit_environment(monkeypatch):
    monkeypatch.setenv("MAXEIG_JUMP_LIMIT", "4")
    assert resolve_jump_limit() == 4
    assert resolve_jump_limit(6) == 6


def test_make_cycle_rotates_and_weighs():
    A = np.array([[0, 8, 1], [3, 0, 2], [4, 1, 1.0]])
    c = make_cycle(A, (2, 0, 1))
    assert c.nodes == (0, 1, 2)
    assert c.weight == 64
    assert c.length == 3
    assert c.geo_mean == pytest.approx(4.0, rel=1e-12)
    assert c.arcs == ((0, 1), (1, 2), (2, 0))
    assert c.geo_mean ** c.length == pytest.approx(c.weight, rel=1e-9)
