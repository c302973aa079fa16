"""Timing and agreement harness for the three ``mu`` methods."""

from __future__ import annotations

import csv
import io
import statistics
import time

import numpy as np

from .core import DEFAULT_POLICY, close
from .errors import ConvergenceError
from .generate import random_irreducible
from .jumps import resolve_jump_limit
from .spectral import eigen_residual, mu_jump, mu_karp, mu_power

__all__ = ["run_bench", "bench_csv", "BENCH_FIELDS"]

BENCH_FIELDS = ["size", "method", "trials", "median_ms", "agreement_rate"]


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, (time.perf_counter() - t0) * 1e3


def run_bench(sizes, trials, seed, *, jump_limit=None, policy=DEFAULT_POLICY):
    """Time every method on ``trials`` random irreducible matrices per size.

    Returns a list of rows (dicts with :data:`BENCH_FIELDS`). A trial
    "agrees" when every method that ran returns the same ``mu`` within
    ``rel_tol`` and each eigenvector passes the eigen-equation check; the
    agreement rate is reported on every row of that size. The jump method
    is skipped above the jump limit.
    """
    limit = resolve_jump_limit(jump_limit)
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        if trials <= 0:
            continue
        methods = ["jump", "karp", "power"] if n <= limit else ["karp", "power"]
        times = {m: [] for m in methods}
        agree = 0
        for _ in range(trials):
            A = random_irreducible(n, rng)
            pairs = {}
            if "jump" in methods:
                pairs["jump"], dt = _timed(mu_jump, A, jump_limit=limit, policy=policy)
                times["jump"].append(dt)
            pairs["karp"], dt = _timed(mu_karp, A, policy)
            times["karp"].append(dt)
            try:
                pairs["power"], dt = _timed(mu_power, A, policy=policy)
                times["power"].append(dt)
            except ConvergenceError:
                continue
            mus = [p.mu for p in pairs.values()]
            ok = all(close(m, mus[0], policy.rel_tol) for m in mus)
            ok = ok and all(eigen_residual(A, p.mu, p.x) <= policy.rel_tol for p in pairs.values())
            agree += ok
        for m in methods:
            rows.append({
                "size": n,
                "method": m,
                "trials": trials,
                "median_ms": statistics.median(times[m]) if times[m] else float("nan"),
                "agreement_rate": agree / trials,
            })
    return rows


def bench_csv(rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({**row, "median_ms": f"{row['median_ms']:.6g}", "agreement_rate": f"{row['agreement_rate']:.6g}"})
    return buf.getvalue()
