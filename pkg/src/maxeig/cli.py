"""
Command-line interface.

    maxeig [--json] [--tol T] [--jump-limit N] COMMAND ...

Commands: ``mu``, ``eigvec``, ``check``, ``weights``, ``tau-scan``, ``bench``.
Matrix arguments are file paths (``-`` reads standard input); JSON is
recognised by a leading ``{``, anything else is read as header-less CSV.
Node indices in reports are 1-based.

Exit codes: 0 success, 2 unreadable or invalid input, 3 matrix too large for
jump enumeration, 4 power iteration did not converge.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .ahp import (
    error_bound,
    is_transitive,
    max_jump,
    tau_scan,
    validate_sr,
    weight_vector,
)
from .bench import bench_csv, run_bench
from .core import NumericPolicy, close
from .errors import (
    ConvergenceError,
    DimensionError,
    InvalidEntryError,
    JumpLimitError,
    ParseError,
    ReciprocityError,
)
from .io import read_matrix
from .jumps import resolve_jump_limit
from .spectral import eigen_residual, mu_jump, mu_karp, mu_power

EXIT_PARSE = 2
EXIT_LIMIT = 3
EXIT_CONVERGENCE = 4

_METHODS = {"jump": mu_jump, "karp": mu_karp, "power": mu_power}


class CLIError(Exception):
    def __init__(self, code, exit_code, message):
        self.code = code
        self.exit_code = exit_code
        super().__init__(message)


def _cycle(c):
    if c is None:
        return None
    return {
        "nodes": [v + 1 for v in c.nodes],
        "arcs": [[i + 1, j + 1] for i, j in c.arcs],
        "product": c.weight,
        "geo_mean": c.geo_mean,
    }


def _run_method(name, A, args):
    policy = args.policy
    if name == "jump":
        return mu_jump(A, jump_limit=args.jump_limit, policy=policy)
    if name == "power":
        return mu_power(A, policy=policy)
    return mu_karp(A, policy)


def _pair_result(pair):
    out = {
        "method": pair.method.value,
        "mu": pair.mu,
        "critical_cycle": _cycle(pair.critical_cycle),
        "critical_nodes": sorted(v + 1 for v in pair.critical_nodes),
        "irreducible": pair.irreducible,
    }
    if not pair.has_cycle:
        out["flag"] = "no cycle"
    return out


def _auto_method(args, n):
    if args.method != "auto":
        return args.method
    return "jump" if n <= resolve_jump_limit(args.jump_limit) else "karp"


def cmd_mu(args, timings):
    mf = read_matrix(args.file)
    A = mf.parsed
    method = _auto_method(args, A.shape[0])
    names = list(_METHODS) if method == "all" else [method]
    results = {}
    for name in names:
        t0 = time.perf_counter()
        pair = _run_method(name, A, args)
        timings[name] = (time.perf_counter() - t0) * 1e3
        results[name] = _pair_result(pair)
    out = {"n": int(A.shape[0])}
    if method == "all":
        mus = [r["mu"] for r in results.values()]
        out["methods"] = results
        out["agreement"] = all(close(m, mus[0], args.policy.rel_tol) for m in mus)
        out["mu"] = results["karp"]["mu"]
    else:
        out.update(results[method])
    return mf, out


def cmd_eigvec(args, timings):
    mf = read_matrix(args.file)
    A = mf.parsed
    method = _auto_method(args, A.shape[0])
    t0 = time.perf_counter()
    pair = _run_method(method, A, args)
    timings[method] = (time.perf_counter() - t0) * 1e3
    out = _pair_result(pair)
    if pair.x is None:
        out["eigenvector"] = None
        out["residual"] = None
    else:
        out["eigenvector"] = pair.x.tolist()
        out["residual"] = eigen_residual(A, pair.mu, pair.x)
    return mf, out


def cmd_check(args, timings):
    mf = read_matrix(args.file)
    A = mf.parsed
    want_sr = args.sr or not (args.sr or args.transitive)
    want_tr = args.transitive or not (args.sr or args.transitive)
    out = {}
    sr = None
    try:
        sr = validate_sr(A, args.policy)
        out["sr"] = {"pass": True}
    except ReciprocityError as exc:
        i, j = exc.pair
        out["sr"] = {"pass": False, "pair": [i + 1, j + 1], "product": exc.product}
    except InvalidEntryError as exc:
        out["sr"] = {"pass": False, "reason": str(exc)}
    if want_tr:
        if sr is None:
            out["transitive"] = {"pass": False, "reason": "not SR"}
        else:
            ok = is_transitive(sr, jump_limit=args.jump_limit, policy=args.policy)
            res = {"pass": ok}
            if A.shape[0] <= resolve_jump_limit(args.jump_limit):
                jump = max_jump(sr, jump_limit=args.jump_limit, policy=args.policy)
                res["max_jump_product"] = jump.full_product()
                res["max_jump"] = [s + 1 for s in jump.sigma]
            out["transitive"] = res
    if not want_sr:
        del out["sr"]
    return mf, out


def _require_sr(A, policy):
    try:
        return validate_sr(A, policy)
    except ReciprocityError as exc:
        i, j = exc.pair
        raise CLIError(
            "not-sr", EXIT_PARSE,
            f"matrix is not symmetrically reciprocal at ({i + 1},{j + 1}): product {exc.product:.12g}",
        ) from exc


def cmd_weights(args, timings):
    mf = read_matrix(args.file)
    try:
        sr = _require_sr(mf.parsed, args.policy)
    except InvalidEntryError as exc:
        raise CLIError("not-sr", EXIT_PARSE, str(exc)) from exc
    t0 = time.perf_counter()
    wv = weight_vector(sr, args.policy)
    timings["weights"] = (time.perf_counter() - t0) * 1e3
    out = {
        "weights": wv.normalized(args.normalize).tolist(),
        "normalize": args.normalize,
        "error": wv.error,
        "mu": wv.mu,
    }
    if sr.n <= resolve_jump_limit(args.jump_limit):
        t0 = time.perf_counter()
        out["bound"] = error_bound(sr, jump_limit=args.jump_limit, policy=args.policy)
        timings["bound"] = (time.perf_counter() - t0) * 1e3
    return mf, out


def cmd_tau_scan(args, timings):
    mf = read_matrix(args.file)
    try:
        sr = _require_sr(mf.parsed, args.policy)
    except InvalidEntryError as exc:
        raise CLIError("not-sr", EXIT_PARSE, str(exc)) from exc
    t0 = time.perf_counter()
    try:
        scan = tau_scan(sr, args.tau_from, args.tau_to, args.steps, policy=args.policy)
    except ValueError as exc:
        raise CLIError("bad-range", EXIT_PARSE, str(exc)) from exc
    timings["scan"] = (time.perf_counter() - t0) * 1e3
    i, j = scan.entry
    out = {
        "entry": [i + 1, j + 1],
        "tau1": scan.tau1,
        "tau2": scan.tau2,
        "mu0": scan.mu0,
        "tau_at_min": scan.tau_at_min,
        "unimodal": scan.unimodal,
        "findings": scan.findings,
        "table": [[t, m] for t, m in scan.table()],
    }
    return mf, out


def _parse_sizes(text):
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise CLIError("bad-sizes", EXIT_PARSE, f"--sizes expects A..B, got {text!r}") from None
    if a < 1 or b < a:
        raise CLIError("bad-sizes", EXIT_PARSE, f"--sizes expects 1 <= A <= B, got {text!r}")
    return list(range(a, b + 1))


def cmd_bench(args, timings):
    sizes = _parse_sizes(args.sizes)
    t0 = time.perf_counter()
    rows = run_bench(sizes, args.trials, args.seed, jump_limit=args.jump_limit, policy=args.policy)
    timings["total"] = (time.perf_counter() - t0) * 1e3
    text = bench_csv(rows)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(text)
    # medians are nondeterministic; keep them under "timings"
    for r in rows:
        timings[f"n{r['size']}_{r['method']}_median_ms"] = r["median_ms"]
    agreement = {}
    for r in rows:
        agreement[str(r["size"])] = r["agreement_rate"]
    out = {"sizes": sizes, "trials": args.trials, "seed": args.seed, "agreement_rate": agreement}
    return None, out, text


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(u) for u in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_fmt(u)}" for k, u in sorted(v.items())) + "}"
    return str(v)


def _emit_text(report, stream):
    res = report["results"]
    table = res.pop("table", None) if isinstance(res, dict) else None
    for key in sorted(res):
        stream.write(f"{key}: {_fmt(res[key])}\n")
    if table is not None:
        stream.write("tau,mu\n")
        for t, m in table:
            stream.write(f"{t:.12g},{m:.12g}\n")
    for key in sorted(report["timings_ms"]):
        stream.write(f"time_ms.{key}: {report['timings_ms'][key]:.3f}\n")


def _global_options(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False,
                        help="print the machine-readable report")
    parser.add_argument("--tol", type=float, default=default, help="relative tolerance (default 1e-9)")
    parser.add_argument("--jump-limit", type=int, default=default,
                        help="largest n for jump enumeration (default 9, or $MAXEIG_JUMP_LIMIT)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="maxeig",
        description="Max-times eigenvalues, eigenvectors and SR-matrix weights.",
        epilog="Jump enumeration costs n! steps; above the jump limit use --method karp.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", parents=[common], help="maximum cycle geometric mean")
    p.add_argument("file")
    p.add_argument("--method", choices=["auto", "jump", "karp", "power", "all"], default="auto")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("eigvec", parents=[common], help="normalized max-eigenvector")
    p.add_argument("file")
    p.add_argument("--method", choices=["auto", "jump", "karp", "power"], default="auto")
    p.set_defaults(func=cmd_eigvec)

    p = sub.add_parser("check", parents=[common], help="SR and transitivity tests")
    p.add_argument("file")
    p.add_argument("--sr", action="store_true")
    p.add_argument("--transitive", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("weights", parents=[common], help="max-eigenvector weights of an SR matrix")
    p.add_argument("file")
    p.add_argument("--normalize", choices=["max", "sum"], default="max")
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("tau-scan", parents=[common], help="mu(A^tau) on a geometric grid")
    p.add_argument("file")
    p.add_argument("--from", dest="tau_from", type=float, default=0.1)
    p.add_argument("--to", dest="tau_to", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=50)
    p.set_defaults(func=cmd_tau_scan)

    p = sub.add_parser("bench", parents=[common], help="method agreement and timing CSV")
    p.add_argument("--sizes", default="3..7", help="inclusive range A..B")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", help="also write the CSV table to this path")
    p.set_defaults(func=cmd_bench)
    return parser


def _fail(args_json, code, exit_code, message):
    if args_json:
        sys.stderr.write(json.dumps({"error": {"code": code, "exit": exit_code, "message": message}}) + "\n")
    else:
        sys.stderr.write(f"maxeig: error[{code}]: {message}\n")
    return exit_code


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    tol = args.tol if args.tol is not None else 1e-9
    try:
        args.policy = NumericPolicy(rel_tol=tol)
    except ValueError as exc:
        parser.error(str(exc))
    timings = {}
    try:
        result = args.func(args, timings)
    except CLIError as exc:
        return _fail(args.json, exc.code, exc.exit_code, str(exc))
    except (ParseError, InvalidEntryError, DimensionError) as exc:
        return _fail(args.json, "parse", EXIT_PARSE, str(exc))
    except JumpLimitError as exc:
        return _fail(args.json, "jump-limit", EXIT_LIMIT, str(exc))
    except ConvergenceError as exc:
        return _fail(args.json, "no-convergence", EXIT_CONVERGENCE, str(exc))
    csv_text = None
    if len(result) == 3:
        mf, out, csv_text = result
    else:
        mf, out = result
    report = {
        "command": ["maxeig", *argv],
        "input_digest": mf.digest if mf is not None else None,
        "results": out,
        "timings_ms": timings,
        "version": __version__,
    }
    if args.json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif csv_text is not None:
        sys.stdout.write(csv_text)
    else:
        _emit_text(report, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
