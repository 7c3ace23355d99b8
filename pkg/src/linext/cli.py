"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("LINEXT_THREADS")
    if env is None:
        return 1
    try:
        return _positive_int(env)
    except argparse.ArgumentTypeError as err:
        raise UsageError(f"LINEXT_THREADS: {err}") from None


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as err:
        raise UsageError(f"cannot read {path}: {err.strerror}") from None


def _load_graph(path):
    from linext.graph import parse_graph

    return parse_graph(_read(path))


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(doc))
    else:
        print(text)


# -- commands -------------------------------------------------------------------

def cmd_optimize(args) -> int:
    from linext.optimizer import bounds_report, epsilon

    g = _load_graph(args.path)
    rep = epsilon(g, threads=_threads(args), max_orientations=args.max_orientations)
    doc = rep.to_dict(bounds_report(g) if args.bounds else None)
    lines = [f"epsilon = {rep.epsilon}", f"optimal orientations: {len(rep.argmax)}"]
    lines += [f"  {list(o.arcs)}" for o in rep.argmax[:20]]
    if len(rep.argmax) > 20:
        lines.append(f"  ... {len(rep.argmax) - 20} more")
    if args.bounds:
        lines += [f"{k}: {v}" for k, v in doc["bounds"].items()]
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_count(args) -> int:
    from linext.graph import count_acyclic_orientations
    from linext.poset import count_linear_extensions, parse_poset

    if args.poset:
        p = parse_poset(_read(args.path))
        e = count_linear_extensions(p)
        _emit(args, {"linear_extensions": str(e), "n": p.n}, f"linear extensions: {e}")
    else:
        g = _load_graph(args.path)
        a = count_acyclic_orientations(g)
        _emit(args, {"acyclic_orientations": str(a), "n": g.n, "m": g.m}, f"acyclic orientations: {a}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from linext.verify import run_suite

    res = run_suite(args.suite, args.corpus_size, args.seed)
    doc = res.to_dict()
    text = f"{res.name}: {'PASS' if res.passed else 'FAIL'} ({res.checked} checks, {len(res.failures)} failures)"
    if res.failures:
        text += "\n" + "\n".join(f"  {f}" for f in res.failures[:20])
    _emit(args, doc, text)
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_volume(args) -> int:
    from linext import polytopes as pt
    from linext.poset import parse_poset

    if args.kind in ("order", "chain"):
        p = parse_poset(_read(args.path))
        pred = pt.order_predicate(p) if args.kind == "order" else pt.chain_predicate(p)
        est = pt.mc_volume(pred, p.n, args.samples, args.seed, batch=True)
        exact = pt.exact_order_volume(p)
    else:
        g = _load_graph(args.path)
        if g.n > pt.STAB_EXACT_MAX_N:
            raise UsageError(f"stable polytopes are supported for n <= {pt.STAB_EXACT_MAX_N}")
        sp = pt.StablePolytope(g)
        est = pt.mc_volume(sp.predicate(), g.n, args.samples, args.seed, batch=True)
        exact = sp.volume
    doc = est.to_dict()
    if args.exact:
        doc["exact"] = str(exact)
    text = f"volume ~ {est.estimate:.6f} +- {est.std_error:.6f} ({est.samples} samples, seed {est.seed})"
    if args.exact:
        text += f"\nexact volume = {exact} = {float(Fraction(exact)):.6f}"
    _emit(args, doc, text)
    return EXIT_OK


def cmd_entropy(args) -> int:
    from linext.entropy import ConvergenceError, graph_entropy
    from linext.graph import MAX_EXACT_N

    g = _load_graph(args.path)
    if g.n > MAX_EXACT_N:
        raise UsageError(f"entropy is supported for n <= {MAX_EXACT_N}")
    try:
        res = graph_entropy(g, args.tol, args.max_iter)
    except ConvergenceError as err:
        _emit(args, err.result.to_dict(), f"H not certified: {err}")
        return EXIT_BUDGET
    text = f"H = {res.h:.6f} bits (gap {res.duality_gap:.2e}, {res.iterations} iterations)"
    _emit(args, res.to_dict(), text)
    return EXIT_OK


def cmd_experiment(args) -> int:
    from linext.experiments import parse_grid, rows_to_csv, run_experiment

    try:
        grid = parse_grid(args.grid)
        seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    except ValueError as err:
        raise UsageError(str(err)) from None
    if not seeds:
        raise UsageError("no seeds given")
    rows = run_experiment(grid, seeds, threads=_threads(args))
    text = rows_to_csv(rows, args.extended)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    for r in rows:
        for note in r.notes:
            print(f"n={r.n} p={r.p} seed={r.seed}: {note}", file=sys.stderr)
    bad = [r for r in rows if r.chain_holds() is False]
    for r in bad:
        print(f"bound chain violated at n={r.n} p={r.p} seed={r.seed}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    from linext.optimizer import DEFAULT_MAX_ORIENTATIONS
    from linext.verify import SUITES

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document on stdout")
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker processes (default: $LINEXT_THREADS or 1)")

    parser = argparse.ArgumentParser(prog="linext", description="Maximal linear-extension counts over acyclic orientations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", parents=[common], help="exact maximum and all optimal orientations")
    p.add_argument("path", help="edge-list file")
    p.add_argument("--bounds", action="store_true", help="also report the known bounds")
    p.add_argument("--max-orientations", type=_positive_int, default=DEFAULT_MAX_ORIENTATIONS)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("count", parents=[common], help="acyclic orientations of a graph, or extensions of a poset")
    p.add_argument("path")
    p.add_argument("--poset", action="store_true", help="read a poset (lines 'i j' meaning i < j)")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="run an invariant suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--corpus-size", type=_positive_int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("volume", parents=[common], help="Monte-Carlo polytope volume")
    p.add_argument("path")
    p.add_argument("--kind", choices=("stab", "order", "chain"), default="stab")
    p.add_argument("--samples", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="also report the exact volume")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("entropy", parents=[common], help="graph entropy in bits")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--max-iter", type=_positive_int, default=10**6)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("experiment", parents=[common], help="G(n, p) bound experiments to CSV")
    p.add_argument("--grid", required=True, help="n1:p1,n2:p2,...")
    p.add_argument("--seeds", required=True, help="comma-separated integers")
    p.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    p.add_argument("--extended", action="store_true", help="append asymptotic columns")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    from linext.graph import GraphError, TooLargeError
    from linext.optimizer import BudgetExceeded
    from linext.polytopes import PolytopeError
    from linext.poset import PosetError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "volume" and args.samples < 10_000:
            raise UsageError("--samples must be at least 10000")
        if args.command == "entropy" and not (args.tol > 0 and math.isfinite(args.tol)):
            raise UsageError("--tol must be positive")
        return args.func(args)
    except (BudgetExceeded, TooLargeError) as err:
        print(f"linext: budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GraphError, PosetError, PolytopeError) as err:
        print(f"linext: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
