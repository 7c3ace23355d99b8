"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--quick] [--json]
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from linext import kernels
from linext.corpus import random_poset
from linext.graph import cycle_graph, stable_set_matrix
from linext.experiments import sample_gnp


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def cases(quick: bool):
    rng = np.random.default_rng(2024)
    for n in ((10, 12) if quick else (12, 15, 18)):
        p = random_poset(n, rng, density=0.1)
        yield f"linext_count n={n}", lambda b, p=p: kernels.linext_count(p.n, p.covers_below, backend=b)
    for n, prob in (((7, 0.5), (8, 0.5)) if quick else ((7, 0.5), (8, 0.5), (9, 0.5))):
        g = sample_gnp(n, prob, [1, n])
        eu = [u for u, _ in g.edges]
        ev = [v for _, v in g.edges]
        yield (
            f"scan_orientations n={n} m={g.m}",
            lambda b, g=g, eu=eu, ev=ev: len(kernels.scan_orientations(g.n, eu, ev, True, 1, 0, backend=b)[0]),
        )
    for n in ((10, 12) if quick else (10, 13, 15)):
        g = sample_gnp(n, 0.5, [2, n])
        yield f"acyclic_count n={n} m={g.m}", lambda b, g=g: kernels.acyclic_count(g.n, g.adj, backend=b)
    for n in (5, 7):
        S = stable_set_matrix(cycle_graph(n))
        yield f"frank_wolfe C{n} tol=1e-4", lambda b, S=S: round(kernels.frank_wolfe_entropy(S, 1e-4, 10**6, backend=b)[0][0], 6)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled extension not available; only the Python fallback can run")
    rows = []
    for name, fn in cases(args.quick):
        py_t, py_out = _time(lambda: fn("python"), 1 if not args.quick else args.repeat)
        row = {"case": name, "python_s": py_t}
        if kernels.BACKEND == "cython":
            cy_t, cy_out = _time(lambda: fn("cython"), args.repeat)
            if cy_out != py_out:
                raise SystemExit(f"{name}: backends disagree ({cy_out} vs {py_out})")
            row.update(cython_s=cy_t, speedup=py_t / cy_t if cy_t else float("inf"))
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'case':<36}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for r in rows:
        cy = f"{r['cython_s']:.5f}" if "cython_s" in r else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['case']:<36}{r['python_s']:>12.5f}{cy:>12}{sp:>10}")


if __name__ == "__main__":
    main()
