"""Random-graph harness: G(n, p) samples, finite-n bounds on log2 ε, CSV output.

Graphs come from numpy's PCG64 generator. Row ``i`` of the grid with seed
``s`` and size ``n`` draws from ``default_rng([s, n * 10**6 + i])``; the
``n(n-1)/2`` vertex pairs are visited in lexicographic order and each is kept
when its uniform draw falls below ``p``.
"""
from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from linext.entropy import DEFAULT_TOL, graph_entropy
from linext.graph import (
    MAX_EXACT_N,
    Graph,
    chromatic_number,
    class_sizes,
    greedy_coloring,
    independence_number,
    optimal_coloring,
)
from linext.optimizer import DEFAULT_MAX_ORIENTATIONS, BudgetExceeded, epsilon

EXACT_EPSILON_MAX_N = 8
CSV_COLUMNS = ("n", "p", "seed", "chi", "alpha", "s", "b", "lower_log2", "upper_log2", "exact_log2", "H_bits")
EXTENDED_COLUMNS = (
    "coloring",
    "entropy_gap",
    "asym_log2_epsilon",
    "asym_log2_vol_lower",
    "asym_log2_vol_upper",
    "asym_H_lower",
    "asym_H_upper",
)


def _check_p(p: float):
    if not 0 < p < 1:
        raise ValueError(f"p must lie strictly between 0 and 1 (got {p})")


def sample_gnp(n: int, p: float, seed: int | Sequence[int]) -> Graph:
    """Erdős-Rényi graph; ``seed`` is anything ``numpy.random.default_rng`` accepts."""
    _check_p(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    draws = np.random.default_rng(seed).random(len(pairs))
    return Graph(n, tuple(e for e, x in zip(pairs, draws) if x < p))


def s_statistic(n: int, p: float) -> float:
    """``s = 2 log_b n - 2 log_b log_b n`` with ``b = 1/(1-p)``."""
    _check_p(p)
    if n < 3:
        raise ValueError("s needs n >= 3")
    b = 1 / (1 - p)
    lb = math.log(n, b)
    if lb <= 0:
        raise ValueError("log_b n must be positive")
    return 2 * lb - 2 * math.log(lb, b)


def log2_factorial(k: int) -> float:
    return math.lgamma(k + 1) / math.log(2)


@dataclass
class ExperimentRow:
    n: int
    p: float
    seed: int
    chi: int
    alpha: int
    s_value: float | None
    b_value: float
    log2_lower: float
    log2_upper: float | None
    log2_epsilon_exact: float | None = None
    h_bits: float | None = None
    coloring: str = "exact"
    entropy_gap: float | None = None
    notes: list[str] = field(default_factory=list)

    def chain_holds(self, tol: float = DEFAULT_TOL) -> bool | None:
        """``lower <= log2 ε <= upper + n tol`` when ε is known, else ``None``."""
        if self.log2_epsilon_exact is None or self.log2_upper is None:
            return None
        eps = 1e-9
        return (
            self.log2_lower <= self.log2_epsilon_exact + eps
            and self.log2_epsilon_exact <= self.log2_upper + self.n * tol + eps
        )

    def asymptotics(self) -> dict:
        """The large-n predictions, for inspection only."""
        s, n = self.s_value, self.n
        if s is None or s <= 0:
            return dict.fromkeys(EXTENDED_COLUMNS[2:])
        lf = log2_factorial(n)
        c = 2 * (math.e / 2) ** (2 / math.log2(self.b_value))
        return {
            "asym_log2_epsilon": n * math.log2(s),
            "asym_log2_vol_lower": n * math.log2(s) - lf - n * math.log2(math.e),
            "asym_log2_vol_upper": n * math.log2(s) - lf + (n / s) * math.log2(c),
            "asym_H_lower": math.log2(n / s),
            "asym_H_upper": math.log2(n / s) + 1 / math.log(2),
        }


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _alpha(g: Graph) -> int:
    if g.n <= MAX_EXACT_N:
        return independence_number(g) if g.n else 0
    # branch and bound on the complement stays exact well beyond the bitmask limit
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return len(nx.max_weight_clique(nx.complement(h), weight=None)[0])


def compute_row(
    n: int,
    p: float,
    seed: int,
    row_index: int,
    tol: float = DEFAULT_TOL,
    exact_max_n: int = EXACT_EPSILON_MAX_N,
    max_orientations: int = DEFAULT_MAX_ORIENTATIONS,
) -> ExperimentRow:
    g = sample_gnp(n, p, [seed, n * 10**6 + row_index])
    notes = []
    if n <= MAX_EXACT_N:
        colouring, how = optimal_coloring(g), "exact"
        chi = chromatic_number(g)
    else:
        colouring, how = greedy_coloring(g), "greedy"
        chi = max(colouring, default=-1) + 1
    lower = sum(log2_factorial(a) for a in class_sizes(colouring))
    alpha = _alpha(g)
    b = 1 / (1 - p)
    s = s_statistic(n, p) if n >= 3 else None
    h = upper = gap = None
    if 0 < n <= MAX_EXACT_N:
        res = graph_entropy(g, tol, raise_on_failure=False)
        h, gap = res.h, res.duality_gap
        upper = n * math.log2(n) - n * h
        if gap > tol:
            notes.append(f"entropy gap {gap:.3g} above tolerance")
    else:
        notes.append("entropy skipped: too many stable sets")
    exact = None
    if n <= exact_max_n:
        try:
            exact = math.log2(epsilon(g, threads=1, max_orientations=max_orientations).epsilon)
        except BudgetExceeded as err:
            notes.append(f"epsilon skipped: {err}")
    return ExperimentRow(n, p, seed, chi, alpha, s, b, lower, upper, exact, h, how, gap, notes)


def _row_job(args):
    return compute_row(*args)


def run_experiment(
    grid: Iterable[tuple[int, float]],
    seeds: Iterable[int],
    tol: float = DEFAULT_TOL,
    exact_max_n: int = EXACT_EPSILON_MAX_N,
    max_orientations: int = DEFAULT_MAX_ORIENTATIONS,
    threads: int | None = None,
) -> list[ExperimentRow]:
    """One row per ``(n, p, seed)``, sorted by that key regardless of ``threads``."""
    if threads is None:
        threads = int(os.environ.get("LINEXT_THREADS", "1"))
    grid = list(grid)
    seeds = list(seeds)
    for _, p in grid:
        _check_p(p)
    jobs = [
        (n, p, seed, i, tol, exact_max_n, max_orientations)
        for i, (n, p) in enumerate(grid)
        for seed in seeds
    ]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(j) for j in jobs]
    return sorted(rows, key=lambda r: (r.n, r.p, r.seed))


def rows_to_csv(rows: Sequence[ExperimentRow], extended: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS + (EXTENDED_COLUMNS if extended else ()))
    for r in rows:
        line = [
            r.n, r.p, r.seed, r.chi, r.alpha, r.s_value, r.b_value,
            r.log2_lower, r.log2_upper, r.log2_epsilon_exact, r.h_bits,
        ]
        if extended:
            asym = r.asymptotics()
            line += [r.coloring, r.entropy_gap] + [asym[k] for k in EXTENDED_COLUMNS[2:]]
        w.writerow([_fmt(x) for x in line])
    return buf.getvalue()


def write_csv(rows: Sequence[ExperimentRow], path, extended: bool = False) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows, extended))


def parse_grid(text: str) -> list[tuple[int, float]]:
    """``"n1:p1,n2:p2"`` -> ``[(n1, p1), ...]``; raises ``ValueError`` on bad input."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            n_txt, p_txt = part.split(":")
            n, p = int(n_txt), float(p_txt)
        except ValueError:
            raise ValueError(f"bad grid entry {part!r}; expected n:p") from None
        if n < 1:
            raise ValueError(f"bad grid entry {part!r}: n must be positive")
        _check_p(p)
        out.append((n, p))
    if not out:
        raise ValueError("empty grid")
    return out
