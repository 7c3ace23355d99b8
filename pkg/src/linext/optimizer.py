"""The maximal number of linear extensions over acyclic orientations, and its bounds."""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from linext import kernels
from linext.graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    TooLargeError,
    bits,
    chromatic_numbers_of_subsets,
    class_sizes,
    complement,
    components,
    count_acyclic_orientations,
    delete_vertex,
    induced_subgraph,
    is_complete_multipartite,
    is_connected,
    optimal_coloring,
)
from linext.orientations import (
    AcyclicOrientation,
    enumerate_acyclic_orientations,
    is_transitive,
    squared_norm,
)

DEFAULT_MAX_ORIENTATIONS = 5_000_000
PERF_MAX_N = 13


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class EpsilonReport:
    epsilon: int
    argmax: list[AcyclicOrientation]
    orientations_searched: int
    counts: dict[int, int] | None = field(default=None, repr=False)

    def to_dict(self, bounds: dict | None = None) -> dict:
        out = {
            "epsilon": str(self.epsilon),
            "argmax_count": len(self.argmax),
            "argmax": [[list(a) for a in o.arcs] for o in self.argmax],
            "orientations_searched": self.orientations_searched,
        }
        if bounds is not None:
            out["bounds"] = bounds
        return out


def _scan_shard(args):
    n, eu, ev, top_bits, top_value = args
    return kernels.scan_orientations(n, eu, ev, True, top_bits, top_value)


def orientation_counts(g: Graph, threads: int = 1, max_orientations: int = DEFAULT_MAX_ORIENTATIONS) -> dict[int, int]:
    """``mask -> e(P)`` for every acyclic orientation of a graph.

    Only masks with the top edge pointing ``u -> v`` are counted; reversing an
    orientation reverses the poset, which has the same number of extensions.
    """
    total = count_acyclic_orientations(g)
    if total > max_orientations:
        raise BudgetExceeded(f"{total} acyclic orientations exceed the budget of {max_orientations}")
    if g.m == 0:
        return {0: kernels.linext_count(g.n, [0] * g.n)}
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    full = (1 << g.m) - 1
    # shard by the top edges below the fixed reversal bit
    extra = min(g.m - 1, max(0, (threads - 1).bit_length() + 1)) if threads > 1 else 0
    jobs = [(g.n, eu, ev, 1 + extra, value) for value in range(1 << extra)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_shard, jobs))
    else:
        results = [_scan_shard(j) for j in jobs]
    out: dict[int, int] = {}
    for masks, counts in results:
        for mask, c in zip(masks, counts):
            out[mask] = c
            out[mask ^ full] = c
    return dict(sorted(out.items()))


def epsilon(g: Graph, threads: int | None = None, max_orientations: int = DEFAULT_MAX_ORIENTATIONS) -> EpsilonReport:
    """Exact maximum of e(P) over acyclic orientations, with the full argmax set.

    Disconnected graphs are solved per component: the extensions of a disjoint
    union interleave, so ``e = multinomial * product of component counts``.
    """
    if threads is None:
        threads = int(os.environ.get("LINEXT_THREADS", "1"))
    comps = components(g)
    if len(comps) == 1:
        counts = orientation_counts(g, threads, max_orientations)
        best = max(counts.values())
        argmax = [AcyclicOrientation(g, m) for m, c in counts.items() if c == best]
        return EpsilonReport(best, argmax, len(counts), counts)

    best = math.factorial(g.n)
    searched = 0
    per_comp = []
    for comp in comps:
        verts = bits(comp)
        h = induced_subgraph(g, comp)
        rep = epsilon(h, threads, max_orientations)
        searched += rep.orientations_searched
        best //= math.factorial(h.n)
        best *= rep.epsilon
        # translate component edge indices to host edge indices
        idx = [g.edge_index[(verts[u], verts[v])] for u, v in h.edges]
        per_comp.append([sum(1 << idx[k] for k in bits(o.mask)) for o in rep.argmax])
    argmax = sorted(sum(choice) for choice in product(*per_comp))
    return EpsilonReport(best, [AcyclicOrientation(g, m) for m in argmax], searched)


def epsilon_value(g: Graph, **kw) -> int:
    return epsilon(g, **kw).epsilon


# -- comparability graphs ----------------------------------------------------

def find_transitive_orientation(g: Graph) -> AcyclicOrientation | None:
    """A transitive orientation if ``g`` is a comparability graph, else ``None``.

    Orienting one edge forces others (``a->b`` forces ``a->c`` whenever ``b, c``
    are non-adjacent neighbours sharing ``a``, and ``c->b`` likewise for a shared
    head). Forced classes are propagated; free choices are backtracked.
    """
    m = g.m
    dirs = [-1] * m  # 0: u->v, 1: v->u

    def arc_bit(a, b):
        k = g.edge_index[(min(a, b), max(a, b))]
        return k, (0 if a < b else 1)

    def assign(a, b, trail):
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            k, d = arc_bit(a, b)
            if dirs[k] == d:
                continue
            if dirs[k] != -1:
                return False
            dirs[k] = d
            trail.append(k)
            for c in bits(g.adj[a]):
                if c != b and not g.has_edge(b, c):
                    stack.append((a, c))
            for c in bits(g.adj[b]):
                if c != a and not g.has_edge(a, c):
                    stack.append((c, b))
        return True

    def undo(trail):
        for k in trail:
            dirs[k] = -1

    def search():
        try:
            k = dirs.index(-1)
        except ValueError:
            mask = sum(1 << i for i, d in enumerate(dirs) if d)
            try:
                o = AcyclicOrientation(g, mask)
            except ValueError:
                return None
            return o if is_transitive(o) else None
        u, v = g.edges[k]
        for a, b in ((u, v), (v, u)):
            trail = []
            if assign(a, b, trail):
                found = search()
                if found is not None:
                    return found
            undo(trail)
        return None

    return search()


def is_comparability_graph(g: Graph) -> bool:
    return find_transitive_orientation(g) is not None


def transitive_orientations(g: Graph) -> list[AcyclicOrientation]:
    return [o for o in enumerate_acyclic_orientations(g) if is_transitive(o)]


# -- bounds ------------------------------------------------------------------

def theorem_perf_bound(g: Graph) -> Fraction:
    """``F(V)`` for ``F(S) = (1/χ(G[S])) Σ_{v∈S} F(S∖v)``, ``F(∅) = 1``.

    Equals the sum over all vertex orderings of the reciprocal products of
    chromatic numbers of the successively shrinking induced subgraphs.
    """
    if g.n > PERF_MAX_N:
        raise TooLargeError(f"theorem_perf_bound supports n <= {PERF_MAX_N}")
    chi = chromatic_numbers_of_subsets(g)
    size = 1 << g.n
    F = [Fraction(0)] * size
    F[0] = Fraction(1)
    for s in range(1, size):
        total = sum((F[s & ~(1 << v)] for v in bits(s)), Fraction(0))
        F[s] = total / chi[s]
    return F[size - 1]


@dataclass(frozen=True)
class ColoringBound:
    product_bound: int
    closed_form: Fraction
    class_sizes: tuple[int, ...]
    chi: int


def coloring_lower_bound(g: Graph) -> ColoringBound:
    """Two lower bounds for ε from an optimal colouring.

    ``product_bound`` is the product of factorials of the colour-class sizes;
    ``closed_form`` is ``n! / (k^(n-k) k!)`` with ``k = χ(G)``.
    """
    colours = optimal_coloring(g)
    sizes = class_sizes(colours)
    k = len(sizes)
    prod = 1
    for a in sizes:
        prod *= math.factorial(a)
    closed = Fraction(math.factorial(g.n), k ** (g.n - k) * math.factorial(k))
    return ColoringBound(prod, closed, tuple(sizes), k)


def cut_upper_bound(g: Graph, **kw) -> Fraction:
    """Half the sum of ε over all single-vertex deletions (connected graphs, n >= 2)."""
    if not is_connected(g):
        raise DisconnectedGraphError("the cut bound needs a connected graph")
    if g.n < 2:
        raise GraphError("the cut bound needs at least two vertices")
    return Fraction(sum(epsilon(delete_vertex(g, v), **kw).epsilon for v in range(g.n)), 2)


def complement_upper_bound(g: Graph) -> tuple[int, bool]:
    """Acyclic orientations of the complement, and whether equality is predicted."""
    return count_acyclic_orientations(complement(g)), is_complete_multipartite(g)


def zonotope_argmax(g: Graph, max_orientations: int = DEFAULT_MAX_ORIENTATIONS) -> list[AcyclicOrientation]:
    """Orientations whose degree-imbalance vector is farthest from the origin."""
    total = count_acyclic_orientations(g)
    if total > max_orientations:
        raise BudgetExceeded(f"{total} acyclic orientations exceed the budget of {max_orientations}")
    best, out = -1, []
    for o in enumerate_acyclic_orientations(g):
        q = squared_norm(o)
        if q > best:
            best, out = q, [o]
        elif q == best:
            out.append(o)
    return out


def bounds_report(g: Graph) -> dict:
    """All bounds that apply to ``g``, JSON-ready (rationals as strings)."""
    out: dict = {}
    cb = coloring_lower_bound(g)
    out["chromatic_number"] = cb.chi
    out["coloring_product_lower"] = str(cb.product_bound)
    out["coloring_closed_form_lower"] = str(cb.closed_form)
    comp_bound, equality = complement_upper_bound(g)
    out["complement_upper"] = str(comp_bound)
    out["complement_equality_predicted"] = equality
    if is_connected(g) and g.n >= 2:
        out["cut_upper"] = str(cut_upper_bound(g))
    if g.n <= PERF_MAX_N and is_comparability_graph(g):
        out["perf_lower"] = str(theorem_perf_bound(g))
    return out
