"""Brute-force reference implementations, independent of the package internals.

Everything here works on plain vertex counts, edge lists and permutations,
so a bug in the package's bitmask machinery cannot leak into an oracle.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter


def has_cycle(n, arcs):
    succ = {v: [] for v in range(n)}
    for a, b in arcs:
        succ[a].append(b)
    state = [0] * n  # 0 new, 1 on stack, 2 done

    def visit(v):
        state[v] = 1
        for w in succ[v]:
            if state[w] == 1 or (state[w] == 0 and visit(w)):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and visit(v) for v in range(n))


def orientations(n, edges):
    """All acyclic orientations as frozensets of arcs."""
    edges = list(edges)
    out = []
    for dirs in itertools.product((0, 1), repeat=len(edges)):
        arcs = [(u, v) if d == 0 else (v, u) for (u, v), d in zip(edges, dirs)]
        if not has_cycle(n, arcs):
            out.append(frozenset(arcs))
    return out


def linext(n, relations):
    """Number of bijections onto 1..n respecting every pair ``i < j``."""
    rel = list(relations)
    return sum(1 for perm in itertools.permutations(range(1, n + 1)) if all(perm[i] < perm[j] for i, j in rel))


def extension_counts(n, edges):
    """Each permutation induces one orientation; tally how many induce each."""
    edges = list(edges)
    tally = Counter()
    for perm in itertools.permutations(range(n)):
        tally[frozenset((u, v) if perm[u] < perm[v] else (v, u) for u, v in edges)] += 1
    return tally


def epsilon(n, edges):
    """``(ε, argmax)`` with argmax a set of arc frozensets."""
    tally = extension_counts(n, edges)
    best = max(tally.values())
    return best, {o for o, c in tally.items() if c == best}


def is_transitive(arcs):
    arcs = set(arcs)
    return all((a, d) in arcs for a, b in arcs for c, d in arcs if b == c)


def is_comparability(n, edges):
    return any(is_transitive(o) for o in orientations(n, edges))


def is_bipartite(n, edges):
    return any(
        all(col[u] != col[v] for u, v in edges) for col in itertools.product((0, 1), repeat=n)
    )


def chromatic(n, edges):
    for k in range(1, n + 1):
        for col in itertools.product(range(k), repeat=n):
            if all(col[u] != col[v] for u, v in edges):
                return k
    return 0


def stable_sets(n, edges):
    es = {frozenset(e) for e in edges}
    out = []
    for r in range(n + 1):
        for s in itertools.combinations(range(n), r):
            if all(frozenset(p) not in es for p in itertools.combinations(s, 2)):
                out.append(frozenset(s))
    return out


def alpha(n, edges):
    return max(len(s) for s in stable_sets(n, edges))


def is_complete_multipartite(n, edges):
    es = {frozenset(e) for e in edges}
    # non-adjacency (plus equality) must be transitive
    for a, b, c in itertools.permutations(range(n), 3):
        if frozenset((a, b)) not in es and frozenset((b, c)) not in es and frozenset((a, c)) in es:
            return False
    return True


def complement_edges(n, edges):
    es = {frozenset(e) for e in edges}
    return [p for p in itertools.combinations(range(n), 2) if frozenset(p) not in es]


def closure(n, relations):
    rel = set(relations)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def poset_of(n, arcs):
    return closure(n, arcs)


def hull_volume(n, edges):
    """Floating-point qhull volume of the stable polytope."""
    import numpy as np
    from scipy.spatial import ConvexHull

    pts = [[1 if v in s else 0 for v in range(n)] for s in stable_sets(n, edges)]
    return ConvexHull(np.array(pts, dtype=float)).volume


def euler_zigzag(m):
    """Alternating permutations of length m (Euler zigzag numbers), by brute force."""
    return sum(
        1
        for perm in itertools.permutations(range(m))
        if all((perm[i] < perm[i + 1]) == (i % 2 == 0) for i in range(m - 1))
    )


def factorial(n):
    return math.factorial(n)
