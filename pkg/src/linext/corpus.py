"""Graph, poset and orientation families used by the verification suites."""
from __future__ import annotations

from itertools import combinations
from typing import Iterator

import networkx as nx
import numpy as np

from linext.graph import (
    Graph,
    bipartition,
    complete_multipartite,
    cycle_graph,
    from_edges,
    is_connected,
    path_graph,
)
from linext.optimizer import is_comparability_graph
from linext.orientations import AcyclicOrientation, orientation_from_bijection
from linext.poset import Poset, comparability_graph


def _from_nx(G) -> Graph:
    return from_edges(G.number_of_nodes(), G.edges())


def atlas_graphs(max_n: int = 6, min_n: int = 1) -> list[Graph]:
    """One graph per isomorphism class, ``min_n <= n <= max_n <= 7`` (networkx atlas)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    return [_from_nx(G) for G in nx.graph_atlas_g() if min_n <= G.number_of_nodes() <= max_n]


def labeled_graphs(n: int) -> Iterator[Graph]:
    """Every graph on the labelled vertex set ``0..n-1``."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(e for k, e in enumerate(pairs) if mask >> k & 1))


def connected_bipartite_graphs(max_n: int = 6) -> list[Graph]:
    return [g for g in atlas_graphs(max_n, 2) if is_connected(g) and bipartition(g) is not None]


def random_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform labelled tree from a random Prüfer sequence."""
    if n == 1:
        return Graph(1, ())
    if n == 2:
        return Graph(2, ((0, 1),))
    seq = [int(x) for x in rng.integers(0, n, n - 2)]
    return _from_nx(nx.from_prufer_sequence(seq))


def random_poset(n: int, rng: np.random.Generator, density: float | None = None) -> Poset:
    """Transitive closure of a random DAG, relabelled by a random permutation."""
    q = density if density is not None else float(rng.uniform(0.2, 0.6))
    perm = [int(x) for x in rng.permutation(n)]
    pairs = [(perm[i], perm[j]) for i, j in combinations(range(n), 2) if rng.random() < q]
    return Poset.from_relations(n, pairs)


def random_orientation(n: int, rng: np.random.Generator, p: float | None = None) -> AcyclicOrientation:
    """A G(n, p) graph oriented by a uniformly random vertex labelling."""
    q = p if p is not None else float(rng.uniform(0.2, 0.8))
    edges = [e for e in combinations(range(n), 2) if rng.random() < q]
    g = Graph(n, tuple(edges))
    labels = [int(x) + 1 for x in rng.permutation(n)]
    return orientation_from_bijection(g, labels)


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def comparability_corpus(rng: np.random.Generator, randoms: int = 20, max_n: int = 7) -> list[Graph]:
    """Paths, even cycles, complete multipartite graphs, and random comparability graphs.

    The random members are comparability graphs of random posets, kept only
    when the transitive-orientation search confirms them.
    """
    out: list[Graph] = [path_graph(n) for n in range(2, max_n + 1)]
    out += [cycle_graph(n) for n in range(4, max_n + 1, 2)]
    for n in range(2, max_n + 1):
        for sizes in _partitions(n):
            if len(sizes) > 1:
                out.append(complete_multipartite(sizes))
    found = 0
    while found < randoms:
        n = int(rng.integers(3, max_n + 1))
        g = comparability_graph(random_poset(n, rng))
        if g.m and is_comparability_graph(g):
            out.append(g)
            found += 1
    return out

