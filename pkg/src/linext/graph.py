"""Simple undirected graphs on vertices ``0..n-1`` with bitset adjacency."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np

from linext import kernels

# Exact (exponential) routines refuse larger inputs.
MAX_EXACT_N = 16


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    """Base class for edge-list parse failures."""


class MalformedLineError(GraphParseError):
    pass


class VertexRangeError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class TooLargeError(GraphError):
    """Input exceeds the size bound of an exact algorithm."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph.

    ``edges`` is kept sorted with ``u < v`` in every pair; this is the canonical
    edge order that orientation bitmasks refer to.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        norm = []
        for u, v in self.edges:
            if u == v:
                raise SelfLoopError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise VertexRangeError(f"edge {u} {v} outside 0..{self.n - 1}")
            norm.append((min(u, v), max(u, v)))
        norm.sort()
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise DuplicateEdgeError(f"duplicate edge {a[0]} {a[1]}")
        adj = [0] * self.n
        for u, v in norm:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adj", tuple(adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            a[u, v] = a[v, u] = True
        return a

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @property
    def full(self) -> int:
        return (1 << self.n) - 1


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_exact(g: Graph, what: str):
    if g.n > MAX_EXACT_N:
        raise TooLargeError(f"{what} is exact only for n <= {MAX_EXACT_N} (got n={g.n})")


# -- construction -----------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: a header ``n m`` then ``m`` lines ``u v``."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise MalformedLineError("empty document")

    def ints(k, ln):
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedLineError(f"line {k + 1}: expected two integers, got {ln!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"line {k + 1}: expected two integers, got {ln!r}") from None

    n, m = ints(0, lines[0])
    if n < 1 or m < 0:
        raise MalformedLineError(f"line 1: bad header {lines[0]!r}")
    if len(lines) - 1 != m:
        raise MalformedLineError(f"header announces {m} edges, found {len(lines) - 1}")
    seen = set()
    edges = []
    for k, ln in enumerate(lines[1:], start=1):
        u, v = ints(k, ln)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"line {k + 1}: vertex out of range 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"line {k + 1}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdgeError(f"line {k + 1}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    return Graph(n, tuple(edges))


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph(n, tuple(tuple(e) for e in edges))


def empty_graph(n: int) -> Graph:
    return Graph(n, ())


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)) + ((0, n - 1),))


def complete_multipartite(sizes: Iterable[int]) -> Graph:
    part = []
    for k, s in enumerate(sizes):
        part += [k] * s
    n = len(part)
    return Graph(n, tuple((u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]))


# -- structure --------------------------------------------------------------

def complement(g: Graph) -> Graph:
    return Graph(g.n, tuple((u, v) for u, v in combinations(range(g.n), 2) if not g.has_edge(u, v)))


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> Graph:
    """Subgraph on ``s``, relabelled to ``0..|s|-1`` in increasing vertex order."""
    verts = bits(to_mask(s))
    if not verts:
        raise GraphError("induced subgraph of an empty vertex set")
    if verts[-1] >= g.n:
        raise VertexRangeError("vertex set outside the graph")
    pos = {v: i for i, v in enumerate(verts)}
    return Graph(len(verts), tuple((pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos))


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, g.full & ~(1 << v))


def components(g: Graph) -> list[int]:
    """Connected components as bitmasks, ordered by smallest vertex."""
    seen = 0
    comps = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def bipartition(g: Graph) -> tuple[frozenset, frozenset] | None:
    """The two colour classes of a connected bipartite graph; ``None`` if not bipartite.

    Vertex 0 is always in the first class.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("bipartition needs a connected graph")
    colour = [-1] * g.n
    colour[0] = 0
    queue = [0]
    for u in queue:
        for w in g.neighbors(u):
            if colour[w] < 0:
                colour[w] = 1 - colour[u]
                queue.append(w)
            elif colour[w] == colour[u]:
                return None
    return (
        frozenset(v for v in range(g.n) if colour[v] == 0),
        frozenset(v for v in range(g.n) if colour[v] == 1),
    )


def is_odd_cycle(g: Graph) -> bool:
    return (
        g.n >= 3 and g.n % 2 == 1 and g.m == g.n
        and all(g.degree(v) == 2 for v in range(g.n)) and is_connected(g)
    )


def is_complete_multipartite(g: Graph) -> bool:
    """True iff the complement is a disjoint union of cliques."""
    # in the complement, non-adjacency must be an equivalence relation
    non = [g.full & ~g.adj[v] for v in range(g.n)]  # includes v itself
    return all(non[u] == non[v] for v in range(g.n) for u in bits(non[v]))


# -- stable sets and colourings ----------------------------------------------

def is_stable(g: Graph, s: int) -> bool:
    return all(not (g.adj[v] & s) for v in bits(s))


@lru_cache(maxsize=256)
def stable_set_masks(g: Graph) -> tuple[int, ...]:
    """All stable sets (including the empty set) as bitmasks, increasing."""
    _check_exact(g, "stable set enumeration")
    out = []

    def grow(mask, allowed, start):
        out.append(mask)
        for v in range(start, g.n):
            if allowed >> v & 1:
                grow(mask | 1 << v, allowed & ~g.adj[v] & ~(1 << v), v + 1)

    grow(0, g.full, 0)
    out.sort()
    return tuple(out)


def enumerate_stable_sets(g: Graph) -> Iterator[frozenset]:
    for s in stable_set_masks(g):
        yield frozenset(bits(s))


@lru_cache(maxsize=256)
def stable_set_matrix(g: Graph) -> np.ndarray:
    """0/1 matrix with one row per stable set, rows in increasing mask order."""
    masks = stable_set_masks(g)
    return np.array([[(s >> v) & 1 for v in range(g.n)] for s in masks], dtype=float)


def max_weight_stable_set(g: Graph, w) -> frozenset:
    """A maximum-weight stable set; ties go to the smallest bitmask."""
    return frozenset(bits(max_weight_stable_mask(g, w)))


def max_weight_stable_mask(g: Graph, w) -> int:
    w = np.asarray(w, dtype=float)
    if w.shape != (g.n,):
        raise GraphError(f"expected {g.n} weights")
    scores = stable_set_matrix(g) @ w
    # argmax returns the first maximum and rows are sorted by mask
    return stable_set_masks(g)[int(np.argmax(scores))]


def independence_number(g: Graph) -> int:
    _check_exact(g, "independence_number")
    adj = g.adj

    @lru_cache(maxsize=None)
    def alpha(s):
        if not s:
            return 0
        # a vertex of degree <= 1 inside s can always be taken
        best_v, best_d = -1, -1
        for v in bits(s):
            d = (adj[v] & s).bit_count()
            if d <= 1:
                return 1 + alpha(s & ~adj[v] & ~(1 << v))
            if d > best_d:
                best_v, best_d = v, d
        v = best_v
        return max(alpha(s & ~(1 << v)), 1 + alpha(s & ~adj[v] & ~(1 << v)))

    return alpha(g.full)


def _independent_set_counts(g: Graph) -> list[int]:
    """Number of stable subsets of every vertex subset (empty set included)."""
    size = 1 << g.n
    cnt = [0] * size
    cnt[0] = 1
    for s in range(1, size):
        low = s & -s
        v = low.bit_length() - 1
        cnt[s] = cnt[s ^ low] + cnt[s & ~g.adj[v] & ~low]
    return cnt


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by inclusion-exclusion over independent-set counts."""
    _check_exact(g, "chromatic_number")
    if g.m == 0:
        return 1
    cnt = _independent_set_counts(g)
    n = g.n
    signs = [-1 if (n - s.bit_count()) & 1 else 1 for s in range(1 << n)]
    power = list(cnt)
    for k in range(1, n + 1):
        # number of k-tuples of stable sets covering V
        if sum(sg * p for sg, p in zip(signs, power)) > 0:
            return k
        power = [p * c for p, c in zip(power, cnt)]
    raise AssertionError("n colours always suffice")


def chromatic_numbers_of_subsets(g: Graph) -> list[int]:
    """χ(G[S]) for every vertex subset S (χ of the empty set is 0)."""
    _check_exact(g, "chromatic_numbers_of_subsets")
    size = 1 << g.n
    stable = bytearray(size)
    stable[0] = 1
    for s in range(1, size):
        low = s & -s
        v = low.bit_length() - 1
        stable[s] = stable[s ^ low] and not g.adj[v] & s
    chi = [0] * size
    for s in range(1, size):
        low = s & -s
        rest = s ^ low
        best = g.n
        # colour class containing the lowest vertex
        sub = rest
        while True:
            cls = sub | low
            if stable[cls]:
                c = chi[s ^ cls] + 1
                if c < best:
                    best = c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        chi[s] = best
    return chi


def optimal_coloring(g: Graph) -> list[int]:
    """A proper colouring with χ(G) colours (colours ``0..χ-1``), found by backtracking."""
    k = chromatic_number(g)
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colour = [-1] * g.n

    def place(i, used):
        if i == g.n:
            return True
        v = order[i]
        taken = {colour[u] for u in g.neighbors(v)}
        for c in range(min(used + 1, k)):
            if c not in taken:
                colour[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
        colour[v] = -1
        return False

    if not place(0, 0):
        raise AssertionError("no colouring with chromatic_number colours")
    return colour


def greedy_coloring(g: Graph) -> list[int]:
    """Greedy colouring in order of decreasing degree (valid for any n)."""
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    colour = [-1] * g.n
    for v in order:
        taken = {colour[u] for u in g.neighbors(v)}
        c = 0
        while c in taken:
            c += 1
        colour[v] = c
    return colour


def class_sizes(colouring: list[int]) -> list[int]:
    k = max(colouring) + 1 if colouring else 0
    sizes = [0] * k
    for c in colouring:
        sizes[c] += 1
    return sorted(sizes, reverse=True)


# -- acyclic orientations count ----------------------------------------------

def count_acyclic_orientations(g: Graph) -> int:
    """Number of acyclic orientations (product over components)."""
    _check_exact(g, "count_acyclic_orientations")
    total = 1
    for comp in components(g):
        h = induced_subgraph(g, comp)
        if h.m:
            total *= kernels.acyclic_count(h.n, h.adj)
    return total
