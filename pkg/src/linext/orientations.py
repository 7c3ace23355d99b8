"""Acyclic orientations as values: enumeration, classification, degree statistics."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from linext import kernels
from linext.graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    bipartition,
    bits,
    is_connected,
    is_odd_cycle,
)


class OrientationError(ValueError):
    pass


class CyclicOrientationError(OrientationError):
    pass


@dataclass(frozen=True)
class AcyclicOrientation:
    """Directions of ``host.edges`` packed into a bitmask.

    Bit ``k`` clear means edge ``(u, v) = host.edges[k]`` is directed ``u -> v``
    (smaller vertex first); set means ``v -> u``. Equality and hashing go through
    ``(host, mask)``.
    """

    host: Graph
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.host.m:
            raise OrientationError("mask has bits beyond the edge count")
        if not _acyclic(self.host.n, self.succ):
            raise CyclicOrientationError("orientation contains a directed cycle")

    @classmethod
    def from_arcs(cls, host: Graph, arcs) -> "AcyclicOrientation":
        mask = 0
        seen = set()
        for a, b in arcs:
            key = (min(a, b), max(a, b))
            k = host.edge_index.get(key)
            if k is None:
                raise OrientationError(f"({a}, {b}) is not an edge of the host")
            if k in seen:
                raise OrientationError(f"edge {key} oriented twice")
            seen.add(k)
            if a > b:
                mask |= 1 << k
        if len(seen) != host.m:
            raise OrientationError("every edge needs a direction")
        return cls(host, mask)

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (v, u) if self.mask >> k & 1 else (u, v)
            for k, (u, v) in enumerate(self.host.edges)
        )

    @cached_property
    def succ(self) -> tuple[int, ...]:
        out = [0] * self.host.n
        for k, (u, v) in enumerate(self.host.edges):
            if self.mask >> k & 1:
                out[v] |= 1 << u
            else:
                out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        out = [0] * self.host.n
        for a, b in self.arcs:
            out[b] |= 1 << a
        return tuple(out)

    def has_arc(self, a: int, b: int) -> bool:
        return bool(self.succ[a] >> b & 1)

    def outdeg(self, v: int) -> int:
        return self.succ[v].bit_count()

    def indeg(self, v: int) -> int:
        return self.pred[v].bit_count()

    def reversed(self) -> "AcyclicOrientation":
        return AcyclicOrientation(self.host, self.mask ^ ((1 << self.host.m) - 1))

    def to_json(self) -> str:
        return json.dumps([list(a) for a in self.arcs])

    @classmethod
    def from_json(cls, host: Graph, text: str) -> "AcyclicOrientation":
        return cls.from_arcs(host, [tuple(p) for p in json.loads(text)])

    def __repr__(self):
        return f"AcyclicOrientation({list(self.arcs)})"


def _acyclic(n, succ):
    indeg = [0] * n
    for s in succ:
        for b in bits(s):
            indeg[b] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for b in bits(succ[v]):
            indeg[b] -= 1
            if indeg[b] == 0:
                stack.append(b)
    return seen == n


@dataclass(frozen=True)
class TripleStats:
    tri: int
    inc: int
    com: int


def orientation_from_bijection(g: Graph, f: Sequence[int]) -> AcyclicOrientation:
    """Direct every edge from the smaller to the larger label; ``f[v]`` in ``1..n``."""
    if sorted(f) != list(range(1, g.n + 1)):
        raise OrientationError("f must be a bijection onto 1..n")
    return AcyclicOrientation.from_arcs(g, [(u, v) if f[u] < f[v] else (v, u) for u, v in g.edges])


def induced_mask(g: Graph, labels: Sequence[int]) -> int:
    """Orientation mask induced by any injective labelling (no validation)."""
    mask = 0
    for k, (u, v) in enumerate(g.edges):
        if labels[u] > labels[v]:
            mask |= 1 << k
    return mask


def enumerate_acyclic_orientations(
    g: Graph, shard: tuple[int, int] | None = None
) -> Iterator[AcyclicOrientation]:
    """Every acyclic orientation once, in increasing mask order.

    ``shard=(k, value)`` restricts to masks whose top ``k`` edge bits equal
    ``value``; the ``2**k`` shards partition the full stream.
    """
    top_bits, top_value = shard if shard is not None else (0, 0)
    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    masks, _ = kernels.scan_orientations(g.n, eu, ev, False, top_bits, top_value)
    for mask in masks:
        yield AcyclicOrientation(g, mask)


def bipartite_orientations(g: Graph) -> tuple[AcyclicOrientation, AcyclicOrientation]:
    """``(down, up)``: all edges from the first colour class to the second, then the reverse.

    The first colour class is the one containing vertex 0.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("bipartite orientations need a connected graph")
    parts = bipartition(g)
    if parts is None:
        raise GraphError("graph is not bipartite")
    first = parts[0]
    down = AcyclicOrientation.from_arcs(g, [(u, v) if u in first else (v, u) for u, v in g.edges])
    return down, down.reversed()


def count_directed_two_paths(o: AcyclicOrientation) -> int:
    return sum(o.indeg(v) * o.outdeg(v) for v in range(o.host.n))


def is_almost_bipartite(o: AcyclicOrientation) -> bool:
    if not is_odd_cycle(o.host):
        raise GraphError("almost-bipartite orientations are defined on odd cycles only")
    return count_directed_two_paths(o) == 1


def is_transitive(o: AcyclicOrientation) -> bool:
    """Every directed 2-path u->v->w is closed by the arc u->w."""
    for v in range(o.host.n):
        for u in bits(o.pred[v]):
            if o.succ[v] & ~o.succ[u]:
                return False
    return True


def triple_stats(o: AcyclicOrientation) -> TripleStats:
    adj = o.host.adj
    tri = com = inc = 0
    for v in range(o.host.n):
        outs, ins = o.succ[v], o.pred[v]
        for u in bits(ins):
            closed = o.succ[v] & o.succ[u]
            tri += closed.bit_count()
            com += (o.succ[v] & ~o.succ[u]).bit_count()
        # unordered pairs {x, y} sharing source (or sink) v with x, y non-adjacent
        for group in (outs, ins):
            for x in bits(group):
                inc += (group & ~adj[x] & ~((1 << (x + 1)) - 1)).bit_count()
    return TripleStats(tri, inc, com)


def zonotope_vertex(o: AcyclicOrientation) -> tuple[int, ...]:
    return tuple(o.outdeg(v) - o.indeg(v) for v in range(o.host.n))


def squared_norm(o: AcyclicOrientation) -> int:
    return sum(x * x for x in zonotope_vertex(o))
