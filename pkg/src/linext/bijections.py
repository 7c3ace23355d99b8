"""Label-swapping maps that move linear extensions toward an optimal orientation.

A labelling is a tuple ``f`` with ``f[v]`` the label of vertex ``v``. Every
map here is a composition of transpositions of labels, so it only depends on
how labels compare, never on their actual values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from linext.graph import Graph, GraphError, bipartition, bits, is_connected, is_odd_cycle
from linext.orientations import (
    AcyclicOrientation,
    bipartite_orientations,
    induced_mask,
)


class BijectionError(ValueError):
    pass


def rev(f: Sequence[int]) -> tuple[int, ...]:
    n = len(f)
    return tuple(n + 1 - x for x in f)


def rev_uv(f: Sequence[int], u: int, v: int) -> tuple[int, ...]:
    if u == v:
        raise BijectionError("rev_uv needs two different vertices")
    out = list(f)
    out[u], out[v] = f[v], f[u]
    return tuple(out)


@dataclass
class ThetaTrace:
    swaps: list[tuple[int, int]] = field(default_factory=list)
    orientations: list[int] = field(default_factory=list)  # masks O_1, O_2, ...
    b_sets: list[int] = field(default_factory=list)  # bitmasks B_1, B_2, ...

    def to_json(self) -> str:
        return json.dumps({
            "swaps": [list(s) for s in self.swaps],
            "orientations": self.orientations,
            "b_sets": [bits(b) for b in self.b_sets],
        })


def _differing_vertices(g: Graph, mask_a: int, mask_b: int) -> int:
    diff = mask_a ^ mask_b
    out = 0
    for k in bits(diff):
        u, v = g.edges[k]
        out |= (1 << u) | (1 << v)
    return out


def _extends(g: Graph, mask: int, labels: Sequence[int]) -> bool:
    return induced_mask(g, labels) == mask


def default_target(g: Graph) -> AcyclicOrientation:
    """The bipartite orientation with every edge leaving vertex 0's colour class."""
    return bipartite_orientations(g)[0]


def _check_bipartite(g: Graph):
    if not is_connected(g):
        raise GraphError("theta needs a connected graph")
    if bipartition(g) is None:
        raise GraphError("theta needs a bipartite graph")


def _theta_core(g: Graph, target: int, labels: Sequence[int]) -> tuple[tuple[int, ...], ThetaTrace]:
    f = list(labels)
    trace = ThetaTrace()
    for _ in range(g.n + 1):
        mask = induced_mask(g, f)
        b = _differing_vertices(g, mask, target)
        trace.orientations.append(mask)
        trace.b_sets.append(b)
        if not b:
            return tuple(f), trace
        members = bits(b)
        u = min(members, key=lambda x: f[x])
        v = max(members, key=lambda x: f[x])
        f[u], f[v] = f[v], f[u]
        trace.swaps.append((u, v))
    raise AssertionError("theta did not terminate")


def theta(
    g: Graph,
    o: AcyclicOrientation,
    f: Sequence[int],
    target: AcyclicOrientation | None = None,
) -> tuple[tuple[int, ...], ThetaTrace]:
    """Map an extension of ``o`` to an extension of a bipartite orientation.

    Repeatedly take the vertices touching an edge that still disagrees with the
    target, and swap the labels of the lowest- and highest-labelled of them.
    ``target`` defaults to :func:`default_target`.
    """
    _check_bipartite(g)
    target = target if target is not None else default_target(g)
    if o.host != g or target.host != g:
        raise BijectionError("orientations must live on g")
    if not _extends(g, o.mask, f) or sorted(f) != list(range(1, g.n + 1)):
        raise BijectionError("f is not a linear extension of o")
    return _theta_core(g, target.mask, f)


def theta_inverse(
    g: Graph,
    o: AcyclicOrientation,
    gext: Sequence[int],
    target: AcyclicOrientation | None = None,
) -> tuple[int, ...] | None:
    """The unique extension of ``o`` that ``theta`` sends to ``gext``, if any.

    Undoes the swaps from the outside in: among the vertices touching an edge
    where the current labelling disagrees with ``o``, the highest label sits on
    the vertex that was lowest before the swap.
    """
    _check_bipartite(g)
    target = target if target is not None else default_target(g)
    if not _extends(g, target.mask, gext) or sorted(gext) != list(range(1, g.n + 1)):
        raise BijectionError("gext is not a linear extension of the target")
    h = list(gext)
    for _ in range(g.n + 1):
        c = _differing_vertices(g, induced_mask(g, h), o.mask)
        if not c:
            break
        members = bits(c)
        hi = max(members, key=lambda x: h[x])
        lo = min(members, key=lambda x: h[x])
        if hi == lo:
            return None
        h[hi], h[lo] = h[lo], h[hi]
    else:
        return None
    cand = tuple(h)
    if not _extends(g, o.mask, cand):
        return None
    if _theta_core(g, target.mask, cand)[0] != tuple(gext):
        return None
    return cand


# -- odd cycles --------------------------------------------------------------

def canonical_two_path(o: AcyclicOrientation) -> tuple[int, int, int]:
    """The directed 2-path ``u -> v -> w`` with smallest middle, then smallest source."""
    for v in range(o.host.n):
        if o.pred[v] and o.succ[v]:
            u = bits(o.pred[v])[0]
            w = bits(o.succ[v])[0]
            return u, v, w
    raise BijectionError("orientation has no directed 2-path")


def _reduced_cycle(c: Graph, u: int, v: int, w: int):
    """Even cycle on ``V∖{v}`` with the chord ``{u, w}``; returns it and the old labels."""
    keep = [x for x in range(c.n) if x != v]
    pos = {x: i for i, x in enumerate(keep)}
    edges = [(pos[a], pos[b]) for a, b in c.edges if v not in (a, b)]
    if not c.has_edge(u, w):  # on a triangle the chord is already there
        edges.append((pos[u], pos[w]))
    return Graph(len(keep), tuple(edges)), keep, pos


def almost_bipartite_orientation(c: Graph, u: int, v: int, w: int) -> AcyclicOrientation:
    """The orientation of an odd cycle whose only directed 2-path is ``u -> v -> w``."""
    if not is_odd_cycle(c):
        raise GraphError("expected an odd cycle")
    h, keep, pos = _reduced_cycle(c, u, v, w)
    sources = _bip_class_with_source(h, pos[u], pos[w])
    arcs = [(u, v), (v, w)]
    for a, b in c.edges:
        if v in (a, b):
            continue
        arcs.append((a, b) if pos[a] in sources else (b, a))
    return AcyclicOrientation.from_arcs(c, arcs)


def _bip_class_with_source(h: Graph, su: int, sw: int) -> frozenset:
    first, second = bipartition(h)
    return first if su in first else second


def theta_prime(c: Graph, o: AcyclicOrientation, f: Sequence[int]) -> tuple[int, ...]:
    """Map an extension of ``o`` to an extension of the almost-bipartite orientation
    sharing ``o``'s canonical 2-path; the middle vertex keeps its label."""
    if not is_odd_cycle(c):
        raise GraphError("theta_prime needs an odd cycle")
    if o.host != c or not _extends(c, o.mask, f) or sorted(f) != list(range(1, c.n + 1)):
        raise BijectionError("f is not a linear extension of o")
    u, v, w = canonical_two_path(o)
    h, keep, pos = _reduced_cycle(c, u, v, w)
    sources = _bip_class_with_source(h, pos[u], pos[w])
    target = AcyclicOrientation.from_arcs(
        h, [(a, b) if a in sources else (b, a) for a, b in h.edges]
    )
    # rank-compress the restricted labels onto 1..n-1 for the bipartite map
    sub = [f[x] for x in keep]
    ranks = sorted(sub)
    rank_of = {val: i + 1 for i, val in enumerate(ranks)}
    compressed = [rank_of[val] for val in sub]
    o_sub = AcyclicOrientation(h, induced_mask(h, compressed))
    mapped, _ = theta(h, o_sub, compressed, target)
    out = [0] * c.n
    out[v] = f[v]
    for i, x in enumerate(keep):
        out[x] = ranks[mapped[i] - 1]
    return tuple(out)


def theta_prime_target(o: AcyclicOrientation) -> AcyclicOrientation:
    u, v, w = canonical_two_path(o)
    return almost_bipartite_orientation(o.host, u, v, w)
