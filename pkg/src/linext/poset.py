"""Finite posets on ``0..n-1``: linear extensions, natural flows, recurrences."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from linext import kernels
from linext.graph import (
    MAX_EXACT_N,
    Graph,
    MalformedLineError,
    TooLargeError,
    VertexRangeError,
    bits,
    to_mask,
)
from linext.orientations import AcyclicOrientation


class PosetError(ValueError):
    pass


# natural-flow terminals
SOURCE = "0^"
SINK = "1^"


@dataclass(frozen=True)
class Poset:
    """Strict partial order; ``below[j]`` is the bitmask ``{i : i < j}``."""

    n: int
    below: tuple[int, ...]

    def __post_init__(self):
        if len(self.below) != self.n:
            raise PosetError("below must have one entry per element")
        for j, b in enumerate(self.below):
            if b >> j & 1:
                raise PosetError(f"relation is not irreflexive at {j}")
            if b >> self.n:
                raise PosetError("relation mentions elements outside 0..n-1")
            for i in bits(b):
                if self.below[i] & ~b:
                    raise PosetError("relation is not transitively closed")
                if self.below[i] >> j & 1:
                    raise PosetError(f"relation is not antisymmetric on {i}, {j}")

    @classmethod
    def from_relations(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Poset":
        """Transitive closure of the pairs ``(i, j)`` meaning ``i < j``."""
        direct = [0] * n
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise PosetError(f"pair ({i}, {j}) outside 0..{n - 1}")
            direct[j] |= 1 << i
        return cls(n, _closure(n, direct))

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls(n, tuple((1 << j) - 1 for j in range(n)))

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls(n, (0,) * n)

    def lt(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.lt(i, j) or self.lt(j, i)

    @cached_property
    def above(self) -> tuple[int, ...]:
        out = [0] * self.n
        for j, b in enumerate(self.below):
            for i in bits(b):
                out[i] |= 1 << j
        return tuple(out)

    @cached_property
    def covers_below(self) -> tuple[int, ...]:
        """``covers_below[j]``: elements covered by ``j``."""
        out = []
        for j, b in enumerate(self.below):
            inner = 0
            for i in bits(b):
                inner |= self.below[i]
            out.append(b & ~inner)
        return tuple(out)

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in bits(self.covers_below[j])]

    def relations(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in bits(self.below[j])]

    def minimal(self) -> int:
        return to_mask(v for v in range(self.n) if not self.below[v])

    def maximal(self) -> int:
        return to_mask(v for v in range(self.n) if not self.above[v])

    def matrix(self) -> np.ndarray:
        lt = np.zeros((self.n, self.n), dtype=bool)
        for i, j in self.relations():
            lt[i, j] = True
        return lt

    def restrict(self, s: int) -> tuple["Poset", list[int]]:
        """Induced subposet on bitmask ``s``, relabelled; returns it with the old labels."""
        verts = bits(s)
        pos = {v: k for k, v in enumerate(verts)}
        below = []
        for v in verts:
            below.append(to_mask(pos[i] for i in bits(self.below[v] & s)))
        return Poset(len(verts), tuple(below)), verts

    def delete(self, v: int) -> "Poset":
        return self.restrict(((1 << self.n) - 1) & ~(1 << v))[0]

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "relations": [list(p) for p in self.relations()]})

    @classmethod
    def from_json(cls, text: str) -> "Poset":
        doc = json.loads(text)
        if isinstance(doc, dict):
            n, pairs = doc["n"], doc["relations"]
        else:
            pairs = doc
            n = 1 + max((max(p) for p in pairs), default=-1)
        return cls.from_relations(n, [tuple(p) for p in pairs])


def _closure(n, direct):
    below = list(direct)
    # process in an order where predecessors are finished first
    order = _topological(n, below)
    if order is None:
        raise PosetError("relations contain a cycle")
    for v in order:
        acc = below[v]
        for i in bits(below[v]):
            acc |= below[i]
        below[v] = acc
    return tuple(below)


def _topological(n, below):
    remaining = (1 << n) - 1
    done = 0
    order = []
    while remaining:
        ready = [v for v in bits(remaining) if below[v] & ~done == 0]
        if not ready:
            return None
        for v in ready:
            order.append(v)
            done |= 1 << v
            remaining &= ~(1 << v)
    return order


def _check(p: Poset, what: str):
    if p.n > MAX_EXACT_N:
        raise TooLargeError(f"{what} is exact only for n <= {MAX_EXACT_N} (got n={p.n})")


def poset_from_orientation(o: AcyclicOrientation) -> Poset:
    return Poset(o.host.n, _closure(o.host.n, list(o.pred)))


def comparability_graph(p: Poset) -> Graph:
    return Graph(p.n, tuple((i, j) if i < j else (j, i) for i, j in p.relations()))


def count_linear_extensions(p: Poset) -> int:
    _check(p, "count_linear_extensions")
    return kernels.linext_count(p.n, p.covers_below)


def enumerate_linear_extensions(p: Poset) -> Iterator[tuple[int, ...]]:
    """Every extension as a label vector ``(σ(0), ..., σ(n-1))``, lexicographic order."""
    _check(p, "enumerate_linear_extensions")
    out = []
    labels = [0] * p.n

    def place(placed, k):
        if k == p.n:
            out.append(tuple(labels))
            return
        for v in range(p.n):
            if not placed >> v & 1 and p.below[v] & ~placed == 0:
                labels[v] = k + 1
                place(placed | 1 << v, k + 1)

    place(0, 0)
    out.sort()
    return iter(out)


def is_linear_extension(p: Poset, sigma: Sequence[int]) -> bool:
    if sorted(sigma) != list(range(1, p.n + 1)):
        return False
    return all(sigma[i] < sigma[j] for i, j in p.relations())


def brute_force_linear_extensions(p: Poset) -> int:
    """Count by testing all ``n!`` bijections (test oracle)."""
    rel = p.relations()
    total = 0
    for perm in permutations(range(1, p.n + 1)):
        if all(perm[i] < perm[j] for i, j in rel):
            total += 1
    return total


# -- chains, antichains, cutsets ---------------------------------------------

def is_antichain(p: Poset, s: Iterable[int] | int) -> bool:
    s = to_mask(s)
    return all(not (p.below[v] & s) for v in bits(s))


def antichains(p: Poset) -> Iterator[frozenset]:
    """All antichains (the empty set included), in increasing bitmask order."""
    _check(p, "antichains")
    for s in antichain_masks(p):
        yield frozenset(bits(s))


def antichain_masks(p: Poset) -> list[int]:
    comp = [p.below[v] | p.above[v] for v in range(p.n)]
    out = []

    def grow(mask, allowed, start):
        out.append(mask)
        for v in range(start, p.n):
            if allowed >> v & 1:
                grow(mask | 1 << v, allowed & ~comp[v] & ~(1 << v), v + 1)

    grow(0, (1 << p.n) - 1, 0)
    out.sort()
    return out


def maximal_chains(p: Poset) -> list[int]:
    """Maximal chains as bitmasks (paths from a minimal to a maximal element via covers)."""
    cover_up = [0] * p.n
    for i, j in p.cover_pairs():
        cover_up[i] |= 1 << j
    out = []

    def walk(v, acc):
        if not cover_up[v]:
            out.append(acc)
            return
        for w in bits(cover_up[v]):
            walk(w, acc | 1 << w)

    for v in bits(p.minimal()):
        walk(v, 1 << v)
    return out


def is_cutset(p: Poset, s: Iterable[int] | int) -> bool:
    """True iff ``s`` meets every maximal chain."""
    s = to_mask(s)
    # a maximal chain avoiding s exists iff a min-to-max cover path avoids s
    order = _topological(p.n, list(p.below))
    good = 0  # vertices outside s reachable from a minimal element avoiding s
    for v in order:
        if s >> v & 1:
            continue
        cb = p.covers_below[v]
        if not cb or cb & good:
            good |= 1 << v
    return not (good & p.maximal())


# -- natural flows -----------------------------------------------------------

@dataclass(frozen=True)
class NaturalFlow:
    """Nonnegative integer flow on the augmented digraph of an orientation."""

    n: int
    values: Mapping[tuple, int]

    def inflow(self, v) -> int:
        return sum(c for (a, b), c in self.values.items() if b == v)

    def outflow(self, v) -> int:
        return sum(c for (a, b), c in self.values.items() if a == v)

    def is_conserved(self) -> bool:
        return all(self.inflow(v) == self.outflow(v) for v in range(self.n))

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.values.values())


def _downset_counts(p: Poset):
    """Forward/backward extension counts over all downsets reachable from the empty set."""
    full = (1 << p.n) - 1
    fwd = {0: 1}
    layers = [[0]]
    for _ in range(p.n):
        nxt = {}
        for s in layers[-1]:
            c = fwd[s]
            for v in range(p.n):
                if not s >> v & 1 and p.below[v] & ~s == 0:
                    t = s | 1 << v
                    nxt[t] = nxt.get(t, 0) + c
        fwd.update(nxt)
        layers.append(sorted(nxt))
    bwd = {full: 1}
    for layer in reversed(layers[:-1]):
        for s in layer:
            total = 0
            for v in range(p.n):
                if not s >> v & 1 and p.below[v] & ~s == 0:
                    total += bwd[s | 1 << v]
            bwd[s] = total
    return fwd, bwd


def adjacency_counts(p: Poset) -> dict[tuple[int, int], int]:
    """``(u, v) -> #{σ : σ(v) = σ(u) + 1}`` for every ordered pair that occurs."""
    _check(p, "adjacency_counts")
    fwd, bwd = _downset_counts(p)
    out: dict[tuple[int, int], int] = {}
    for s, c in fwd.items():
        for u in range(p.n):
            if s >> u & 1 or p.below[u] & ~s:
                continue
            su = s | 1 << u
            for v in range(p.n):
                if su >> v & 1 or p.below[v] & ~su:
                    continue
                out[(u, v)] = out.get((u, v), 0) + c * bwd[su | 1 << v]
    return out


def natural_flow(o: AcyclicOrientation) -> NaturalFlow:
    """The flow counting, per augmented arc, extensions placing its ends consecutively."""
    p = poset_from_orientation(o)
    n = p.n
    adj = adjacency_counts(p)
    fwd, bwd = _downset_counts(p)
    full = (1 << n) - 1
    values: dict[tuple, int] = {}
    for a, b in o.arcs:
        values[(a, b)] = adj.get((a, b), 0)
    for v in range(n):
        if not o.pred[v]:
            values[(SOURCE, v)] = bwd[1 << v]
        if not o.succ[v]:
            values[(v, SINK)] = fwd[full & ~(1 << v)]
    return NaturalFlow(n, values)


def natural_flow_by_enumeration(o: AcyclicOrientation) -> NaturalFlow:
    """Same flow tallied over explicit extensions (test oracle)."""
    p = poset_from_orientation(o)
    n = p.n
    values: dict[tuple, int] = {}
    for a, b in o.arcs:
        values[(a, b)] = 0
    for v in range(n):
        if not o.pred[v]:
            values[(SOURCE, v)] = 0
        if not o.succ[v]:
            values[(v, SINK)] = 0
    for sigma in enumerate_linear_extensions(p):
        for (a, b) in values:
            if a == SOURCE:
                hit = sigma[b] == 1
            elif b == SINK:
                hit = sigma[a] == n
            else:
                hit = sigma[b] == sigma[a] + 1
            if hit:
                values[(a, b)] += 1
    return NaturalFlow(n, values)


def net_flow(f: NaturalFlow) -> int:
    return f.outflow(SOURCE)


# -- the deletion recurrence ---------------------------------------------------

@dataclass(frozen=True)
class RecurrenceSides:
    lhs: int
    rhs: int
    s_is_antichain: bool
    s_is_cutset: bool


def recurrence_sides(p: Poset, s: Iterable[int] | int) -> RecurrenceSides:
    """``e(P)`` against ``Σ_{v∈s} e(P∖v)``, plus how ``s`` is classified."""
    s = to_mask(s)
    if not s:
        raise PosetError("s must be nonempty")
    lhs = count_linear_extensions(p)
    rhs = sum(count_linear_extensions(p.delete(v)) for v in bits(s))
    return RecurrenceSides(lhs, rhs, is_antichain(p, s), is_cutset(p, s))


def trans_map(p: Poset, v: int, sigma: Mapping[int, int]) -> tuple[int, ...]:
    """Insert ``v`` right after its last predecessor in an extension of ``P∖v``.

    ``sigma`` maps every element except ``v`` to ``1..n-1``. A minimal ``v``
    gets label 1.
    """
    others = [x for x in range(p.n) if x != v]
    if set(sigma) != set(others):
        raise PosetError("sigma must label every element except v")
    if sorted(sigma.values()) != list(range(1, p.n)):
        raise PosetError("sigma must be a bijection onto 1..n-1")
    for i, j in p.relations():
        if v not in (i, j) and not sigma[i] < sigma[j]:
            raise PosetError("sigma is not a linear extension of P minus v")
    kappa = max((sigma[y] for y in bits(p.below[v])), default=0)
    out = [0] * p.n
    out[v] = kappa + 1
    for x in others:
        out[x] = sigma[x] + 1 if sigma[x] > kappa else sigma[x]
    return tuple(out)


def parse_poset(text: str) -> Poset:
    """Header ``n m`` then ``m`` lines ``i j`` meaning ``i < j``; closed transitively."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        rows = [tuple(int(x) for x in ln) for ln in lines]
    except ValueError:
        raise MalformedLineError("expected integers only") from None
    if not rows or any(len(r) != 2 for r in rows):
        raise MalformedLineError("expected a header 'n m' and lines of two integers")
    (n, m), pairs = rows[0], rows[1:]
    if n < 1 or m != len(pairs):
        raise MalformedLineError(f"header announces {m} relations, found {len(pairs)}")
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise VertexRangeError(f"relation ({i}, {j}) outside 0..{n - 1}")
    return Poset.from_relations(n, pairs)
