"""Order, chain and stable polytopes, the transfer map, and volume estimates."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from linext.graph import Graph, TooLargeError, bits, stable_set_masks, stable_set_matrix
from linext.orientations import AcyclicOrientation
from linext.poset import (
    Poset,
    _topological,
    count_linear_extensions,
    enumerate_linear_extensions,
    poset_from_orientation,
)

TOL = 1e-12
MIN_SAMPLES = 10_000
SHARD_SIZE = 1 << 14
STAB_EXACT_MAX_N = 8


class PolytopeError(ValueError):
    pass


def _is_exact(x) -> bool:
    return all(isinstance(v, Rational) for v in x)


def _tol(x, tol):
    return 0 if _is_exact(x) else tol


def _check_dim(n, x):
    if len(x) != n:
        raise PolytopeError(f"expected a point in dimension {n}, got {len(x)}")


# -- order and chain polytopes ------------------------------------------------

def in_order_polytope(p: Poset, x: Sequence, tol: float = TOL) -> bool:
    """``0 <= x <= 1`` and ``x_i <= x_j`` whenever ``i < j``. Exact for rational input."""
    _check_dim(p.n, x)
    t = _tol(x, tol)
    if any(v < -t or v > 1 + t for v in x):
        return False
    return all(x[i] <= x[j] + t for i, j in p.cover_pairs())


def _chain_sums(p: Poset, x: Sequence) -> list:
    """``y_i``: largest sum of ``x`` over a chain whose top element is ``i``."""
    y = [0] * p.n
    for v in _topological(p.n, list(p.below)):
        y[v] = x[v] + max((y[u] for u in bits(p.covers_below[v])), default=0)
    return y


def in_chain_polytope(p: Poset, x: Sequence, tol: float = TOL) -> bool:
    """``x >= 0`` and every chain sums to at most 1. Exact for rational input."""
    _check_dim(p.n, x)
    t = _tol(x, tol)
    if any(v < -t for v in x):
        return False
    return max(_chain_sums(p, x), default=0) <= 1 + t


def transfer(p: Poset, x: Sequence, tol: float = TOL) -> tuple:
    """Stanley's map ``O(P) -> C(P)``: ``x_i - max of x over the elements i covers``."""
    if not in_order_polytope(p, x, tol):
        raise PolytopeError("point is outside the order polytope")
    return tuple(
        x[i] - max((x[j] for j in bits(p.covers_below[i])), default=0)
        for i in range(p.n)
    )


def transfer_inverse(p: Poset, x: Sequence, tol: float = TOL) -> tuple:
    """Inverse map ``C(P) -> O(P)``: heaviest chain ending at each element."""
    if not in_chain_polytope(p, x, tol):
        raise PolytopeError("point is outside the chain polytope")
    return tuple(_chain_sums(p, x))


def order_predicate(p: Poset, tol: float = TOL) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised membership in ``O(P)`` for an ``(k, n)`` array of points."""
    pairs = np.array(p.cover_pairs(), dtype=np.intp).reshape(-1, 2)

    def member(X):
        ok = np.all((X >= -tol) & (X <= 1 + tol), axis=1)
        if len(pairs):
            ok &= np.all(X[:, pairs[:, 0]] <= X[:, pairs[:, 1]] + tol, axis=1)
        return ok

    return member


def chain_predicate(p: Poset, tol: float = TOL) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorised membership in ``C(P)``."""
    order = _topological(p.n, list(p.below))
    covers = [bits(p.covers_below[v]) for v in range(p.n)]

    def member(X):
        Y = np.empty_like(X)
        for v in order:
            Y[:, v] = X[:, v]
            if covers[v]:
                Y[:, v] += Y[:, covers[v]].max(axis=1)
        return np.all(X >= -tol, axis=1) & (Y.max(axis=1, initial=0) <= 1 + tol)

    return member


def transfer_batch(p: Poset, X: np.ndarray) -> np.ndarray:
    out = X.copy()
    for i in range(p.n):
        cb = bits(p.covers_below[i])
        if cb:
            out[:, i] -= X[:, cb].max(axis=1)
    return out


def transfer_inverse_batch(p: Poset, X: np.ndarray) -> np.ndarray:
    Y = np.empty_like(X)
    for v in _topological(p.n, list(p.below)):
        cb = bits(p.covers_below[v])
        Y[:, v] = X[:, v] + (Y[:, cb].max(axis=1) if cb else 0)
    return Y


def sample_order_polytope(p: Poset, k: int, rng: np.random.Generator) -> np.ndarray:
    """``k`` uniform points of ``O(P)``.

    ``O(P)`` is the union of the simplices of its linear extensions, all of
    volume ``1/n!``, so pick an extension uniformly and then a uniform point
    of its simplex (sorted uniforms placed in extension order).
    """
    exts = np.array(list(enumerate_linear_extensions(p)), dtype=np.intp) - 1  # positions
    pick = exts[rng.integers(0, len(exts), k)]
    sorted_u = np.sort(rng.random((k, p.n)), axis=1)
    return np.take_along_axis(sorted_u, pick, axis=1)


def indicator(n: int, s) -> tuple[int, ...]:
    """0/1 vector of a vertex set given as a bitmask or an iterable."""
    mask = s if isinstance(s, int) else sum(1 << v for v in s)
    return tuple(mask >> i & 1 for i in range(n))


def up_closure(p: Poset, s: int) -> int:
    out = s
    for v in bits(s):
        out |= p.above[v]
    return out


def exact_order_volume(p: Poset) -> Fraction:
    """``e(P) / n!``, which is also the volume of the chain polytope."""
    return Fraction(count_linear_extensions(p), math.factorial(p.n))


# -- stable polytope ------------------------------------------------------------

def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _hyperplane(points: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int] | None:
    """Integer normal ``c`` and offset ``d`` with ``c.p = d`` through ``n`` points in ``Z^n``."""
    base = points[0]
    diffs = [[a - b for a, b in zip(q, base)] for q in points[1:]]
    n = len(base)
    normal = []
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in diffs]
        normal.append((-1) ** j * int_det(minor))
    g = math.gcd(*normal)
    if g == 0:
        return None
    normal = [c // g for c in normal]
    return tuple(normal), sum(c * b for c, b in zip(normal, base))


class StablePolytope:
    """Convex hull of the stable-set indicator vectors, with exact facets and volume."""

    def __init__(self, g: Graph):
        if g.n > STAB_EXACT_MAX_N:
            raise TooLargeError(f"exact stable polytopes need n <= {STAB_EXACT_MAX_N}")
        self.g = g
        self.n = g.n
        self.vertices = [indicator(g.n, s) for s in stable_set_masks(g)]

    @cached_property
    def _simplices(self) -> list[tuple[int, ...]]:
        if self.n < 2:
            return []
        hull = ConvexHull(np.array(self.vertices, dtype=float))
        return [tuple(int(i) for i in s) for s in hull.simplices]

    @cached_property
    def facets(self) -> list[tuple[tuple[int, ...], int]]:
        """Facet inequalities ``c.x <= d`` with coprime integer ``c``, deduplicated."""
        n = self.n
        if n == 0:
            return []
        if n == 1:
            return [((-1,), 0), ((1,), 1)]
        centroid2 = [sum(v[i] for v in self.vertices) for i in range(n)]  # times |V|
        k = len(self.vertices)
        out = set()
        for simplex in self._simplices:
            hp = _hyperplane([self.vertices[i] for i in simplex])
            if hp is None:
                continue
            c, d = hp
            # orient so the centroid is strictly inside
            if sum(a * b for a, b in zip(c, centroid2)) > d * k:
                c, d = tuple(-a for a in c), -d
            out.add((c, d))
        return sorted(out)

    @cached_property
    def volume(self) -> Fraction:
        """Exact volume: cone over the triangulated boundary from the origin vertex."""
        if self.n <= 1:
            return Fraction(1)
        total = 0
        for simplex in self._simplices:
            total += abs(int_det([self.vertices[i] for i in simplex]))
        return Fraction(total, math.factorial(self.n))

    @cached_property
    def _arrays(self):
        A = np.array([c for c, _ in self.facets], dtype=float).reshape(-1, self.n)
        b = np.array([d for _, d in self.facets], dtype=float)
        return A, b

    def contains(self, x: Sequence, tol: float = TOL) -> bool:
        _check_dim(self.n, x)
        if _is_exact(x):
            return all(sum(a * Fraction(v) for a, v in zip(c, x)) <= d for c, d in self.facets)
        A, b = self._arrays
        return bool(np.all(A @ np.asarray(x, dtype=float) <= b + tol))

    def predicate(self, tol: float = TOL) -> Callable[[np.ndarray], np.ndarray]:
        A, b = self._arrays
        return lambda X: np.all(X @ A.T <= b + tol, axis=1)


def in_stable_polytope(g: Graph, x: Sequence, tol: float = 1e-9) -> bool:
    """Whether ``x`` is a convex combination of stable-set indicators.

    Rational input on small graphs is decided exactly from the facets; float
    input goes through a feasibility LP.
    """
    _check_dim(g.n, x)
    if _is_exact(x) and g.n <= STAB_EXACT_MAX_N:
        return StablePolytope(g).contains(x)
    S = stable_set_matrix(g)
    xv = np.asarray(x, dtype=float)
    if np.any(xv < -tol):
        return False
    k = S.shape[0]
    A_eq = np.vstack([S.T, np.ones((1, k))])
    b_eq = np.concatenate([xv, [1.0]])
    res = linprog(np.zeros(k), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status == 0:
        return bool(np.max(np.abs(A_eq @ res.x - b_eq)) <= max(tol, 1e-9))
    return False


def stable_polytope_volume(g: Graph) -> Fraction:
    return StablePolytope(g).volume


def chain_stab_witness(o: AcyclicOrientation) -> tuple[int, ...] | None:
    """A point in ``Stab(G)`` outside ``C(P)``, or ``None`` when ``o`` is transitive.

    For a directed path ``u -> v -> w`` with ``u, w`` non-adjacent, ``e_u + e_w``
    is a stable-set vertex but ``u < w`` in the induced order.
    """
    g = o.host
    for v in range(g.n):
        for u in bits(o.pred[v]):
            for w in bits(o.succ[v]):
                if not g.has_edge(u, w):
                    return indicator(g.n, (u, w))
    return None


# -- Monte-Carlo volumes --------------------------------------------------------

@dataclass(frozen=True)
class VolumeEstimate:
    estimate: float
    std_error: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def within(self, exact, sigmas: float = 4.0) -> bool:
        """Whether ``exact`` lies within ``sigmas`` standard errors (exact equality if the error is 0)."""
        diff = abs(self.estimate - float(exact))
        if self.std_error == 0:
            return diff <= 1e-12
        return diff <= sigmas * self.std_error


def _shards(samples: int):
    shard = 0
    left = samples
    while left > 0:
        k = min(SHARD_SIZE, left)
        yield shard, k
        shard += 1
        left -= k


def _estimate(hits: int, samples: int, seed: int) -> VolumeEstimate:
    p = hits / samples
    return VolumeEstimate(p, math.sqrt(p * (1 - p) / samples), samples, seed)


def mc_volume(
    membership: Callable,
    n: int,
    samples: int = 100_000,
    seed: int = 0,
    batch: bool = False,
) -> VolumeEstimate:
    """Hit fraction of uniform points in ``[0, 1]^n``.

    Points are drawn in fixed-size shards, shard ``k`` from PCG64 seeded with
    ``[seed, k]``, so the result depends only on ``(samples, seed)``. With
    ``batch=True`` the predicate receives a ``(k, n)`` array and returns a
    boolean array; otherwise it is called per point.
    """
    if samples < MIN_SAMPLES:
        raise ValueError(f"mc_volume needs at least {MIN_SAMPLES} samples")
    hits = 0
    for shard, k in _shards(samples):
        X = np.random.default_rng([seed, shard]).random((k, n))
        if batch:
            hits += int(np.count_nonzero(membership(X)))
        else:
            hits += sum(1 for row in X if membership(tuple(row)))
    return _estimate(hits, samples, seed)


def fractional_region_volume(o: AcyclicOrientation, samples: int = 100_000, seed: int = 0) -> VolumeEstimate:
    """Fraction of directions whose coordinate order lies in the region of ``o``.

    Region membership depends only on the relative order of the coordinates,
    and i.i.d. uniform coordinates induce a uniformly random ordering, so this
    is the same as sampling uniform permutations (no geometric error).
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    arcs = np.array(o.arcs, dtype=np.intp).reshape(-1, 2)
    n = o.host.n
    hits = 0
    for shard, k in _shards(samples):
        X = np.random.default_rng([seed, shard]).random((k, n))
        if len(arcs):
            hits += int(np.count_nonzero(np.all(X[:, arcs[:, 0]] < X[:, arcs[:, 1]], axis=1)))
        else:
            hits += k
    return _estimate(hits, samples, seed)


def orientation_order_volume(o: AcyclicOrientation) -> Fraction:
    return exact_order_volume(poset_from_orientation(o))
