"""Named invariant suites. Each returns how many cases it checked and which failed."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from linext import corpus
from linext.bijections import theta, theta_inverse, theta_prime, theta_prime_target
from linext.entropy import alpha_entropy_lower, graph_entropy, kahn_kim_check
from linext.graph import (
    Graph,
    bits,
    complete_multipartite,
    cycle_graph,
    is_complete_multipartite,
    is_connected,
)
from linext.optimizer import (
    PERF_MAX_N,
    complement_upper_bound,
    coloring_lower_bound,
    cut_upper_bound,
    epsilon,
    theorem_perf_bound,
    transitive_orientations,
    zonotope_argmax,
)
from linext.orientations import (
    bipartite_orientations,
    enumerate_acyclic_orientations,
    is_almost_bipartite,
    triple_stats,
    zonotope_vertex,
)
from linext.polytopes import (
    StablePolytope,
    chain_predicate,
    exact_order_volume,
    in_stable_polytope,
    indicator,
    mc_volume,
    order_predicate,
    sample_order_polytope,
    transfer,
    transfer_batch,
    transfer_inverse,
    transfer_inverse_batch,
    up_closure,
)
from linext.poset import (
    antichain_masks,
    count_linear_extensions,
    enumerate_linear_extensions,
    is_antichain,
    is_cutset,
    natural_flow,
    natural_flow_by_enumeration,
    net_flow,
    poset_from_orientation,
)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str):
        self.checked += 1
        if not ok:
            self.failures.append(what)

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures[:50],
            "failure_count": len(self.failures),
            "seconds": round(self.seconds, 3),
        }


def _argmax_masks(g: Graph) -> set[int]:
    return {o.mask for o in epsilon(g, threads=1).argmax}


# -- suites -------------------------------------------------------------------

def suite_bip(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Connected bipartite graphs: the optimal orientations are the two bipartite ones."""
    graphs = corpus.connected_bipartite_graphs(6) + [cycle_graph(6), complete_multipartite([3, 3])]
    for _ in range(corpus_size if corpus_size is not None else 20):
        graphs.append(corpus.random_tree(int(rng.integers(2, 8)), rng))
    for g in graphs:
        want = {o.mask for o in bipartite_orientations(g)}
        res.check(_argmax_masks(g) == want, f"bip argmax mismatch on {g.edges}")


def suite_odd_cycle(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Odd cycles: the optimal orientations are exactly the almost-bipartite ones."""
    for n in (3, 5, 7, 9):
        c = cycle_graph(n)
        want = {o.mask for o in enumerate_acyclic_orientations(c) if is_almost_bipartite(o)}
        res.check(_argmax_masks(c) == want, f"odd-cycle argmax mismatch on C{n}")


def suite_comparability(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Comparability graphs: optimal orientations are exactly the transitive ones."""
    for g in corpus.comparability_corpus(rng, corpus_size if corpus_size is not None else 20):
        rep = epsilon(g, threads=1)
        trans = {o.mask for o in transitive_orientations(g)}
        res.check({o.mask for o in rep.argmax} == trans, f"transitive != argmax on {g.edges}")
        counts = {count_linear_extensions(poset_from_orientation(o)) for o in transitive_orientations(g)}
        res.check(counts == {rep.epsilon}, f"transitive orientations disagree on e(P) for {g.edges}")


def suite_zonotope(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Comparability graphs: the farthest zonotope vertices are the transitive orientations."""
    for g in corpus.comparability_corpus(rng, corpus_size if corpus_size is not None else 20):
        trans = {o.mask for o in transitive_orientations(g)}
        res.check({o.mask for o in zonotope_argmax(g)} == trans, f"zonotope argmax mismatch on {g.edges}")
        for o in enumerate_acyclic_orientations(g):
            z = zonotope_vertex(o)
            zr = zonotope_vertex(o.reversed())
            res.check(sum(z) == 0 and all(a == -b for a, b in zip(z, zr)), f"zonotope symmetry on {o}")


def suite_recurrence(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Antichains give ``e(P) >= Σ e(P∖v)``, cutsets ``<=``; equality iff both."""
    for _ in range(corpus_size if corpus_size is not None else 200):
        n = int(rng.integers(2, 8))
        p = corpus.random_poset(n, rng)
        e = count_linear_extensions(p)
        sub = [count_linear_extensions(p.delete(v)) for v in range(n)]
        for s in range(1, 1 << n):
            anti, cut = is_antichain(p, s), is_cutset(p, s)
            if not (anti or cut):
                continue
            rhs = sum(sub[v] for v in bits(s))
            ok = (not anti or e >= rhs) and (not cut or e <= rhs) and ((e == rhs) == (anti and cut))
            res.check(ok, f"recurrence on {p.to_json()} with S={bits(s)}: {e} vs {rhs}")


def suite_flow(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """The natural flow is conserved and carries ``e(P)`` units."""
    for _ in range(corpus_size if corpus_size is not None else 100):
        o = corpus.random_orientation(int(rng.integers(1, 8)), rng)
        f = natural_flow(o)
        e = count_linear_extensions(poset_from_orientation(o))
        res.check(f.is_conserved() and f.is_nonnegative(), f"flow not conserved on {o}")
        res.check(net_flow(f) == e, f"net flow {net_flow(f)} != e(P) {e} on {o}")
        res.check(dict(f.values) == dict(natural_flow_by_enumeration(o).values), f"flow DP != enumeration on {o}")


def _inout_ok(o) -> bool:
    t = triple_stats(o)
    lhs2 = sum(x * x for x in zonotope_vertex(o))
    return lhs2 == 2 * (o.host.m + t.tri + t.inc - t.com)


def suite_inout(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Degree-imbalance identity, exhaustively for n <= 5 and on random orientations."""
    for n in range(1, 6):
        for g in corpus.labeled_graphs(n):
            sums = set()
            for o in enumerate_acyclic_orientations(g):
                res.check(_inout_ok(o), f"inout identity fails on {o}")
                t = triple_stats(o)
                sums.add(t.inc + t.com)
            res.check(len(sums) == 1, f"inc + com depends on the orientation of {g.edges}")
    for _ in range(corpus_size if corpus_size is not None else 1000):
        o = corpus.random_orientation(int(rng.integers(1, 10)), rng)
        res.check(_inout_ok(o), f"inout identity fails on {o}")


def suite_complement_bound(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """ε(G) is at most a(Ḡ), with equality iff G is complete multipartite."""
    for n in range(1, 6):
        for g in corpus.labeled_graphs(n):
            eps = epsilon(g, threads=1).epsilon
            bound, predicted = complement_upper_bound(g)
            res.check(eps <= bound and (eps == bound) == predicted, f"complement bound on {g.edges}: {eps} vs {bound}")
            res.check(predicted == is_complete_multipartite(g), f"multipartite test on {g.edges}")


def suite_bounds(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Colouring and cut bounds on the atlas and comparability corpus; the chromatic recursion on the latter."""
    comparability = corpus.comparability_corpus(rng, corpus_size if corpus_size is not None else 20)
    for g in corpus.atlas_graphs(6) + comparability:
        eps = epsilon(g, threads=1).epsilon
        cb = coloring_lower_bound(g)
        res.check(cb.closed_form <= eps and cb.product_bound <= eps, f"colouring bound on {g.edges}")
        if is_connected(g) and g.n >= 2:
            res.check(eps <= cut_upper_bound(g), f"cut bound on {g.edges}")
    for g in comparability:
        if g.n <= PERF_MAX_N:
            res.check(theorem_perf_bound(g) <= epsilon(g, threads=1).epsilon, f"perf bound on {g.edges}")
    c5 = cycle_graph(5)
    res.check(
        coloring_lower_bound(c5).closed_form == Fraction(20, 9)
        and epsilon(c5).epsilon == 8
        and cut_upper_bound(c5) == Fraction(25, 2),
        "C5 instantiation 20/9 <= 8 <= 25/2",
    )


def suite_stanley(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator, samples: int = 100_000):
    """Order and chain polytopes have volume e(P)/n!; the transfer map is a bijection."""
    for k in range(corpus_size if corpus_size is not None else 20):
        n = int(rng.integers(2, 8))
        p = corpus.random_poset(n, rng)
        exact = exact_order_volume(p)
        vo = mc_volume(order_predicate(p), n, samples, seed=k, batch=True)
        vc = mc_volume(chain_predicate(p), n, samples, seed=10_000 + k, batch=True)
        res.check(vo.within(exact), f"order volume {vo.estimate} vs {exact} on {p.to_json()}")
        res.check(vc.within(exact), f"chain volume {vc.estimate} vs {exact} on {p.to_json()}")
        X = sample_order_polytope(p, 1000, rng)
        Y = transfer_batch(p, X)
        res.check(bool(np.all(chain_predicate(p)(Y))), f"transfer leaves C(P) on {p.to_json()}")
        err = float(np.max(np.abs(transfer_inverse_batch(p, Y) - X)))
        res.check(err <= 1e-12, f"transfer round trip error {err} on {p.to_json()}")
        for a in antichain_masks(p):
            filt = indicator(n, up_closure(p, a))
            res.check(transfer(p, filt) == indicator(n, a), f"vertex map on antichain {bits(a)}")
            res.check(transfer_inverse(p, indicator(n, a)) == filt, f"inverse vertex map on antichain {bits(a)}")


def suite_entropy_bounds(res: SuiteResult, corpus_size: int | None, rng: np.random.Generator):
    """Entropy is at least log2(n/α); Kahn-Kim holds with exact volumes."""
    tol = 1e-5
    for g in corpus.atlas_graphs(6):
        h = graph_entropy(g, tol)
        res.check(h.h >= alpha_entropy_lower(g) - tol, f"entropy below log2(n/alpha) on {g.edges}")
        res.check(h.duality_gap <= tol, f"entropy gap {h.duality_gap} on {g.edges}")
        res.check(in_stable_polytope(g, h.minimizer, 1e-7), f"entropy minimizer infeasible on {g.edges}")
        res.check(kahn_kim_check(g, StablePolytope(g).volume, h).holds, f"Kahn-Kim with hull volume on {g.edges}")
    for g in corpus.comparability_corpus(rng, corpus_size if corpus_size is not None else 20):
        vol = Fraction(epsilon(g, threads=1).epsilon, math.factorial(g.n))
        h = graph_entropy(g, tol)
        res.check(h.h >= alpha_entropy_lower(g) - tol, f"entropy below log2(n/alpha) on {g.edges}")
        res.check(kahn_kim_check(g, vol, h).holds, f"Kahn-Kim on {g.edges}")


SUITES: dict[str, Callable] = {
    "bip": suite_bip,
    "odd-cycle": suite_odd_cycle,
    "comparability": suite_comparability,
    "recurrence": suite_recurrence,
    "flow": suite_flow,
    "inout": suite_inout,
    "complement-bound": suite_complement_bound,
    "stanley": suite_stanley,
    "zonotope": suite_zonotope,
    "entropy-bounds": suite_entropy_bounds,
    "bounds": suite_bounds,
}


def run_suite(name: str, corpus_size: int | None = None, seed: int = 0) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    res = SuiteResult(name)
    start = time.perf_counter()
    SUITES[name](res, corpus_size, np.random.default_rng(seed))
    res.seconds = time.perf_counter() - start
    return res


# -- exhaustive bijection checks -------------------------------------------------

def check_theta(g: Graph) -> SuiteResult:
    """Θ on every (orientation, extension) pair of a connected bipartite graph."""
    res = SuiteResult(f"theta {g.edges}")
    target = bipartite_orientations(g)[0]
    target_count = count_linear_extensions(poset_from_orientation(target))
    for o in enumerate_acyclic_orientations(g):
        image = set()
        for f in enumerate_linear_extensions(poset_from_orientation(o)):
            out, _ = theta(g, o, f, target)
            res.check(theta_inverse(g, o, out, target) == tuple(f), f"round trip fails on {o}, {f}")
            image.add(out)
        bip = o.mask in (target.mask, target.reversed().mask)
        res.check((len(image) == target_count) == bip, f"surjectivity criterion fails on {o}")
    return res


def check_theta_prime(n: int) -> SuiteResult:
    """Θ′ on every (orientation, extension) pair of the odd cycle ``C_n``."""
    c = cycle_graph(n)
    res = SuiteResult(f"theta_prime C{n}")
    for o in enumerate_acyclic_orientations(c):
        target = theta_prime_target(o)
        target_count = count_linear_extensions(poset_from_orientation(target))
        image = set()
        total = 0
        for f in enumerate_linear_extensions(poset_from_orientation(o)):
            out = theta_prime(c, o, f)
            res.check(
                all(out[a] < out[b] for a, b in target.arcs) and sorted(out) == list(range(1, n + 1)),
                f"theta_prime output is not an extension of the target on {o}",
            )
            image.add(out)
            total += 1
        res.check(len(image) == total, f"theta_prime not injective on {o}")
        res.check((len(image) == target_count) == is_almost_bipartite(o), f"surjectivity criterion fails on {o}")
    return res

