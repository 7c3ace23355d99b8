from fractions import Fraction

import numpy as np
import pytest

import oracles
from linext.corpus import atlas_graphs, labeled_graphs
from linext.graph import (
    DisconnectedGraphError,
    Graph,
    complete_multipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
)
from linext.optimizer import (
    BudgetExceeded,
    coloring_lower_bound,
    complement_upper_bound,
    cut_upper_bound,
    epsilon,
    find_transitive_orientation,
    is_comparability_graph,
    orientation_counts,
    theorem_perf_bound,
    transitive_orientations,
    zonotope_argmax,
)
from linext.orientations import bipartite_orientations, is_almost_bipartite, is_transitive

# (graph, ε, number of optimal orientations), frozen from exhaustive permutation tallies
FROZEN = [
    (path_graph(3), 2, 2),
    (path_graph(4), 5, 2),
    (path_graph(5), 16, 2),
    (cycle_graph(4), 4, 2),
    (cycle_graph(5), 8, 10),
    (cycle_graph(6), 48, 2),
    (cycle_graph(7), 136, 14),
    (complete_multipartite((3, 3)), 36, 2),
    (complete_multipartite((2, 3)), 12, 2),
    (complete_graph(4), 1, 24),
]


@pytest.mark.parametrize("g,eps,count", FROZEN, ids=lambda x: str(x) if isinstance(x, int) else None)
def test_frozen_values(g, eps, count):
    rep = epsilon(g)
    assert rep.epsilon == eps and len(rep.argmax) == count


def test_epsilon_matches_oracle_on_labeled_graphs():
    for n in range(1, 6):
        for g in labeled_graphs(n):
            eps, arg = oracles.epsilon(n, g.edges)
            rep = epsilon(g)
            assert rep.epsilon == eps
            assert {frozenset(o.arcs) for o in rep.argmax} == arg


def test_epsilon_matches_oracle_on_atlas_n6():
    for g in atlas_graphs(6, min_n=6):
        eps, arg = oracles.epsilon(6, g.edges)
        rep = epsilon(g)
        assert rep.epsilon == eps and len(rep.argmax) == len(arg)


def test_edge_cases():
    assert epsilon(Graph(1, ())).epsilon == 1
    assert epsilon(empty_graph(4)).epsilon == 24
    assert epsilon(Graph(4, ((0, 1), (2, 3)))).epsilon == 6
    assert len(epsilon(Graph(4, ((0, 1), (2, 3)))).argmax) == 4


def test_c5_argmax_is_almost_bipartite():
    assert all(is_almost_bipartite(o) for o in epsilon(cycle_graph(5)).argmax)


def test_bipartite_argmax():
    for g in (path_graph(4), cycle_graph(6), complete_multipartite((2, 3))):
        assert {o.mask for o in epsilon(g).argmax} == {o.mask for o in bipartite_orientations(g)}


def test_counts_symmetric_under_reversal():
    g = cycle_graph(5)
    counts = orientation_counts(g)
    full = (1 << g.m) - 1
    assert len(counts) == 30 and all(counts[m] == counts[m ^ full] for m in counts)


def test_threads_agree():
    g = cycle_graph(7)
    assert orientation_counts(g, threads=2) == orientation_counts(g, threads=1)


def test_budget():
    with pytest.raises(BudgetExceeded):
        epsilon(complete_graph(8), max_orientations=1000)


def test_transitive_orientation():
    o = find_transitive_orientation(path_graph(4))
    assert o is not None and is_transitive(o)
    assert find_transitive_orientation(cycle_graph(5)) is None
    for n in range(1, 6):
        for g in labeled_graphs(n):
            assert is_comparability_graph(g) == oracles.is_comparability(n, g.edges)


def test_comparability_argmax_is_transitive():
    for g in atlas_graphs(6):
        if is_comparability_graph(g):
            rep = epsilon(g)
            trans = {o.mask for o in transitive_orientations(g)}
            assert {o.mask for o in rep.argmax} == trans


def test_perf_bound():
    assert theorem_perf_bound(complete_graph(3)) == 1
    assert theorem_perf_bound(path_graph(2)) == 1
    assert theorem_perf_bound(empty_graph(3)) == 6
    for g in atlas_graphs(6):
        if is_comparability_graph(g):
            assert theorem_perf_bound(g) <= epsilon(g).epsilon


def test_coloring_bound():
    cb = coloring_lower_bound(cycle_graph(5))
    assert (cb.product_bound, cb.closed_form) == (4, Fraction(20, 9))
    cb = coloring_lower_bound(complete_graph(4))
    assert (cb.product_bound, cb.closed_form) == (1, 1)
    assert coloring_lower_bound(empty_graph(4)).product_bound == 24
    for g in atlas_graphs(6):
        eps = epsilon(g).epsilon
        cb = coloring_lower_bound(g)
        assert cb.closed_form <= cb.product_bound <= eps
        assert cb.chi == oracles.chromatic(g.n, g.edges)


def test_cut_bound():
    assert cut_upper_bound(cycle_graph(5)) == Fraction(25, 2)
    assert cut_upper_bound(path_graph(3)) == 2
    assert cut_upper_bound(complete_graph(3)) == Fraction(3, 2)
    with pytest.raises(DisconnectedGraphError):
        cut_upper_bound(empty_graph(2))


def test_complement_bound():
    assert complement_upper_bound(path_graph(3)) == (2, True)
    assert complement_upper_bound(cycle_graph(5)) == (30, False)
    assert complement_upper_bound(complete_graph(3)) == (1, True)
    for n in range(1, 6):
        for g in labeled_graphs(n):
            bound, eq = complement_upper_bound(g)
            eps = epsilon(g).epsilon
            assert eps <= bound and (eps == bound) == eq


def test_zonotope_argmax():
    k3 = zonotope_argmax(complete_graph(3))
    assert len(k3) == 6
    assert {o.mask for o in zonotope_argmax(path_graph(3))} == {o.mask for o in bipartite_orientations(path_graph(3))}


def test_random_comparability_graphs():
    rng = np.random.default_rng(9)
    from linext.corpus import random_poset
    from linext.poset import comparability_graph, count_linear_extensions

    for _ in range(15):
        p = random_poset(int(rng.integers(2, 8)), rng)
        g = comparability_graph(p)
        assert is_comparability_graph(g)
        assert epsilon(g).epsilon == count_linear_extensions(p)
