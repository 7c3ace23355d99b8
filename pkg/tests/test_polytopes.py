import json
from fractions import Fraction

import numpy as np
import pytest

import oracles
from linext.corpus import atlas_graphs, random_orientation, random_poset
from linext.graph import Graph, TooLargeError, complete_graph, cycle_graph, empty_graph, path_graph
from linext.optimizer import epsilon, is_comparability_graph
from linext.orientations import enumerate_acyclic_orientations, is_transitive
from linext.poset import Poset, antichains, comparability_graph, count_linear_extensions, poset_from_orientation
from linext.polytopes import (
    PolytopeError,
    StablePolytope,
    VolumeEstimate,
    chain_predicate,
    chain_stab_witness,
    exact_order_volume,
    fractional_region_volume,
    in_chain_polytope,
    in_order_polytope,
    in_stable_polytope,
    indicator,
    int_det,
    mc_volume,
    order_predicate,
    sample_order_polytope,
    transfer,
    transfer_batch,
    transfer_inverse,
    transfer_inverse_batch,
    up_closure,
)

C5 = cycle_graph(5)
CHAIN2 = Poset.chain(2)


def test_stable_membership_examples():
    assert not in_stable_polytope(C5, [0.5] * 5)
    assert in_stable_polytope(C5, [0.4] * 5)
    assert in_stable_polytope(C5, [Fraction(2, 5)] * 5)
    assert not in_stable_polytope(C5, [Fraction(2, 5) + Fraction(1, 1000)] * 5)
    assert in_stable_polytope(path_graph(2), [0.5, 0.5])
    assert not in_stable_polytope(path_graph(2), [0.6, 0.5])
    assert not in_stable_polytope(C5, [-0.1, 0, 0, 0, 0])


def test_chain_membership_examples():
    assert in_chain_polytope(CHAIN2, [0.5, 0.5])
    assert not in_chain_polytope(CHAIN2, [0.6, 0.5])
    assert in_chain_polytope(Poset.antichain(2), [1, 1])
    assert in_order_polytope(CHAIN2, [0.2, 0.7]) and not in_order_polytope(CHAIN2, [0.7, 0.2])


def test_stab_c5_facets_and_volume():
    sp = StablePolytope(C5)
    assert len(sp.facets) == 11
    assert ((1, 1, 1, 1, 1), 2) in sp.facets
    assert sp.volume == Fraction(1, 10)
    assert sp.volume == pytest.approx(oracles.hull_volume(5, C5.edges))
    assert mc_volume(sp.predicate(), 5, 100_000, 0, batch=True).within(sp.volume)


def test_stab_volume_matches_hull_on_atlas():
    for g in atlas_graphs(6, min_n=2):
        assert float(StablePolytope(g).volume) == pytest.approx(oracles.hull_volume(g.n, g.edges), rel=1e-9)


def test_stab_edge_cases():
    assert StablePolytope(Graph(1, ())).volume == 1
    assert StablePolytope(empty_graph(3)).volume == 1
    assert StablePolytope(complete_graph(3)).volume == Fraction(1, 6)
    with pytest.raises(TooLargeError):
        StablePolytope(empty_graph(9))


def test_int_det():
    assert int_det([[2, 0], [0, 3]]) == 6
    assert int_det([[0, 1], [1, 0]]) == -1
    assert int_det([[1, 2], [2, 4]]) == 0
    rng = np.random.default_rng(0)
    for _ in range(50):
        m = rng.integers(-3, 4, (4, 4))
        assert int_det(m.tolist()) == round(np.linalg.det(m))


def test_stab_volume_bounds_epsilon():
    """``vol(Stab) >= ε / n!`` with equality exactly on comparability graphs."""
    import math

    for g in atlas_graphs(6):
        vol = StablePolytope(g).volume
        ratio = Fraction(epsilon(g).epsilon, math.factorial(g.n))
        assert vol >= ratio
        assert (vol == ratio) == is_comparability_graph(g)


def test_chain_equals_stab_for_comparability():
    rng = np.random.default_rng(1)
    for _ in range(5):
        p = random_poset(int(rng.integers(3, 7)), rng)
        g = comparability_graph(p)
        pts = rng.random((10_000, p.n)) * 0.6
        chain = chain_predicate(p)(pts)
        stab = StablePolytope(g).predicate()(pts)
        assert np.array_equal(chain, stab)


def test_chain_stab_witness():
    rng = np.random.default_rng(2)
    for _ in range(40):
        o = random_orientation(int(rng.integers(3, 7)), rng)
        w = chain_stab_witness(o)
        if is_transitive(o):
            assert w is None
        else:
            assert w is not None
            assert in_stable_polytope(o.host, [Fraction(x) for x in w])
            assert not in_chain_polytope(poset_from_orientation(o), w)


def test_transfer_round_trip():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = random_poset(int(rng.integers(1, 7)), rng)
        X = sample_order_polytope(p, 1000, rng)
        assert order_predicate(p)(X).all()
        Y = transfer_batch(p, X)
        assert chain_predicate(p)(Y).all()
        assert np.max(np.abs(transfer_inverse_batch(p, Y) - X)) <= 1e-12
        for x in X[:20]:
            y = transfer(p, tuple(x))
            assert in_chain_polytope(p, y)
            assert np.allclose(transfer_inverse(p, y), x, atol=1e-12)


def test_transfer_exact_and_errors():
    x = (Fraction(1, 3), Fraction(1, 2))
    assert transfer(CHAIN2, x) == (Fraction(1, 3), Fraction(1, 6))
    assert transfer_inverse(CHAIN2, (Fraction(1, 3), Fraction(1, 6))) == x
    with pytest.raises(PolytopeError):
        transfer(CHAIN2, (0.9, 0.1))
    with pytest.raises(PolytopeError):
        transfer_inverse(CHAIN2, (0.9, 0.2))


def test_transfer_vertices():
    """Up-sets go to antichain indicators: the transfer of an order-polytope vertex is its set of minima."""
    rng = np.random.default_rng(4)
    for _ in range(10):
        p = random_poset(int(rng.integers(1, 6)), rng)
        for a in antichains(p):
            amask = sum(1 << v for v in a)
            up = up_closure(p, amask)
            assert transfer(p, indicator(p.n, up)) == indicator(p.n, amask)


def test_order_volume_monte_carlo():
    rng = np.random.default_rng(5)
    for _ in range(5):
        p = random_poset(int(rng.integers(2, 7)), rng)
        exact = exact_order_volume(p)
        assert mc_volume(order_predicate(p), p.n, 50_000, 1, batch=True).within(exact)
        assert mc_volume(chain_predicate(p), p.n, 50_000, 2, batch=True).within(exact)


def test_mc_volume_deterministic_and_validated():
    pred = order_predicate(Poset.chain(3))
    a = mc_volume(pred, 3, 20_000, 7, batch=True)
    b = mc_volume(lambda x: in_order_polytope(Poset.chain(3), x), 3, 20_000, 7)
    assert a == b
    assert json.loads(a.to_json())["samples"] == 20_000
    with pytest.raises(ValueError):
        mc_volume(pred, 3, 100, 0, batch=True)


def test_volume_estimate_within():
    assert VolumeEstimate(0.5, 0.0, 10, 0).within(Fraction(1, 2))
    assert not VolumeEstimate(0.5, 0.0, 10, 0).within(0.51)
    assert VolumeEstimate(0.5, 0.01, 10, 0).within(0.53)
    assert not VolumeEstimate(0.5, 0.01, 10, 0).within(0.55)


def test_fractional_region_volume():
    import math

    rng = np.random.default_rng(6)
    for _ in range(10):
        o = random_orientation(int(rng.integers(1, 7)), rng)
        exact = Fraction(count_linear_extensions(poset_from_orientation(o)), math.factorial(o.host.n))
        assert fractional_region_volume(o, 100_000, 3).within(exact)
    for o in enumerate_acyclic_orientations(path_graph(1)):
        assert fractional_region_volume(o, 10).estimate == 1.0


def test_sample_order_polytope_uniform():
    # for the chain 0 < 1, the mean of x_0 is 1/3
    X = sample_order_polytope(CHAIN2, 200_000, np.random.default_rng(8))
    assert (X[:, 0] <= X[:, 1]).all()
    assert X[:, 0].mean() == pytest.approx(1 / 3, abs=0.005)
