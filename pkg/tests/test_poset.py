import itertools
import json

import numpy as np
import pytest

import oracles
from linext.corpus import random_orientation, random_poset
from linext.graph import Graph, empty_graph, path_graph
from linext.orientations import AcyclicOrientation, bipartite_orientations
from linext.poset import (
    SINK,
    SOURCE,
    Poset,
    PosetError,
    antichains,
    comparability_graph,
    count_linear_extensions,
    enumerate_linear_extensions,
    is_antichain,
    is_cutset,
    is_linear_extension,
    maximal_chains,
    natural_flow,
    natural_flow_by_enumeration,
    net_flow,
    parse_poset,
    poset_from_orientation,
    recurrence_sides,
    trans_map,
)
from linext.graph import cycle_graph

C5_AB = AcyclicOrientation.from_arcs(cycle_graph(5), [(0, 1), (2, 1), (2, 3), (4, 3), (0, 4)])
ZIGZAG = poset_from_orientation(bipartite_orientations(path_graph(4))[0])  # 0<1>2<3
V_POSET = Poset.from_relations(3, [(0, 2), (1, 2)])


def test_poset_from_orientation():
    chain = poset_from_orientation(AcyclicOrientation.from_arcs(path_graph(3), [(0, 1), (1, 2)]))
    assert set(chain.relations()) == {(0, 1), (1, 2), (0, 2)}
    vee = poset_from_orientation(AcyclicOrientation.from_arcs(path_graph(3), [(0, 1), (2, 1)]))
    assert set(vee.relations()) == {(0, 1), (2, 1)}
    assert poset_from_orientation(AcyclicOrientation(empty_graph(3), 0)).relations() == []


def test_invalid_posets():
    with pytest.raises(PosetError):
        Poset(2, (2, 1))
    with pytest.raises(PosetError):
        Poset(3, (0, 1, 2))  # 0<1, 1<2 but not 0<2
    with pytest.raises(PosetError):
        Poset.from_relations(2, [(0, 1), (1, 0)])


def test_count_examples():
    assert count_linear_extensions(Poset.antichain(5)) == 120
    assert count_linear_extensions(Poset.chain(6)) == 1
    assert count_linear_extensions(ZIGZAG) == 5
    assert count_linear_extensions(poset_from_orientation(C5_AB)) == 8


def test_count_against_brute_force():
    rng = np.random.default_rng(1)
    for _ in range(300):
        p = random_poset(int(rng.integers(1, 8)), rng)
        assert count_linear_extensions(p) == oracles.linext(p.n, p.relations())


def test_enumerate_examples():
    assert list(enumerate_linear_extensions(Poset.chain(3))) == [(1, 2, 3)]
    assert len(list(enumerate_linear_extensions(Poset.antichain(2)))) == 2
    assert list(enumerate_linear_extensions(V_POSET)) == [(1, 2, 3), (2, 1, 3)]
    rng = np.random.default_rng(2)
    for _ in range(30):
        p = random_poset(int(rng.integers(1, 7)), rng)
        exts = list(enumerate_linear_extensions(p))
        assert exts == sorted(set(exts)) and len(exts) == count_linear_extensions(p)
        assert all(is_linear_extension(p, e) for e in exts)


def test_antichains_and_cutsets():
    chain = Poset.chain(3)
    assert set(antichains(chain)) == {frozenset(), frozenset({0}), frozenset({1}), frozenset({2})}
    assert is_cutset(chain, {1})
    anti = Poset.antichain(2)
    assert is_antichain(anti, {0, 1}) and is_cutset(anti, {0, 1}) and not is_cutset(anti, {0})
    assert is_antichain(ZIGZAG, {0, 2}) and is_cutset(ZIGZAG, {0, 2})


def test_cutset_against_chain_enumeration():
    rng = np.random.default_rng(3)
    for _ in range(40):
        p = random_poset(int(rng.integers(1, 7)), rng)
        chains = maximal_chains(p)
        for s in range(1 << p.n):
            assert is_cutset(p, s) == all(c & s for c in chains)


def test_natural_flow_examples():
    chain = AcyclicOrientation.from_arcs(path_graph(3), [(0, 1), (1, 2)])
    f = natural_flow(chain)
    assert set(f.values.values()) == {1} and net_flow(f) == 1
    f = natural_flow(AcyclicOrientation(empty_graph(2), 0))
    assert f.values[(SOURCE, 0)] == f.values[(SOURCE, 1)] == 1 and net_flow(f) == 2
    vee = AcyclicOrientation.from_arcs(Graph(3, ((0, 2), (1, 2))), [(0, 2), (1, 2)])
    f = natural_flow(vee)
    assert f.values[(SOURCE, 0)] == f.values[(SOURCE, 1)] == 1
    assert f.values[(0, 2)] == f.values[(1, 2)] == 1 and f.values[(2, SINK)] == 2
    assert net_flow(natural_flow(C5_AB)) == 8


def test_natural_flow_properties():
    rng = np.random.default_rng(4)
    for _ in range(100):
        o = random_orientation(int(rng.integers(1, 8)), rng)
        f = natural_flow(o)
        assert f.is_conserved() and f.is_nonnegative()
        assert net_flow(f) == count_linear_extensions(poset_from_orientation(o))
        assert f.values == natural_flow_by_enumeration(o).values


def test_recurrence_examples():
    r = recurrence_sides(Poset.chain(3), {1})
    assert (r.lhs, r.rhs, r.s_is_antichain, r.s_is_cutset) == (1, 1, True, True)
    r = recurrence_sides(Poset.antichain(2), {0})
    assert (r.lhs, r.rhs, r.s_is_antichain, r.s_is_cutset) == (2, 1, True, False)
    r = recurrence_sides(ZIGZAG, {0, 2})
    assert r.lhs == r.rhs == 5


def test_trans_map_examples():
    assert trans_map(Poset.chain(3), 1, {0: 1, 2: 2}) == (1, 2, 3)
    assert trans_map(Poset.antichain(2), 1, {0: 1}) == (2, 1)
    assert trans_map(V_POSET, 2, {0: 1, 1: 2})[2] == 3
    with pytest.raises(PosetError):
        trans_map(Poset.chain(3), 1, {0: 2, 2: 1})


def _extensions_without(p, v):
    q, old = p.restrict(((1 << p.n) - 1) & ~(1 << v))
    for ext in enumerate_linear_extensions(q):
        yield {old[i]: ext[i] for i in range(q.n)}


def test_trans_map_injective_and_image_matches_hasse_flow():
    rng = np.random.default_rng(5)
    for _ in range(30):
        p = random_poset(int(rng.integers(2, 7)), rng)
        hasse = Graph(p.n, tuple(sorted((min(a, b), max(a, b)) for a, b in p.cover_pairs())))
        o = AcyclicOrientation.from_arcs(hasse, p.cover_pairs())
        flow = natural_flow(o)
        for v in range(p.n):
            images = [trans_map(p, v, s) for s in _extensions_without(p, v)]
            assert len(set(images)) == len(images)
            assert all(is_linear_extension(p, img) for img in images)
            assert len(images) == flow.inflow(v)


def test_comparability_graph():
    assert comparability_graph(Poset.chain(3)).m == 3
    assert comparability_graph(Poset.antichain(2)).m == 0
    assert comparability_graph(ZIGZAG) == path_graph(4)


def test_comparability_monotonicity():
    """Dropping a cover relation shrinks the comparability graph and adds extensions."""
    rng = np.random.default_rng(6)
    for _ in range(60):
        p = random_poset(int(rng.integers(2, 7)), rng)
        covers = p.cover_pairs()
        if not covers:
            continue
        i, j = covers[int(rng.integers(len(covers)))]
        q = Poset.from_relations(p.n, [r for r in p.relations() if r != (i, j)])
        assert set(q.relations()) == set(p.relations()) - {(i, j)}
        assert count_linear_extensions(q) > count_linear_extensions(p)
        dual = Poset.from_relations(p.n, [(b, a) for a, b in p.relations()])
        assert count_linear_extensions(dual) == count_linear_extensions(p)


def test_serialisation():
    assert Poset.from_json(ZIGZAG.to_json()) == ZIGZAG
    assert json.loads(ZIGZAG.to_json())["n"] == 4
    assert parse_poset("3 2\n0 1\n1 2") == Poset.chain(3)
    with pytest.raises(PosetError):
        parse_poset("2 2\n0 1\n1 0")


def test_restrict():
    q, old = Poset.chain(4).restrict(0b1010)
    assert q == Poset.chain(2) and old == [1, 3]


def test_small_exhaustive_recurrence():
    for n in range(1, 5):
        pairs = list(itertools.permutations(range(n), 2))
        for mask in range(0, 1 << len(pairs), 3):
            try:
                p = Poset.from_relations(n, [pairs[k] for k in range(len(pairs)) if mask >> k & 1])
            except PosetError:
                continue
            for s in range(1, 1 << n):
                r = recurrence_sides(p, s)
                if r.s_is_antichain:
                    assert r.lhs >= r.rhs
                if r.s_is_cutset:
                    assert r.lhs <= r.rhs
                if r.s_is_antichain or r.s_is_cutset:
                    assert (r.lhs == r.rhs) == (r.s_is_antichain and r.s_is_cutset)
