import json

import pytest

import oracles
from linext.corpus import labeled_graphs
from linext.graph import (
    DisconnectedGraphError,
    Graph,
    GraphError,
    complete_graph,
    count_acyclic_orientations,
    cycle_graph,
    empty_graph,
    path_graph,
)
from linext.orientations import (
    AcyclicOrientation,
    CyclicOrientationError,
    OrientationError,
    bipartite_orientations,
    count_directed_two_paths,
    enumerate_acyclic_orientations,
    is_almost_bipartite,
    is_transitive,
    orientation_from_bijection,
    triple_stats,
    zonotope_vertex,
)

P3 = path_graph(3)
C5 = cycle_graph(5)


def arcs(o):
    return set(o.arcs)


def test_orientation_from_bijection():
    assert arcs(orientation_from_bijection(P3, (1, 2, 3))) == {(0, 1), (1, 2)}
    assert arcs(orientation_from_bijection(P3, (1, 3, 2))) == {(0, 1), (2, 1)}
    f = (3, 1, 4, 5, 2)
    rev = tuple(6 - x for x in f)
    assert orientation_from_bijection(C5, rev) == orientation_from_bijection(C5, f).reversed()
    with pytest.raises(OrientationError):
        orientation_from_bijection(P3, (1, 1, 2))


def test_enumeration_counts():
    assert len(list(enumerate_acyclic_orientations(C5))) == 30
    assert len(list(enumerate_acyclic_orientations(complete_graph(3)))) == 6
    assert len(list(enumerate_acyclic_orientations(path_graph(2)))) == 2
    for n in range(1, 6):
        for g in labeled_graphs(n):
            got = [frozenset(o.arcs) for o in enumerate_acyclic_orientations(g)]
            assert len(got) == len(set(got)) == count_acyclic_orientations(g)
            assert set(got) == set(oracles.orientations(n, g.edges))


def test_enumeration_order_and_shards():
    masks = [o.mask for o in enumerate_acyclic_orientations(C5)]
    assert masks == sorted(masks)
    for k in (1, 2, 3):
        merged = sorted(o.mask for v in range(1 << k) for o in enumerate_acyclic_orientations(C5, (k, v)))
        assert merged == masks


def test_cyclic_rejected():
    with pytest.raises(CyclicOrientationError):
        AcyclicOrientation.from_arcs(complete_graph(3), [(0, 1), (1, 2), (2, 0)])


def test_bipartite_orientations():
    down, up = bipartite_orientations(P3)
    assert arcs(down) == {(0, 1), (2, 1)} and arcs(up) == {(1, 0), (1, 2)}
    down, up = bipartite_orientations(cycle_graph(6))
    assert arcs(down) == {(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)}
    with pytest.raises(GraphError):
        bipartite_orientations(C5)
    with pytest.raises(DisconnectedGraphError):
        bipartite_orientations(empty_graph(2))


def test_two_paths_and_almost_bipartite():
    assert count_directed_two_paths(AcyclicOrientation.from_arcs(P3, [(0, 1), (1, 2)])) == 1
    assert count_directed_two_paths(AcyclicOrientation.from_arcs(P3, [(0, 1), (2, 1)])) == 0
    ab = AcyclicOrientation.from_arcs(C5, [(0, 1), (2, 1), (2, 3), (4, 3), (0, 4)])
    assert count_directed_two_paths(ab) == 1 and is_almost_bipartite(ab)
    chain = AcyclicOrientation.from_arcs(C5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert not is_almost_bipartite(chain)
    assert all(is_almost_bipartite(o) for o in enumerate_acyclic_orientations(cycle_graph(3)))
    with pytest.raises(GraphError):
        is_almost_bipartite(AcyclicOrientation.from_arcs(P3, [(0, 1), (1, 2)]))


def test_almost_bipartite_count_on_c5():
    assert sum(is_almost_bipartite(o) for o in enumerate_acyclic_orientations(C5)) == 10


def test_transitivity():
    assert is_transitive(AcyclicOrientation.from_arcs(complete_graph(3), [(0, 1), (1, 2), (0, 2)]))
    assert not is_transitive(AcyclicOrientation.from_arcs(P3, [(0, 1), (1, 2)]))
    assert is_transitive(AcyclicOrientation.from_arcs(P3, [(0, 1), (2, 1)]))
    for g in labeled_graphs(4):
        for o in enumerate_acyclic_orientations(g):
            assert is_transitive(o) == oracles.is_transitive(o.arcs)


def test_triple_stats_examples():
    k3 = AcyclicOrientation.from_arcs(complete_graph(3), [(0, 1), (1, 2), (0, 2)])
    assert (triple_stats(k3).tri, triple_stats(k3).inc, triple_stats(k3).com) == (1, 0, 0)
    t = triple_stats(AcyclicOrientation.from_arcs(P3, [(0, 1), (1, 2)]))
    assert (t.tri, t.inc, t.com) == (0, 0, 1)
    t = triple_stats(AcyclicOrientation.from_arcs(P3, [(0, 1), (2, 1)]))
    assert (t.tri, t.inc, t.com) == (0, 1, 0)


def test_zonotope_vertex():
    assert zonotope_vertex(AcyclicOrientation.from_arcs(P3, [(0, 1), (2, 1)])) == (1, -2, 1)
    assert zonotope_vertex(AcyclicOrientation.from_arcs(P3, [(0, 1), (1, 2)])) == (1, 0, -1)
    k3 = AcyclicOrientation.from_arcs(complete_graph(3), [(0, 1), (0, 2), (1, 2)])
    assert zonotope_vertex(k3) == (2, 0, -2)
    for o in enumerate_acyclic_orientations(C5):
        z = zonotope_vertex(o)
        assert sum(z) == 0 and zonotope_vertex(o.reversed()) == tuple(-x for x in z)


def test_json_round_trip():
    for o in enumerate_acyclic_orientations(C5):
        text = o.to_json()
        assert json.loads(text) == [list(a) for a in o.arcs]
        assert AcyclicOrientation.from_json(C5, text) == o


def test_from_arcs_validation():
    with pytest.raises(OrientationError):
        AcyclicOrientation.from_arcs(P3, [(0, 1)])
    with pytest.raises(OrientationError):
        AcyclicOrientation.from_arcs(P3, [(0, 2), (1, 2)])
    with pytest.raises(OrientationError):
        AcyclicOrientation(Graph(2, ((0, 1),)), 4)
