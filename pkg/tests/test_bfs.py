import numpy as np
import pytest

from conftest import enumerate_triangles, er_graph, graph_from_pairs
from tricount.bfs import bfs_forest, classify_edges, horizontal_fraction
from tricount.errors import ContractViolation
from tricount.graph import RmatParams, build_csr, rmat_generate

PATH4 = [(0, 1), (1, 2), (2, 3)]


def edge_set(g):
    return {tuple(e) for e in g.edge_array().tolist()}


def test_path_levels():
    la = bfs_forest(graph_from_pairs(PATH4))
    assert la.level.tolist() == [0, 1, 2, 3]
    assert la.roots.tolist() == [0]


def test_two_components():
    la = bfs_forest(graph_from_pairs([(0, 1), (2, 3)]))
    assert la.level.tolist() == [0, 1, 0, 1]
    assert la.roots.tolist() == [0, 2]


def test_isolated_vertices_are_roots():
    la = bfs_forest(graph_from_pairs([(1, 2)], n=4))
    assert la.level.tolist() == [0, 0, 1, 0]
    assert la.roots.tolist() == [0, 1, 3]


def test_k4_levels(k4):
    assert bfs_forest(k4).level.tolist() == [0, 1, 1, 1]


def test_root_order_changes_roots():
    g = graph_from_pairs(PATH4)
    la = bfs_forest(g, [2, 0, 1, 3])
    assert la.roots.tolist() == [2]
    assert la.level.tolist() == [2, 1, 0, 1]


def test_root_order_must_be_permutation():
    with pytest.raises(ContractViolation):
        bfs_forest(graph_from_pairs(PATH4), [0, 0, 1, 2])


def test_k4_partition(k4):
    p = classify_edges(k4, bfs_forest(k4))
    assert edge_set(p.g0) == {(1, 2), (1, 3), (2, 3)}
    assert edge_set(p.g1) == {(0, 1), (0, 2), (0, 3)}
    assert horizontal_fraction(p) == 50.0


def test_path_partition():
    g = graph_from_pairs(PATH4)
    p = classify_edges(g, bfs_forest(g))
    assert p.g0.m == 0 and p.g1.m == 3
    assert horizontal_fraction(p) == 0.0


def test_tree_has_no_horizontal_edges():
    rng = np.random.default_rng(0)
    parents = [int(rng.integers(0, v)) for v in range(1, 200)]
    g = graph_from_pairs([(p, v) for v, p in enumerate(parents, start=1)])
    assert horizontal_fraction(classify_edges(g, bfs_forest(g))) == 0.0


def test_empty_graph_fraction():
    g = graph_from_pairs([], n=3)
    assert horizontal_fraction(classify_edges(g, bfs_forest(g))) == 0.0


def test_level_length_mismatch(k4):
    with pytest.raises(ContractViolation):
        classify_edges(k4, np.zeros(3, dtype=np.int64))


def recount_horizontal(g, level):
    e = g.edge_array()
    return int(np.sum(level[e[:, 0]] == level[e[:, 1]]))


def test_karate_fraction_matches_recount(karate):
    la = bfs_forest(karate)
    p = classify_edges(karate, la)
    h = recount_horizontal(karate, la.level)
    assert p.g0.m == h
    assert horizontal_fraction(p) == pytest.approx(100 * h / 78)
    # ascending-id roots give 35.9% on karate
    assert round(horizontal_fraction(p), 1) == 35.9


def test_rmat6_fraction_matches_recount():
    g = build_csr(rmat_generate(RmatParams(6, 16, seed=0)))
    la = bfs_forest(g)
    k = horizontal_fraction(classify_edges(g, la))
    assert 0.0 <= k <= 100.0
    assert k == pytest.approx(100 * recount_horizontal(g, la.level) / g.m)


@pytest.mark.parametrize("seed", range(30))
def test_bfs_and_partition_properties(seed):
    rng = np.random.default_rng(seed)
    g = er_graph(int(rng.integers(2, 60)), float(rng.random()) * 0.4, rng)
    order = rng.permutation(g.n)
    la = bfs_forest(g, order)
    e = g.edge_array()
    assert np.all(la.level >= 0)
    assert np.all(la.level[la.roots] == 0)
    assert np.all(np.abs(la.level[e[:, 0]] - la.level[e[:, 1]]) <= 1)
    p = classify_edges(g, la)
    p.g0.validate()
    p.g1.validate()
    assert p.g0.n == p.g1.n == g.n
    e0, e1 = edge_set(p.g0), edge_set(p.g1)
    assert not e0 & e1 and e0 | e1 == edge_set(g)
    assert all(la.level[u] == la.level[v] for u, v in e0)
    assert all(abs(la.level[u] - la.level[v]) == 1 for u, v in e1)
    assert np.array_equal(p.g0.degrees() + p.g1.degrees(), g.degrees())
    for tri in enumerate_triangles(g):
        pairs = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        assert any(pair in e0 for pair in pairs)
