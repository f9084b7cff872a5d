from fractions import Fraction as F

import numpy as np
import pytest

from conftest import random_connected_graph, spanning_tree_sum
from ersgraph.errors import (
    Disconnected,
    DuplicateEdge,
    IsolatedVertex,
    MissingValue,
    NegativeWeight,
    SelfLoop,
    UnknownVertex,
)
from ersgraph.ers import effective_resistance
from ersgraph.families import builtin_fixture
from ersgraph.graph import (
    build_graph,
    energy,
    geodesic_metric,
    is_connected,
    kirchhoff_matrix,
    kirchhoff_minor_determinant,
    laplacian,
)
from ersgraph.numeric import as_array, determinant

TWO_EDGES = build_graph("abcd", [("a", "b", 1), ("c", "d", 1)])
TRIANGLE = build_graph("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])


def test_c4_build(c4):
    assert c4.n == 4 and len(list(c4.edges())) == 4
    assert list(c4.strengths) == [2, 2, 2, 2]


def test_single_edge_strengths():
    g = build_graph("xy", [("x", "y", "5/2")])
    assert g.strength("x") == g.strength("y") == F(5, 2)


@pytest.mark.parametrize("edges, err", [
    ([("x", "x", 1)], SelfLoop),
    ([("x", "y", -1)], NegativeWeight),
    ([("x", "y", 1), ("y", "x", 2)], DuplicateEdge),
    ([("x", "q", 1)], UnknownVertex),
])
def test_build_errors(edges, err):
    with pytest.raises(err):
        build_graph("xy", edges)


def test_laplacian_examples(c4):
    edge = build_graph("xy", [("x", "y", 7)])
    assert np.all(laplacian(edge).values == as_array([[1, -1], [-1, 1]]))
    L = laplacian(c4).values
    assert np.all(L == as_array([[1, F(-1, 2), 0, F(-1, 2)], [F(-1, 2), 1, F(-1, 2), 0],
                                 [0, F(-1, 2), 1, F(-1, 2)], [F(-1, 2), 0, F(-1, 2), 1]]))


def test_laplacian_rows_sum_to_zero(rng):
    for _ in range(10):
        L = laplacian(random_connected_graph(rng, 6)).values
        assert all(s == 0 for s in L.sum(axis=1))


def test_laplacian_isolated_vertex():
    with pytest.raises(IsolatedVertex):
        laplacian(build_graph("xyz", [("x", "y", 1)]))


def test_kirchhoff_minor_examples():
    edge = build_graph("xy", [("x", "y", 3)])
    assert kirchhoff_minor_determinant(edge, "x") == kirchhoff_minor_determinant(edge, "y") == 3
    assert all(kirchhoff_minor_determinant(TRIANGLE, v) == 3 for v in "abc")
    assert kirchhoff_minor_determinant(TWO_EDGES, "a") == 0


def test_matrix_tree_theorem_against_enumeration(rng):
    for _ in range(15):
        g = random_connected_graph(rng, int(rng.integers(2, 8)))
        trees = spanning_tree_sum(g)
        assert trees > 0
        for y in g.labels:
            assert kirchhoff_minor_determinant(g, y) == trees


def test_laplacian_minor_relation(rng):
    g = random_connected_graph(rng, 6)
    keep = list(range(1, g.n))
    L = laplacian(g).values[np.ix_(keep, keep)]
    prod = F(1)
    for i in keep:
        prod /= g.strengths[i]
    assert determinant(L) == kirchhoff_minor_determinant(g, g.labels[0]) * prod


def test_connectivity():
    assert is_connected(builtin_fixture("c4"))
    assert not is_connected(TWO_EDGES)
    g_minus = build_graph(["v0", "v1", "v2", "v3"],
                          [("v0", "v1", 10), ("v0", "v2", 5), ("v1", "v3", 10), ("v2", "v3", 5)])
    assert is_connected(g_minus)


def test_float_connectivity_ignores_tiny_weights():
    g = build_graph("xyz", [("x", "y", 1.0), ("y", "z", 1e-12)], "float")
    assert not is_connected(g)


def test_energy_examples(c4, rng):
    assert energy(c4, {v: F(3) for v in c4.labels}) == 0
    edge = build_graph("xy", [("x", "y", 4)])
    assert energy(edge, {"x": 1, "y": 0}) == 4
    g = random_connected_graph(rng, 6)
    for x in g.labels:
        for y in g.labels:
            if x != y:
                ex = {v: int(v == x) for v in g.labels}
                ey = {v: int(v == y) for v in g.labels}
                assert energy(g, ex, ey) == -g.weight(x, y)


def test_energy_missing_value(c4):
    with pytest.raises(MissingValue):
        energy(c4, {"v0": 1})


def test_energy_positive_off_constants(rng):
    for _ in range(10):
        g = random_connected_graph(rng, 5)
        u = {v: F(int(rng.integers(-5, 6)), 3) for v in g.labels}
        e = energy(g, u)
        assert e >= 0
        assert (e == 0) == (len(set(u.values())) == 1)


def test_markov_property(rng):
    for _ in range(50):
        g = random_connected_graph(rng, int(rng.integers(2, 7)))
        u = {v: F(int(rng.integers(-20, 21)), 7) for v in g.labels}
        clipped = {v: min(F(1), max(w, F(0))) for v, w in u.items()}
        assert energy(g, clipped) <= energy(g, u)


def test_geodesic_examples(c4):
    assert np.all(geodesic_metric(c4).d == as_array([[0, 1, 2, 1], [1, 0, 1, 2],
                                                     [2, 1, 0, 1], [1, 2, 1, 0]]))
    path = build_graph("xyz", [("x", "y", 1), ("y", "z", 2)])
    assert geodesic_metric(path).distance("x", "z") == F(3, 2)
    with pytest.raises(Disconnected):
        geodesic_metric(TWO_EDGES)


def test_tree_geodesic_equals_resistance(rng):
    for _ in range(10):
        g = random_connected_graph(rng, int(rng.integers(2, 9)), extra=0.0)
        assert geodesic_metric(g).equals(effective_resistance(g))


def test_kirchhoff_matrix_shape(c4):
    K = kirchhoff_matrix(c4).values
    assert list(np.diag(K)) == [2, 2, 2, 2] and K[0, 1] == -1 and K[0, 2] == 0
