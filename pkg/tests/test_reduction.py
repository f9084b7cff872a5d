from fractions import Fraction as F

import numpy as np
import pytest

from conftest import random_connected_graph
from ersgraph.errors import BadParameter, Disconnects, TooSmall, UnknownVertex
from ersgraph.ers import effective_resistance, recover_graph
from ersgraph.families import tightness_graph
from ersgraph.graph import build_graph
from ersgraph.reduction import monotonicity_report, reduce_graph, star_mesh, trace_to_subset


def test_triangle():
    tri = build_graph("abc", [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    for x0 in "abc":
        out = star_mesh(tri, x0)
        (u, v, w), = out.edges()
        assert w == F(3, 2)


def test_pendant_removal_keeps_weights():
    g = build_graph("abcd", [("a", "b", 2), ("b", "c", 3), ("a", "c", 5), ("c", "d", 7)])
    out = star_mesh(g, "d")
    assert out.equals(g.relabel("abcd").__class__(("a", "b", "c"), g.c[:3, :3]))


@pytest.mark.parametrize("n", [3, 5, 8, 12])
def test_tightness_removal_recovers_previous(n):
    out = star_mesh(tightness_graph(n), f"v{n}")
    assert out.weight("v0", f"v{n - 1}") == 1
    assert out.equals(tightness_graph(n - 1))


def test_c4_opposite_trace(c4):
    out = trace_to_subset(c4, ["v0", "v2"])
    assert out.weight("v0", "v2") == 1


def test_trace_keep_all_is_identity(c4):
    trace = reduce_graph(c4, c4.labels)
    assert trace.order == [] and trace.final.equals(c4)


def test_trace_order_independent(rng):
    for _ in range(5):
        g = random_connected_graph(rng, 7)
        keep = list(rng.choice(g.labels, size=3, replace=False))
        drop = [v for v in g.labels if v not in keep]
        a = trace_to_subset(g, keep, list(rng.permutation(drop)))
        b = trace_to_subset(g, keep, list(rng.permutation(drop)))
        assert a.equals(b)


def test_trace_matches_recovery(rng):
    for _ in range(10):
        g = random_connected_graph(rng, int(rng.integers(3, 8)))
        keep = [v for v in g.labels if rng.random() < 0.6][:max(2, g.n - 2)]
        if len(keep) < 2:
            keep = list(g.labels[:2])
        traced = trace_to_subset(g, keep)
        recovered = recover_graph(effective_resistance(g).restrict(traced.labels)).graph
        assert traced.equals(recovered)


def test_star_mesh_invariance_and_strengths(rng):
    for _ in range(20):
        g = random_connected_graph(rng, int(rng.integers(3, 9)))
        x0 = g.labels[int(rng.integers(g.n))]
        out = star_mesh(g, x0)
        assert effective_resistance(out).equals(effective_resistance(g).restrict(out.labels))
        hub = g.strength(x0)
        for x in out.labels:
            assert out.strength(x) == g.strength(x) - g.weight(x0, x) ** 2 / hub


def test_trace_strength_deltas(rng):
    g = random_connected_graph(rng, 6)
    trace = reduce_graph(g, g.labels[:2])
    for x0, before, deltas in zip(trace.order, trace.graphs, trace.strength_deltas):
        hub = before.strength(x0)
        for x, d in deltas.items():
            assert d == before.weight(x0, x) ** 2 / hub
    assert all(len(a.labels) == len(b.labels) + 1 for a, b in zip(trace.graphs, trace.graphs[1:]))


def test_errors(c4):
    with pytest.raises(TooSmall):
        star_mesh(build_graph("xy", [("x", "y", 1)]), "x")
    with pytest.raises(UnknownVertex):
        star_mesh(c4, "zz")
    with pytest.raises(TooSmall):
        trace_to_subset(c4, ["v0"])
    with pytest.raises(BadParameter):
        reduce_graph(c4, ["v0", "v1"], order=["v2"])


def test_star_hub_removal_gives_complete_graph():
    star = build_graph("habc", [("h", "a", 1), ("h", "b", 1), ("h", "c", 1)])
    assert len(list(star_mesh(star, "h").edges())) == 3


def test_float_result_below_band_disconnects():
    # spokes just above the band, their mesh edge just below it
    g = build_graph("ahb", [("a", "h", 1e-5), ("h", "b", 1e-5)], "float")
    with pytest.raises(Disconnects):
        star_mesh(g, "h", tolerance=8e-6)


def test_monotonicity_identity(c4):
    rep = monotonicity_report(c4, c4.labels, c4.labels)
    assert rep.ok and rep.inner.equals(rep.outer)


def test_tightness_strength_increasing():
    g = tightness_graph(10)
    strengths = [trace_to_subset(g, g.labels[:k]).strength("v0") for k in range(2, 12)]
    assert all(a < b for a, b in zip(strengths, strengths[1:]))


def test_monotonicity_random(rng):
    for _ in range(30):
        g = random_connected_graph(rng, 8)
        perm = list(rng.permutation(g.labels))
        k1 = int(rng.integers(2, 6))
        k2 = int(rng.integers(k1, 9))
        assert monotonicity_report(g, perm[:k1], perm[:k2]).ok


def test_float_chain_residual():
    g = build_graph("abcde", [("a", "b", 1.0), ("b", "c", 0.3), ("c", "d", 2.0), ("d", "e", 1.5),
                              ("a", "e", 0.7), ("b", "d", 1.1)], "float")
    trace = reduce_graph(g, ["a", "c"])
    assert trace.residual_bound < 1e-12
    R = effective_resistance(g)
    assert np.isclose(effective_resistance(trace.final).distance("a", "c"), R.distance("a", "c"))
