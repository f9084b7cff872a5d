import math
from fractions import Fraction as F

import numpy as np
import pytest

from conftest import random_connected_graph
from ersgraph.errors import (
    ConditionCFails,
    Disconnected,
    IsolatedVertex,
    PEqualsOne,
    RecurrenceNotAsserted,
    SameVertex,
)
from ersgraph.ers import effective_resistance, potential
from ersgraph.families import transient_graph
from ersgraph.graph import build_graph
from ersgraph.walks import (
    ABSORBED,
    HIT_TARGET,
    STEP_CAP,
    exact_expected_visits,
    exact_return_vs_hit,
    expected_visits_vector,
    first_passage_probabilities,
    first_step_frequencies,
    limit_walk_consistency,
    mc_resistance,
    phi_law_check,
    probabilistic_representation,
    sample_phi,
    simulate_walk,
)

EDGE = build_graph("xy", [("x", "y", 2)])


def test_single_edge_walk():
    w = simulate_walk(EDGE, "x", "y", seed=1)
    assert w.steps == ("x", "y") and w.stop_cause == HIT_TARGET and w.phi() == 1


def test_walk_steps_adjacent(c4):
    w = simulate_walk(c4, "v0", cap=200, seed=5)
    assert w.stop_cause == STEP_CAP and len(w.steps) == 201
    assert all(c4.weight(a, b) > 0 for a, b in zip(w.steps, w.steps[1:]))


def test_walk_absorbed():
    w = simulate_walk(transient_graph(3), "0", target="T", absorbing=["3"], seed=2, walk_index=4)
    assert w.stop_cause in (HIT_TARGET, ABSORBED)
    assert w.steps[-1] in ("T", "3")


def test_isolated_vertex():
    with pytest.raises(IsolatedVertex):
        simulate_walk(build_graph("xyz", [("x", "y", 1)]), "x", "y")


def test_first_step_symmetry(c4):
    freq = first_step_frequencies(c4, "v0", 10**4, seed=11)
    assert set(freq) == {"v1", "v3"}
    sigma = math.sqrt(0.25 / 10**4)
    assert abs(freq["v1"] - 0.5) <= 3 * sigma


def test_exact_p_examples(c4):
    assert exact_return_vs_hit(EDGE, "x", "y") == 0
    assert exact_return_vs_hit(c4, "v0", "v2") == F(1, 2)
    assert exact_expected_visits(EDGE, "x", "y") == 1
    assert exact_expected_visits(c4, "v0", "v2") == 2


def test_exact_errors(c4):
    with pytest.raises(SameVertex):
        exact_return_vs_hit(c4, "v0", "v0")
    with pytest.raises(Disconnected):
        exact_return_vs_hit(build_graph("abcd", [("a", "b", 1), ("c", "d", 1)]), "a", "c")


def test_p_equals_one_guard(monkeypatch):
    from ersgraph import walks

    class Certain:
        return_first = F(1)

    monkeypatch.setattr(walks, "first_passage_probabilities", lambda *a, **k: Certain())
    with pytest.raises(PEqualsOne):
        walks.exact_expected_visits(EDGE, "x", "y")


def test_transient_probabilities():
    reflecting = first_passage_probabilities(transient_graph(20), "B", "T")
    assert reflecting.return_first == reflecting.hit_first == F(1, 2)
    killed = first_passage_probabilities(transient_graph(20), "B", "T", absorbing=["20"])
    assert abs(killed.hit_first - F(2, 5)) < F(1, 1000)
    assert abs(killed.hit_or_escape - F(3, 5)) < F(1, 1000)
    assert abs(killed.return_first - F(2, 5)) < F(1, 1000)
    assert killed.return_first + killed.hit_first + killed.escape == 1


def test_representation_identity_random(rng):
    for _ in range(15):
        g = random_connected_graph(rng, int(rng.integers(2, 7)))
        x, y = g.labels[0], g.labels[-1]
        rep = probabilistic_representation(g, x, y)
        assert rep.resistance_ok and rep.potential_ok
        assert rep.resistance == effective_resistance(g).distance(x, y)


def test_expected_visits_vector_c4(c4):
    v = expected_visits_vector(c4, "v0", "v2")
    assert v == {"v0": 2, "v1": 1, "v2": 0, "v3": 1}
    phi = potential(c4, "v0", "v2")
    assert all(v[z] / 2 == phi[z] for z in c4.labels)


def test_mc_single_edge():
    est = mc_resistance(EDGE, "x", "y", walks=500, seed=3)
    assert est.estimate == 0.5 and est.stderr == 0.0 and est.samples == 500


def test_mc_c4(c4):
    est = mc_resistance(c4, "v0", "v2", walks=20000, seed=9)
    assert abs(est.estimate - 1.0) <= 3 * est.stderr
    assert est.capped == 0 and not est.bias_warning


def test_mc_same_vertex(c4):
    assert mc_resistance(c4, "v0", "v0", walks=10).estimate == 0.0


def test_mc_reflecting_transient_truncation():
    est = mc_resistance(transient_graph(4), "B", "T", walks=20000, seed=2)
    assert abs(est.estimate - 2.0) <= 3 * est.stderr


def test_mc_killed_transient_truncation():
    g = transient_graph(20)
    est = mc_resistance(g, "B", "T", walks=20000, seed=4, absorbing=["20"])
    exact = float(exact_expected_visits(g, "B", "T", absorbing=["20"]))
    assert abs(exact - 5 / 3) < 1e-3
    assert abs(est.estimate - exact) <= 3 * est.stderr
    sample = sample_phi(g, "B", "T", 20000, seed=4, absorbing=["20"])
    hit = float(np.mean(sample.hit))
    p_hit = float(first_passage_probabilities(g, "B", "T", ["20"]).hit_or_escape)
    # every walk eventually hits T or escapes; the per-excursion split is checked via Phi
    assert 0 < hit < 1 and sample.absorbed > 0 and p_hit > 0


def test_cap_excluded_with_warning():
    est = mc_resistance(transient_graph(12), "B", "T", walks=300, cap=50, seed=1)
    assert est.capped > 0 and est.bias_warning and est.samples == 300 - est.capped


def test_reproducible_across_workers(c4):
    a = mc_resistance(c4, "v0", "v2", walks=3000, seed=42, workers=1)
    b = mc_resistance(c4, "v0", "v2", walks=3000, seed=42, workers=3)
    assert (a.estimate, a.stderr, a.samples) == (b.estimate, b.stderr, b.samples)
    s1 = sample_phi(c4, "v0", "v2", 1000, seed=42, workers=1)
    s2 = sample_phi(c4, "v0", "v2", 1000, seed=42, workers=2)
    assert np.array_equal(s1.phi, s2.phi)
    c = mc_resistance(c4, "v0", "v2", walks=3000, seed=43)
    assert c.estimate != a.estimate


def test_phi_law_single_edge():
    rep = phi_law_check(EDGE, "x", "y", samples=200, seed=1)
    assert rep.histogram == {1: 200} and rep.passed


def test_phi_law_c4(c4):
    rep = phi_law_check(c4, "v0", "v2", samples=20000, seed=7)
    assert rep.p == F(1, 2)
    assert rep.chi2_ok and rep.mean_ok and rep.variance_ok
    assert rep.variance_expected == 2.0


def test_limit_check_requires_recurrence():
    with pytest.raises(RecurrenceNotAsserted) as exc:
        limit_walk_consistency("two-ray", range(2, 8), "0", "1")
    assert "3/5" in str(exc.value) and "two-ray" in str(exc.value)


def test_limit_check_path():
    rep = limit_walk_consistency("path", range(2, 12), "3", "4", samples=5000, seed=3,
                                 assert_recurrent=True)
    assert rep.resistance == 1 and rep.limit_graph_resistance == 1
    assert rep.mc_ok and rep.transitions_ok


def test_limit_check_same_vertex():
    rep = limit_walk_consistency("path", range(2, 6), "1", "1", assert_recurrent=True)
    assert rep.resistance == 0 and rep.mc.estimate == 0


def test_limit_check_condition_c_fails():
    with pytest.raises(ConditionCFails):
        limit_walk_consistency("tightness", range(2, 12), "v0", "v1", assert_recurrent=True)
