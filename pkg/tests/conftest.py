import itertools
from fractions import Fraction

import numpy as np
import pytest

from ersgraph.graph import build_graph


def random_connected_graph(rng, n, extra=0.4, backend="rational"):
    """Random spanning tree plus extra edges, small rational weights."""
    labels = [f"x{i}" for i in range(n)]
    edges = {}
    order = rng.permutation(n)
    for k in range(1, n):
        a, b = int(order[k]), int(order[rng.integers(0, k)])
        edges[frozenset((a, b))] = None
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < extra:
            edges[frozenset((a, b))] = None
    triples = []
    for key in edges:
        a, b = sorted(key)
        w = Fraction(int(rng.integers(1, 10)), int(rng.integers(1, 6)))
        triples.append((labels[a], labels[b], w))
    return build_graph(labels, triples, backend)


def cofactor_det(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def spanning_tree_sum(g):
    """Sum over spanning trees of the product of edge weights, by enumeration."""
    edges = list(g.edges())
    n = g.n
    total = Fraction(0)
    for subset in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        weight = Fraction(1)
        for u, v, w in subset:
            a, b = find(g.index(u)), find(g.index(v))
            if a == b:
                ok = False
                break
            parent[a] = b
            weight *= w
        if ok:
            total += weight
    return total


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def c4():
    return build_graph(["v0", "v1", "v2", "v3"],
                       [("v0", "v1", 1), ("v1", "v2", 1), ("v2", "v3", 1), ("v3", "v0", 1)])


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when == "call":
        _ACCEPTANCE.extend(v for k, v in report.user_properties if k == "acceptance")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
