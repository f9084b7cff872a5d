"""Built-in graph and metric families, with canonical vertex orders.

Infinite families are exposed two ways: ``builtin_family(name, n)`` returns
the finite instance with parameter ``n`` (a metric for ``discrete`` and
``star``, a graph otherwise), and ``family_metric(name, size)`` returns the
resistance metric restricted to the first ``size`` vertices of the family's
canonical order.  The latter is what exhaustions consume.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BadParameter, UnknownFamily
from .graph import WeightedGraph, build_graph, geodesic_metric
from .metric import MetricSpace, builtin_metric
from .numeric import RATIONAL, as_array

METRIC_FAMILIES = ("discrete", "star")
GRAPH_FAMILIES = ("tightness", "two-ray", "two-ray-bridge", "transient", "path", "cycle")
FAMILIES = METRIC_FAMILIES + GRAPH_FAMILIES
# families with an infinite canonical vertex order, usable in exhaustions
INFINITE_FAMILIES = ("discrete", "star", "tightness", "two-ray", "two-ray-bridge",
                     "transient", "path")


def _need(n, lo, name):
    if n is None or int(n) != n or n < lo:
        raise BadParameter(f"{name} needs an integer parameter >= {lo}, got {n!r}")
    return int(n)


def tightness_graph(n: int, backend: str = RATIONAL) -> WeightedGraph:
    """Spokes ``v0-vk`` of weight ``2^(1-k)`` (``1`` for ``k = n``) and a chain
    ``vk-v(k+1)`` of weight ``2^(k-1) - 1``.  Vertex strengths at ``v0`` tend to 3
    while the limiting spoke weights sum to 2."""
    n = _need(n, 1, "tightness")
    labels = [f"v{k}" for k in range(n + 1)]
    edges = []
    for k in range(1, n + 1):
        edges.append(("v0", f"v{k}", Fraction(1) if k == n else Fraction(1, 2 ** (k - 1))))
    for k in range(1, n):
        edges.append((f"v{k}", f"v{k + 1}", Fraction(2 ** (k - 1) - 1)))
    return build_graph(labels, edges, backend)


def two_ray_labels(count: int) -> list:
    """First ``count`` integers in the order 0, 1, -1, 2, -2, ..."""
    out = []
    k = 0
    while len(out) < count:
        out.append(str(k)) if k == 0 else out.extend([str(k), str(-k)])
        k += 1
    return out[:count]


def two_ray_graph(n: int, bridge: bool = False, backend: str = RATIONAL) -> WeightedGraph:
    """Path on ``-n..n`` with ``c(x, x+1) = 2^min(|x|, |x+1|)``; optionally a
    bridge of weight ``2^(n-2)`` between ``-n`` and ``n``."""
    n = _need(n, 1, "two-ray")
    labels = two_ray_labels(2 * n + 1)
    edges = [(str(x), str(x + 1), Fraction(2) ** min(abs(x), abs(x + 1)))
             for x in range(-n, n)]
    if bridge:
        edges.append((str(-n), str(n), Fraction(2) ** (n - 2)))
    return build_graph(labels, edges, backend)


def transient_graph(depth: int, backend: str = RATIONAL) -> WeightedGraph:
    """``B`` and ``T`` hang off ``0`` with unit weights; the ray ``0-1-2-...``
    has ``c(k, k+1) = 2^k``, truncated at vertex ``depth``."""
    depth = _need(depth, 1, "transient")
    labels = ["B", "T"] + [str(k) for k in range(depth + 1)]
    edges = [("B", "0", 1), ("T", "0", 1)]
    edges += [(str(k), str(k + 1), 2 ** k) for k in range(depth)]
    return build_graph(labels, edges, backend)


def path_graph(n: int, backend: str = RATIONAL) -> WeightedGraph:
    n = _need(n, 2, "path")
    labels = [str(k) for k in range(n)]
    return build_graph(labels, [(str(k), str(k + 1), 1) for k in range(n - 1)], backend)


def cycle_graph(n: int, backend: str = RATIONAL) -> WeightedGraph:
    n = _need(n, 3, "cycle")
    labels = [f"v{k}" for k in range(n)]
    return build_graph(labels, [(f"v{k}", f"v{(k + 1) % n}", 1) for k in range(n)], backend)


def builtin_family(name: str, n: int, backend: str = RATIONAL):
    """Finite instance ``n`` of a named family (exact rational by default)."""
    if name in METRIC_FAMILIES:
        _need(n, 2, name)
        return builtin_metric(name, n, backend=backend)
    if name == "tightness":
        return tightness_graph(n, backend)
    if name == "two-ray":
        return two_ray_graph(n, False, backend)
    if name == "two-ray-bridge":
        return two_ray_graph(n, True, backend)
    if name == "transient":
        return transient_graph(n, backend)
    if name == "path":
        return path_graph(n, backend)
    if name == "cycle":
        return cycle_graph(n, backend)
    raise UnknownFamily(name)


def family_boundary(name: str, n: int) -> list:
    """Vertices where instance ``n`` truncates the infinite graph."""
    if name == "transient":
        return [str(n)]
    if name in ("two-ray", "two-ray-bridge"):
        return [str(-n), str(n)]
    if name == "path":
        return [str(n - 1)]
    return []


def _ray_profile(k: int) -> Fraction:
    # resistance from 0 to +-k along one ray: sum_{j<k} 2^-j
    return 2 - Fraction(2) ** (1 - k)


def two_ray_resistance(x: int, y: int, bridge: bool = False) -> Fraction:
    """Closed forms of the two resistance metrics on the integers."""
    if x * y <= 0:
        r = _ray_profile(abs(x)) + _ray_profile(abs(y))
    else:
        r = abs(_ray_profile(abs(x)) - _ray_profile(abs(y)))
    if bridge:
        return r * (4 - r) / 4
    return r


def family_metric(name: str, size: int, backend: str = RATIONAL) -> MetricSpace:
    """The family's resistance metric on its first ``size`` canonical vertices."""
    size = _need(size, 2, name)
    if name in METRIC_FAMILIES:
        return builtin_metric(name, size, backend=backend)
    if name == "tightness":
        from .ers import effective_resistance

        r = effective_resistance(tightness_graph(size - 1))
        return _to_backend(MetricSpace(r.labels, r.d), backend)
    if name in ("two-ray", "two-ray-bridge"):
        labels = two_ray_labels(size)
        bridge = name == "two-ray-bridge"
        rows = [[two_ray_resistance(int(a), int(b), bridge) for b in labels] for a in labels]
        return MetricSpace(tuple(labels), as_array(rows, backend))
    if name == "transient":
        g = transient_graph(max(1, size - 3))
        m = geodesic_metric(g).restrict(g.labels[:size])
        return _to_backend(m, backend)
    if name == "path":
        labels = [str(k) for k in range(size)]
        rows = [[abs(i - j) for j in range(size)] for i in range(size)]
        return MetricSpace(tuple(labels), as_array(rows, backend))
    raise UnknownFamily(name)


def _to_backend(m: MetricSpace, backend: str) -> MetricSpace:
    if backend == RATIONAL:
        return m
    return MetricSpace(m.labels, m.d.astype(float))


# --- small named fixtures ------------------------------------------------------

NEGATIVE_EXAMPLE = [[0, 23, 36, 40], [23, 0, 39, 23], [36, 39, 0, 36], [40, 23, 36, 0]]


def _tree(backend):
    return build_graph(["r", "a", "b", "c", "d"],
                       [("r", "a", 2), ("r", "b", 1), ("a", "c", Fraction(1, 3)),
                        ("a", "d", 4)], backend)


def _scaled_metric(labels, rows, scale, backend):
    return MetricSpace(tuple(labels),
                       as_array([[Fraction(v, scale) for v in row] for row in rows], backend))


FIXTURES = {
    "c4": lambda b: cycle_graph(4, b),
    "c4-geodesic": lambda b: geodesic_metric(cycle_graph(4, b)),
    "negative-example": lambda b: _scaled_metric(
        [f"v{i}" for i in range(4)], NEGATIVE_EXAMPLE, 260, b),
    "two-point": lambda b: _scaled_metric(["a", "b"], [[0, 4], [4, 0]], 1, b),
    "edge": lambda b: build_graph(["x", "y"], [("x", "y", 1)], b),
    "tree": _tree,
}


def builtin_fixture(name: str, backend: str = RATIONAL):
    """Named small graph or metric used by examples and tests."""
    try:
        return FIXTURES[name](backend)
    except KeyError:
        raise UnknownFamily(name) from None
