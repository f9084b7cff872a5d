"""Star-mesh elimination, traces onto vertex subsets, monotonicity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameter, Disconnected, Disconnects, TooSmall, UnknownVertex
from .graph import WeightedGraph, is_connected
from .numeric import DEFAULT_TOLERANCE, RATIONAL


def star_mesh(g: WeightedGraph, x0, tolerance: float = DEFAULT_TOLERANCE) -> WeightedGraph:
    """Remove ``x0`` and add ``c(x, x0) c(x0, y) / c_x0`` to every surviving pair.

    Effective resistances among the surviving vertices are unchanged.
    """
    k = g.index(x0)
    if g.n < 3:
        raise TooSmall("star-mesh needs at least 3 vertices")
    if not is_connected(g, tolerance):
        raise Disconnected("star-mesh needs a connected graph")
    keep = [i for i in range(g.n) if i != k]
    spoke = g.c[keep, k]
    hub = g.c[k].sum()
    c = g.c[np.ix_(keep, keep)] + spoke[:, None] * spoke[None, :] / hub
    for i in range(len(keep)):
        c[i, i] = 0 * hub
    if g.backend != RATIONAL:
        c = 0.5 * (c + c.T)
    out = WeightedGraph(tuple(g.labels[i] for i in keep), c)
    if not is_connected(out, tolerance):
        raise Disconnects(f"removing {x0!r} disconnects the graph")
    return out


@dataclass
class ReductionTrace:
    """Snapshots of a star-mesh chain.

    ``graphs[0]`` is the original graph and ``graphs[i + 1]`` follows the
    removal of ``order[i]``.  ``strength_deltas[i]`` maps each survivor to
    ``c_x - c'_x``, which equals ``c(x0, x)^2 / c_x0``.  In float mode
    ``residual_bound`` accumulates the largest mismatch between that closed
    form and the recomputed strengths.
    """

    original: WeightedGraph
    order: list
    graphs: list
    strength_deltas: list = field(default_factory=list)
    residual_bound: float = 0.0

    @property
    def final(self) -> WeightedGraph:
        return self.graphs[-1]


def _check_subset(g: WeightedGraph, keep):
    keep = list(keep)
    for v in keep:
        if v not in g.labels:
            raise UnknownVertex(v)
    if len(set(keep)) != len(keep):
        raise BadParameter("duplicate vertices in the kept set")
    if len(keep) < 2:
        raise TooSmall("a trace needs at least 2 kept vertices")
    return set(keep)


def reduce_graph(g: WeightedGraph, keep, order=None,
                 tolerance: float = DEFAULT_TOLERANCE) -> ReductionTrace:
    """Eliminate every vertex outside ``keep``; default order is label order."""
    kept = _check_subset(g, keep)
    drop = [v for v in g.labels if v not in kept]
    if order is None:
        order = drop
    else:
        order = list(order)
        if set(order) != set(drop) or len(order) != len(drop):
            raise BadParameter("removal order must list exactly the removed vertices")
    trace = ReductionTrace(g, list(order), [g])
    exact = g.backend == RATIONAL
    current = g
    for x0 in order:
        k = current.index(x0)
        before = current.strengths
        spoke = current.c[:, k]
        hub = before[k]
        nxt = star_mesh(current, x0, tolerance)
        after = nxt.strengths
        deltas = {}
        worst = 0.0
        pos = 0
        for i, v in enumerate(current.labels):
            if i == k:
                continue
            closed = spoke[i] * spoke[i] / hub
            deltas[v] = before[i] - after[pos]
            if not exact:
                worst = max(worst, abs(float(deltas[v] - closed)))
            pos += 1
        trace.strength_deltas.append(deltas)
        trace.residual_bound += worst
        trace.graphs.append(nxt)
        current = nxt
    return trace


def trace_to_subset(g: WeightedGraph, keep, order=None,
                    tolerance: float = DEFAULT_TOLERANCE) -> WeightedGraph:
    """The unique graph on ``keep`` with the same effective resistances as ``g``."""
    return reduce_graph(g, keep, order, tolerance).final


@dataclass
class MonotonicityReport:
    inner: WeightedGraph
    outer: WeightedGraph
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def monotonicity_report(g: WeightedGraph, inner, outer,
                        tolerance: float = DEFAULT_TOLERANCE) -> MonotonicityReport:
    """Compare the traces of ``g`` on nested sets ``inner`` within ``outer``.

    Edge weights may only shrink and strengths only grow as the vertex set
    grows, and so may the one-step probabilities ``c(x, y) / c_x``.
    Each violation is recorded as ``(law, x, y, inner value, outer value)``.
    """
    inner, outer = list(inner), list(outer)
    if not set(inner) <= set(outer):
        raise BadParameter("inner set is not contained in the outer set")
    g1 = trace_to_subset(g, inner, tolerance=tolerance)
    g2 = trace_to_subset(g, outer, tolerance=tolerance)
    slack = 0 if g.backend == RATIONAL else tolerance
    s1, s2 = g1.strengths, g2.strengths
    violations = []
    for x in g1.labels:
        i1, i2 = g1.index(x), g2.index(x)
        if s1[i1] > s2[i2] + slack:
            violations.append(("strength", x, None, s1[i1], s2[i2]))
        for y in g1.labels:
            if y == x:
                continue
            j1, j2 = g1.index(y), g2.index(y)
            a, b = g1.c[i1, j1], g2.c[i2, j2]
            if a < b - slack:
                violations.append(("edge", x, y, a, b))
            qa, qb = a / s1[i1], b / s2[i2]
            if qa < qb - slack:
                violations.append(("quotient", x, y, qa, qb))
    return MonotonicityReport(g1, g2, violations)
