"""Exhaustions of countable resistance metrics and limit-graph diagnostics.

An exhaustion recovers the graph on the first ``n`` vertices for a growing
sequence of sizes.  Edge weights along such a sequence can only shrink and
vertex strengths can only grow, so each pair and vertex gets a monotone
trajectory.  ``limit_graph_estimate`` reads limits off those trajectories
and compares, per vertex, the limiting strength with the sum of limiting
edge weights.

Limit estimates per trajectory:

* ``stalled``: the value stopped moving (exact repetition of the last two
  values in rational mode, relative change below tolerance over the last
  three in float mode); the limit is the last value.
* ``extrapolated``: three or more points; Aitken's delta-squared when the
  last differences are exactly geometric, otherwise Richardson
  extrapolation in ``1/n`` from the last two points, clamped to the
  monotone bound (edges in ``[0, last]``, strengths at least ``last``).
* ``unconverged``: two points only, or a jump right after a flat stretch;
  the last value, an upper bound for an edge and a lower bound for a
  strength.
* ``new``: the pair first appeared at the largest size.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import InsufficientData, NestingViolation, NotAResistanceMetric
from .ers import effective_resistance, recover_graph
from .families import family_metric, two_ray_graph
from .graph import WeightedGraph
from .metric import MetricSpace
from .numeric import DEFAULT_TOLERANCE, RATIONAL, format_scalar

STALLED = "stalled"
EXTRAPOLATED = "extrapolated"
UNCONVERGED = "unconverged"
NEW = "new"
RESOLVED = (STALLED, EXTRAPOLATED)

HOLDS = "holds"
FAILS_WITHIN = "fails_within"
DIVERGENCE_SUSPECTED = "divergence_suspected"
UNDETERMINED = "undetermined"

DEFAULT_GAP_EPSILON = 0.5
DEFAULT_DIVERGENCE_CAP = 1e6
FLOAT_STALL_TOLERANCE = 1e-6


@dataclass
class ExhaustionPlan:
    """Sizes ``n_1 < n_2 < ...`` and a generator ``size -> MetricSpace``.

    The generator must return nested metrics: the metric at a smaller size
    is the restriction of the one at a larger size to its first points.
    """

    family: str
    sizes: list
    generator: Callable[[int], MetricSpace] | None = None
    backend: str = RATIONAL

    def __post_init__(self):
        self.sizes = [int(s) for s in self.sizes]
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("exhaustion sizes must be strictly increasing")
        if self.sizes and self.sizes[0] < 2:
            raise ValueError("exhaustion sizes start at 2")
        if self.generator is None:
            family, backend = self.family, self.backend
            self.generator = lambda size: family_metric(family, size, backend)


def _nested(small: MetricSpace, big: MetricSpace, tolerance) -> bool:
    if big.labels[: small.n] != small.labels:
        return False
    sub = big.d[: small.n, : small.n]
    if small.backend == RATIONAL and big.backend == RATIONAL:
        return bool(np.all(sub == small.d))
    diff = np.abs(sub.astype(float) - small.d.astype(float))
    return bool(diff.max() <= tolerance * max(1.0, float(np.abs(big.d).max())))


def exhaustion_traces(plan: ExhaustionPlan, tolerance: float = DEFAULT_TOLERANCE) -> list:
    """Recovered graphs ``G_n`` for every size of the plan.

    Raises NotAResistanceMetric if some restriction is not realizable, and
    NestingViolation if consecutive metrics disagree on shared points.
    """
    traces = []
    previous = None
    for size in plan.sizes:
        m = plan.generator(size)
        if m.n != size:
            raise NestingViolation(f"generator returned {m.n} points for size {size}")
        if previous is not None and not _nested(previous, m, tolerance):
            raise NestingViolation(f"metric at size {size} does not extend size {previous.n}")
        # float weights that vanish in the limit would otherwise stall the run
        verdict = recover_graph(m, tolerance, snap_zero=m.backend != RATIONAL)
        if not verdict.is_ers:
            raise NotAResistanceMetric(size, verdict)
        traces.append(verdict.graph)
        previous = m
    return traces


# --- trajectory estimators ---------------------------------------------------


@dataclass(frozen=True)
class LimitEstimate:
    value: Fraction | float
    status: str


def _stalled(values, exact: bool, tolerance) -> bool:
    if exact:
        return len(values) >= 2 and values[-1] == values[-2]
    if len(values) < 3:
        return False
    tail = values[-3:]
    scale = max(max(abs(v) for v in tail), 1e-300)
    return max(abs(tail[1] - tail[0]), abs(tail[2] - tail[1])) <= tolerance * scale


def _geometric_ratio(sizes, values, exact: bool, tolerance):
    """Common ratio of the last three differences, if they form a geometric run."""
    if len(values) < 4:
        return None
    s = sizes[-4:]
    if len({b - a for a, b in zip(s, s[1:])}) != 1:
        return None
    v = values[-4:]
    d1, d2, d3 = v[1] - v[0], v[2] - v[1], v[3] - v[2]
    if d1 == 0 or d2 == 0 or d3 == 0:
        return None
    r1, r2 = d2 / d1, d3 / d2
    if exact:
        same = r1 == r2
    else:
        same = abs(r1 - r2) <= tolerance * max(1.0, abs(r1))
    if not same or not 0 < r2 < 1:
        return None
    return r2


def estimate_limit(sizes, values, increasing: bool, exact: bool,
                   tolerance=FLOAT_STALL_TOLERANCE) -> LimitEstimate:
    """Limit of a monotone trajectory (see the module docstring for the rules)."""
    last = values[-1]
    if len(values) == 1:
        return LimitEstimate(last, NEW)
    if _stalled(values, exact, tolerance):
        return LimitEstimate(last, STALLED)
    if len(values) == 2 or values[-2] == values[-3]:
        # a single jump after a flat stretch is a new neighbour, not a trend
        return LimitEstimate(last, UNCONVERGED)
    r = _geometric_ratio(sizes, values, exact, tolerance)
    if r is not None:
        guess = last + (values[-1] - values[-2]) * r / (1 - r)
    else:
        s1, s2 = sizes[-2], sizes[-1]
        guess = (s2 * values[-1] - s1 * values[-2]) / (s2 - s1)
    if increasing:
        guess = max(guess, last)
    else:
        guess = min(max(guess, 0 * last), last)
    return LimitEstimate(guess, EXTRAPOLATED)


@dataclass(frozen=True)
class ConditionC:
    """Per-vertex comparison of ``lim (c_n)_x`` with ``sum_y lim c_n(x, y)``."""

    kind: str
    strength: Fraction | float | None
    edge_sum: Fraction | float | None
    gap: Fraction | float | None
    epsilon: float
    note: str = ""

    def to_dict(self):
        fmt = lambda v: None if v is None else format_scalar(v)  # noqa: E731
        return {"verdict": self.kind, "strength_limit": fmt(self.strength),
                "edge_sum": fmt(self.edge_sum), "gap": fmt(self.gap),
                "epsilon": self.epsilon, "note": self.note}


@dataclass
class LimitGraphReport:
    sizes: list
    labels: tuple
    exact: bool
    edge_trajectories: dict
    strength_trajectories: dict
    edge_limits: dict
    strength_limits: dict
    edge_sums: dict
    condition_c: dict
    monotonicity_violations: list = field(default_factory=list)

    @property
    def completely_disconnected(self) -> bool:
        """Every edge whose limit was determined tends to zero."""
        resolved = [e for e in self.edge_limits.values() if e.status in RESOLVED]
        return bool(resolved) and all(e.value == 0 for e in resolved)

    def edge_limit(self, x, y) -> LimitEstimate:
        key = (x, y) if (x, y) in self.edge_limits else (y, x)
        return self.edge_limits[key]

    def limit_graph(self) -> WeightedGraph:
        """Finite-horizon limit graph on the largest vertex set.

        Unresolved pairs keep their last recovered weight.
        """
        n = len(self.labels)
        pos = {v: i for i, v in enumerate(self.labels)}
        zero = Fraction(0) if self.exact else 0.0
        c = np.full((n, n), zero, dtype=object if self.exact else np.float64)
        for (x, y), est in self.edge_limits.items():
            c[pos[x], pos[y]] = c[pos[y], pos[x]] = est.value
        return WeightedGraph(self.labels, c)

    def trajectories_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out)
        w.writerow(["kind", "x", "y", "n", "value"])
        for (x, y), traj in self.edge_trajectories.items():
            for size, v in traj:
                w.writerow(["edge", x, y, size, format_scalar(v)])
        for x, traj in self.strength_trajectories.items():
            for size, v in traj:
                w.writerow(["strength", x, "", size, format_scalar(v)])
        return out.getvalue()

    def to_dict(self, include_zero_edges: bool = False) -> dict:
        edges = []
        for (x, y), est in self.edge_limits.items():
            if not include_zero_edges and est.value == 0 and all(
                    v == 0 for _, v in self.edge_trajectories[(x, y)]):
                continue
            edges.append({"u": x, "v": y, "limit": format_scalar(est.value),
                          "status": est.status,
                          "trajectory": [[s, format_scalar(v)]
                                         for s, v in self.edge_trajectories[(x, y)]]})
        vertices = []
        for x in self.labels:
            est = self.strength_limits[x]
            vertices.append({"vertex": x, "strength_limit": format_scalar(est.value),
                             "status": est.status,
                             "edge_sum": format_scalar(self.edge_sums[x]),
                             "condition_c": self.condition_c[x].to_dict(),
                             "trajectory": [[s, format_scalar(v)]
                                            for s, v in self.strength_trajectories[x]]})
        return {
            "sizes": self.sizes,
            "completely_disconnected": self.completely_disconnected,
            "edges": edges,
            "vertices": vertices,
            "monotonicity_violations": [
                {"law": law, "x": x, "y": y, "n": size, "before": format_scalar(a),
                 "after": format_scalar(b)}
                for law, x, y, size, a, b in self.monotonicity_violations
            ],
        }


def _divergent(sizes, values, cap) -> bool:
    if float(values[-1]) > cap:
        return True
    if len(values) < 3:
        return False
    inc = [(b - a) / (sb - sa) for (sa, a), (sb, b)
           in zip(zip(sizes, values), zip(sizes[1:], values[1:]))]
    # growth that does not slow down
    return inc[-1] > 0 and inc[-1] >= inc[-2]


def limit_graph_estimate(traces, tolerance=None, gap_epsilon: float = DEFAULT_GAP_EPSILON,
                         divergence_cap: float = DEFAULT_DIVERGENCE_CAP,
                         holds_tolerance: float = DEFAULT_TOLERANCE) -> LimitGraphReport:
    """Estimate limit weights, limit strengths and the per-vertex tightness verdict.

    ``traces`` are recovered graphs on nested vertex sets, smallest first.
    A vertex verdict is ``holds`` when the strength limit and the sum of
    edge limits agree within ``holds_tolerance``, ``fails_within`` when they
    differ by more than ``gap_epsilon``, ``divergence_suspected`` when the
    strength exceeds ``divergence_cap`` or grows without slowing down, and
    ``undetermined`` when the trajectory is too short or the gap falls
    between the two thresholds.
    """
    if len(traces) < 3:
        raise InsufficientData(f"need at least 3 exhaustion steps, got {len(traces)}")
    for a, b in zip(traces, traces[1:]):
        if b.labels[: a.n] != a.labels or b.n <= a.n:
            raise NestingViolation("traces are not on strictly nested vertex sets")
    exact = all(t.backend == RATIONAL for t in traces)
    if tolerance is None:
        tolerance = FLOAT_STALL_TOLERANCE
    sizes = [t.n for t in traces]
    labels = traces[-1].labels

    edge_traj, strength_traj = {}, {}
    for i, x in enumerate(labels):
        strength_traj[x] = [(t.n, t.strengths[i]) for t in traces if t.n > i]
        for j in range(i + 1, len(labels)):
            edge_traj[(x, labels[j])] = [(t.n, t.c[i, j]) for t in traces if t.n > j]

    slack = 0 if exact else tolerance
    violations = []
    for (x, y), traj in edge_traj.items():
        for (_, a), (s, b) in zip(traj, traj[1:]):
            if b > a + slack * max(1, abs(a)):
                violations.append(("edge", x, y, s, a, b))
    for x, traj in strength_traj.items():
        for (_, a), (s, b) in zip(traj, traj[1:]):
            if b < a - slack * max(1, abs(a)):
                violations.append(("strength", x, None, s, a, b))

    def estimate(traj, increasing):
        ss = [s for s, _ in traj]
        vs = [v for _, v in traj]
        return estimate_limit(ss, vs, increasing, exact, tolerance)

    edge_limits = {k: estimate(t, False) for k, t in edge_traj.items()}
    strength_limits = {x: estimate(t, True) for x, t in strength_traj.items()}

    zero = Fraction(0) if exact else 0.0
    edge_sums = {x: zero for x in labels}
    for (x, y), est in edge_limits.items():
        if est.status == NEW:
            continue
        edge_sums[x] += est.value
        edge_sums[y] += est.value

    verdicts = {}
    for x in labels:
        traj = strength_traj[x]
        est = strength_limits[x]
        ss = [s for s, _ in traj]
        vs = [v for _, v in traj]
        total = edge_sums[x]
        if est.status not in RESOLVED:
            verdicts[x] = ConditionC(UNDETERMINED, est.value, total, None, gap_epsilon,
                                     "trajectory too short")
            continue
        if est.status != STALLED and _divergent(ss, vs, divergence_cap):
            verdicts[x] = ConditionC(DIVERGENCE_SUSPECTED, est.value, total, None, gap_epsilon,
                                     "strength grows without slowing down")
            continue
        gap = abs(est.value - total)
        if gap <= holds_tolerance:
            kind = HOLDS
        elif gap > gap_epsilon:
            kind = FAILS_WITHIN
        else:
            kind = UNDETERMINED
        verdicts[x] = ConditionC(kind, est.value, total, gap, gap_epsilon)

    return LimitGraphReport(sizes, labels, exact, edge_traj, strength_traj, edge_limits,
                            strength_limits, edge_sums, verdicts, violations)


# --- two-ray identity --------------------------------------------------------


@dataclass
class IdentityReport:
    n: int
    pairs: int
    failures: list
    max_discrepancy: Fraction

    @property
    def ok(self) -> bool:
        return not self.failures


def two_ray_resistance_identity_check(n: int) -> IdentityReport:
    """Compare ``R2`` with ``R1 (4 - R1) / 4`` on every pair of ``-n..n``.

    ``R1`` is the effective resistance of the weighted path and ``R2`` that
    of the same path with the bridge between its endpoints; both are solved
    exactly.
    """
    r1 = effective_resistance(two_ray_graph(n))
    r2 = effective_resistance(two_ray_graph(n, bridge=True))
    failures = []
    worst = Fraction(0)
    pairs = 0
    for i, x in enumerate(r1.labels):
        for y in r1.labels[i + 1:]:
            a = r1.distance(x, y)
            b = r2.distance(x, y)
            want = a * (4 - a) / 4
            pairs += 1
            worst = max(worst, abs(b - want))
            if b != want:
                failures.append((x, y, b, want))
    return IdentityReport(n, pairs, failures, worst)
