"""Random walks on weighted graphs: exact hitting quantities and Monte Carlo.

The walk moves from ``y`` to ``z`` with probability ``c(y, z) / c_y``.  For a
start ``x`` and target ``y``, ``Phi`` counts the visits to ``x`` before the
walk first reaches ``y`` (time 0 included).  It is geometric with
``P[Phi = k] = (1 - p) p^(k - 1)`` where ``p = P_x[tau_x^+ < tau_y]``, and
``E[Phi] / c_x`` is the effective resistance between ``x`` and ``y``.

Vertices listed as ``absorbing`` kill the walk on arrival.  On a truncation
of an infinite transient graph, killing at the cut models escape to infinity;
without it the truncation reflects and the walk always comes back.

Monte Carlo runs draw every walk from its own Philox stream keyed by the
master seed with the walk index in the counter, so the result does not
depend on how walks are split across worker processes.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.stats

from .errors import (
    ConditionCFails,
    Disconnected,
    IsolatedVertex,
    PEqualsOne,
    RecurrenceNotAsserted,
    SameVertex,
    UnknownVertex,
)
from .ers import effective_resistance, potential
from .graph import WeightedGraph, is_connected
from .numeric import DEFAULT_TOLERANCE, RATIONAL, solve_linear_system, zeros

HIT_TARGET = "HitTarget"
STEP_CAP = "StepCap"
ABSORBED = "Absorbed"

DEFAULT_STEP_CAP = 10**6
_BATCH = 64


# --- exact solves -----------------------------------------------------------


def _check_pair(g: WeightedGraph, x, y, tolerance):
    if x not in g.labels:
        raise UnknownVertex(x)
    if y not in g.labels:
        raise UnknownVertex(y)
    if x == y:
        raise SameVertex(f"start and target are both {x!r}")
    if not is_connected(g, tolerance):
        raise Disconnected("walk quantities need a connected graph")


def _absorbing_set(g: WeightedGraph, absorbing) -> set:
    out = set(absorbing or ())
    for v in out:
        if v not in g.labels:
            raise UnknownVertex(v)
    return out


def _harmonic_extension(g: WeightedGraph, boundary: dict, tolerance):
    """Values harmonic off ``boundary`` with the given boundary values."""
    free = [i for i, v in enumerate(g.labels) if v not in boundary]
    n = len(free)
    values = {v: val for v, val in boundary.items()}
    if not n:
        return values
    s = g.strengths
    A = zeros((n, n), g.backend)
    b = zeros(n, g.backend)
    pos = {i: k for k, i in enumerate(free)}
    for k, i in enumerate(free):
        A[k, k] = s[i]
        for j in range(g.n):
            w = g.c[i, j]
            if not w:
                continue
            if j in pos:
                A[k, pos[j]] -= w
            else:
                b[k] += w * boundary[g.labels[j]]
    sol = solve_linear_system(A, b, tolerance)
    for k, i in enumerate(free):
        values[g.labels[i]] = sol[k]
    return values


def _one(g):
    return Fraction(1) if g.backend == RATIONAL else 1.0


@dataclass(frozen=True)
class HittingReport:
    """First-passage probabilities for a walk from ``x`` aimed at ``y``.

    ``return_first`` is ``p = P_x[tau_x^+ < tau_y]``, ``hit_first`` is
    ``P_x[tau_y < tau_x^+]`` and ``escape`` the chance of being absorbed
    before either; ``hit_or_escape = 1 - p`` is ``P_x[tau_y <= tau_x^+]``.
    """

    x: object
    y: object
    absorbing: tuple
    return_first: Fraction | float
    hit_first: Fraction | float
    escape: Fraction | float

    @property
    def hit_or_escape(self):
        return 1 - self.return_first


def first_passage_probabilities(g: WeightedGraph, x, y, absorbing=(),
                                tolerance: float = DEFAULT_TOLERANCE) -> HittingReport:
    _check_pair(g, x, y, tolerance)
    dead = _absorbing_set(g, absorbing)
    if x in dead or y in dead:
        raise ValueError("start and target cannot be absorbing")
    one = _one(g)
    zero = 0 * one
    # h(z) = P_z[tau_x < tau_y], killed walks never reach x
    bnd = {x: one, y: zero, **{a: zero for a in dead}}
    h = _harmonic_extension(g, bnd, tolerance)
    # k(z) = P_z[tau_y < tau_x]
    bnd = {x: zero, y: one, **{a: zero for a in dead}}
    k = _harmonic_extension(g, bnd, tolerance)
    i = g.index(x)
    cx = g.strengths[i]
    p = sum((g.c[i, j] / cx * h[g.labels[j]] for j in range(g.n) if g.c[i, j]), zero)
    q = sum((g.c[i, j] / cx * k[g.labels[j]] for j in range(g.n) if g.c[i, j]), zero)
    return HittingReport(x, y, tuple(sorted(dead, key=g.index)), p, q, one - p - q)


def exact_return_vs_hit(g: WeightedGraph, x, y, absorbing=(),
                        tolerance: float = DEFAULT_TOLERANCE):
    """``p = P_x[tau_x^+ < tau_y]`` from the harmonic solve off ``{x, y}``."""
    return first_passage_probabilities(g, x, y, absorbing, tolerance).return_first


def exact_expected_visits(g: WeightedGraph, x, y, absorbing=(),
                          tolerance: float = DEFAULT_TOLERANCE):
    """``E_x[Phi] = 1 / (1 - p)``."""
    if x == y:
        return 0 * _one(g)
    p = exact_return_vs_hit(g, x, y, absorbing, tolerance)
    gap = 1 - p
    if gap == 0 or (g.backend != RATIONAL and abs(gap) <= tolerance):
        raise PEqualsOne(f"walk from {x!r} never reaches {y!r}")
    return 1 / gap


def expected_visits_vector(g: WeightedGraph, x, y, absorbing=(),
                           tolerance: float = DEFAULT_TOLERANCE) -> dict:
    """Expected visits to every vertex before ``tau_y``, starting from ``x``.

    This is row ``x`` of the fundamental matrix ``(I - Q)^-1`` of the chain
    absorbed at ``y`` (and at ``absorbing``).  It is independent of the
    ``1 / (1 - p)`` route.
    """
    _check_pair(g, x, y, tolerance)
    dead = _absorbing_set(g, absorbing) | {y}
    live = [i for i, v in enumerate(g.labels) if v not in dead]
    s = g.strengths
    n = len(live)
    # (I - Q)^T v = e_x gives v = e_x^T (I - Q)^-1
    A = zeros((n, n), g.backend)
    for a, i in enumerate(live):
        for b, j in enumerate(live):
            A[a, b] = (1 if a == b else 0) - g.c[j, i] / s[j]
    e = zeros(n, g.backend)
    e[live.index(g.index(x))] = _one(g)
    v = solve_linear_system(A, e, tolerance)
    out = {lab: 0 * _one(g) for lab in g.labels}
    for a, i in enumerate(live):
        out[g.labels[i]] = v[a]
    return out


@dataclass
class RepresentationReport:
    """Two routes to ``R(x, y)`` and the per-vertex potential identity."""

    resistance: Fraction | float
    via_return_probability: Fraction | float
    visits_over_strength: dict
    potential: dict
    exact: bool

    @property
    def resistance_ok(self) -> bool:
        return _close(self.resistance, self.via_return_probability, self.exact)

    @property
    def potential_ok(self) -> bool:
        return all(_close(self.visits_over_strength[z], self.potential[z], self.exact)
                   for z in self.potential)


def _close(a, b, exact, tol=1e-9):
    if exact:
        return a == b
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def probabilistic_representation(g: WeightedGraph, x, y,
                                 tolerance: float = DEFAULT_TOLERANCE) -> RepresentationReport:
    """Compare ``R(x, y)`` with ``E_x[Phi] / c_x`` and ``E_x[visits to z] / c_z``
    with the potential ``phi^{xy}(z)`` at every vertex."""
    R = effective_resistance(g, tolerance).distance(x, y)
    cx = g.strength(x)
    via_p = exact_expected_visits(g, x, y, tolerance=tolerance) / cx
    visits = expected_visits_vector(g, x, y, tolerance=tolerance)
    s = g.strengths
    scaled = {z: visits[z] / s[g.index(z)] for z in g.labels}
    phi = potential(g, x, y, tolerance).values
    return RepresentationReport(R, via_p, scaled, phi, g.backend == RATIONAL)


# --- simulation ---------------------------------------------------------------


@dataclass(frozen=True)
class WalkTrace:
    start: object
    steps: tuple
    stop_cause: str

    def phi(self, x=None) -> int:
        """Visits to ``x`` (default: the start) before the final step."""
        x = self.start if x is None else x
        return sum(1 for v in self.steps[:-1] if v == x) if self.stop_cause == HIT_TARGET \
            else sum(1 for v in self.steps if v == x)


def walk_rng(seed: int, walk_index: int) -> np.random.Generator:
    """Independent stream for walk ``walk_index`` under master ``seed``."""
    return np.random.Generator(np.random.Philox(key=int(seed) % 2**64,
                                                counter=[0, 0, int(walk_index), 0]))


@dataclass(frozen=True)
class _Chain:
    """Picklable transition table: neighbour indices and cumulative probabilities."""

    labels: tuple
    neighbors: tuple
    cumulative: tuple


def _chain(g: WeightedGraph) -> _Chain:
    s = g.strengths
    nbrs, cums = [], []
    for i in range(g.n):
        if not s[i] > 0:
            raise IsolatedVertex(g.labels[i])
        js = [j for j in range(g.n) if g.c[i, j] > 0]
        probs = np.array([float(g.c[i, j] / s[i]) for j in js])
        cum = np.cumsum(probs)
        cum[-1] = 1.0
        nbrs.append(tuple(js))
        cums.append(tuple(cum.tolist()))
    return _Chain(g.labels, tuple(nbrs), tuple(cums))


def _run(chain: _Chain, start: int, target: int, dead: frozenset, cap: int, rng,
         record: bool):
    path = [start] if record else None
    visits = 1 if start != target else 0
    cur = start
    first = None
    u = rng.random(_BATCH)
    k = 0
    for step in range(cap):
        if k == _BATCH:
            u = rng.random(_BATCH)
            k = 0
        nbrs = chain.neighbors[cur]
        cur = nbrs[bisect_right(chain.cumulative[cur], u[k])]
        k += 1
        if first is None:
            first = cur
        if record:
            path.append(cur)
        if cur == target:
            return HIT_TARGET, visits, first, path
        if cur in dead:
            return ABSORBED, visits, first, path
        if cur == start:
            visits += 1
    return STEP_CAP, visits, first, path


def simulate_walk(g: WeightedGraph, x, target=None, cap: int = DEFAULT_STEP_CAP,
                  seed: int = 0, absorbing=(), walk_index: int = 0) -> WalkTrace:
    """One walk from ``x`` until it hits ``target``, is absorbed, or takes ``cap`` steps."""
    if cap < 1:
        raise ValueError("step cap must be at least 1")
    chain = _chain(g)
    dead = frozenset(g.index(v) for v in _absorbing_set(g, absorbing))
    tgt = -1 if target is None else g.index(target)
    start = g.index(x)
    if start == tgt:
        return WalkTrace(x, (x,), HIT_TARGET)
    cause, _, _, path = _run(chain, start, tgt, dead, cap, walk_rng(seed, walk_index), True)
    return WalkTrace(x, tuple(g.labels[i] for i in path), cause)


def _phi_chunk(args):
    chain, start, target, dead, cap, seed, lo, hi = args
    phis = np.empty(hi - lo, dtype=np.int64)
    causes = np.empty(hi - lo, dtype=np.int8)
    firsts = np.empty(hi - lo, dtype=np.int64)
    code = {HIT_TARGET: 0, STEP_CAP: 1, ABSORBED: 2}
    for w in range(lo, hi):
        cause, visits, first, _ = _run(chain, start, target, dead, cap, walk_rng(seed, w), False)
        phis[w - lo] = visits
        causes[w - lo] = code[cause]
        firsts[w - lo] = first
    return phis, causes, firsts


@dataclass
class PhiSample:
    """Per-walk ``Phi`` values, stop causes and first steps, in walk-index order."""

    phi: np.ndarray
    cause: np.ndarray
    first_step: np.ndarray
    seed: int

    @property
    def hit(self) -> np.ndarray:
        return self.cause == 0

    @property
    def capped(self) -> int:
        return int(np.sum(self.cause == 1))

    @property
    def absorbed(self) -> int:
        return int(np.sum(self.cause == 2))


def sample_phi(g: WeightedGraph, x, y, walks: int, cap: int = DEFAULT_STEP_CAP,
               seed: int = 0, workers: int = 1, absorbing=(),
               tolerance: float = DEFAULT_TOLERANCE) -> PhiSample:
    """Simulate ``walks`` walks from ``x`` to ``y`` and record ``Phi`` for each."""
    if walks < 1:
        raise ValueError("need at least one walk")
    if cap < 1:
        raise ValueError("step cap must be at least 1")
    _check_pair(g, x, y, tolerance)
    chain = _chain(g)
    dead = frozenset(g.index(v) for v in _absorbing_set(g, absorbing))
    start, target = g.index(x), g.index(y)
    workers = max(1, int(workers))
    bounds = np.linspace(0, walks, min(workers, walks) + 1).astype(int)
    jobs = [(chain, start, target, dead, cap, seed, int(lo), int(hi))
            for lo, hi in zip(bounds, bounds[1:])]
    if len(jobs) == 1:
        parts = [_phi_chunk(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(_phi_chunk, jobs))
    phi = np.concatenate([p[0] for p in parts])
    cause = np.concatenate([p[1] for p in parts])
    first = np.concatenate([p[2] for p in parts])
    return PhiSample(phi, cause, first, seed)


@dataclass
class McEstimate:
    """Monte Carlo estimate of ``R(x, y) = E_x[Phi] / c_x``.

    Walks stopped by the step cap are excluded and counted in ``capped``;
    ``bias_warning`` is set whenever that happens.  Absorbed walks keep the
    visits they made before being killed.
    """

    estimate: float
    stderr: float
    samples: int
    seed: int
    capped: int = 0
    absorbed: int = 0
    walks: int = 0
    mean_phi: float = 0.0
    workers: int = 1

    @property
    def bias_warning(self) -> bool:
        return self.capped > 0

    def to_dict(self) -> dict:
        return {"estimate": self.estimate, "stderr": self.stderr, "samples": self.samples,
                "seed": self.seed, "walks": self.walks, "capped": self.capped,
                "absorbed": self.absorbed, "bias_warning": self.bias_warning,
                "mean_phi": self.mean_phi, "workers": self.workers}


def _estimate(sample: PhiSample, cx: float, walks: int, workers: int) -> McEstimate:
    kept = sample.phi[sample.cause != 1]
    n = int(kept.size)
    if n == 0:
        return McEstimate(math.nan, math.nan, 0, sample.seed, sample.capped,
                          sample.absorbed, walks, math.nan, workers)
    # integer sums keep the reduction exact and order independent
    total = int(kept.sum())
    squares = int((kept * kept).sum())
    mean = total / n
    var = (squares - total * total / n) / (n - 1) if n > 1 else 0.0
    var = max(var, 0.0)
    return McEstimate(mean / cx, math.sqrt(var / n) / cx, n, sample.seed, sample.capped,
                      sample.absorbed, walks, mean, workers)


def mc_resistance(g: WeightedGraph, x, y, walks: int = 10**5, cap: int = DEFAULT_STEP_CAP,
                  seed: int = 0, workers: int = 1, absorbing=(),
                  tolerance: float = DEFAULT_TOLERANCE) -> McEstimate:
    """Sample mean of ``Phi`` divided by ``c_x``, with its standard error."""
    if x == y:
        return McEstimate(0.0, 0.0, walks, seed, walks=walks, workers=workers)
    sample = sample_phi(g, x, y, walks, cap, seed, workers, absorbing, tolerance)
    return _estimate(sample, float(g.strength(x)), walks, workers)


# --- law of Phi ---------------------------------------------------------------


@dataclass
class PhiLawReport:
    p: Fraction | float
    samples: int
    histogram: dict
    expected: dict
    chi2: float
    dof: int
    pvalue: float
    alpha: float
    mean: float
    mean_expected: float
    mean_stderr: float
    variance: float
    variance_expected: float
    variance_stderr: float
    capped: int = 0

    @property
    def chi2_ok(self) -> bool:
        return self.pvalue >= self.alpha

    @property
    def mean_ok(self) -> bool:
        return abs(self.mean - self.mean_expected) <= 3 * self.mean_stderr + 1e-12

    @property
    def variance_ok(self) -> bool:
        return abs(self.variance - self.variance_expected) <= 3 * self.variance_stderr + 1e-12

    @property
    def passed(self) -> bool:
        return self.chi2_ok and self.mean_ok and self.variance_ok

    def to_dict(self) -> dict:
        return {"p": float(self.p), "samples": self.samples,
                "histogram": {str(k): v for k, v in self.histogram.items()},
                "expected": {str(k): v for k, v in self.expected.items()},
                "chi2": self.chi2, "dof": self.dof, "pvalue": self.pvalue, "alpha": self.alpha,
                "chi2_ok": self.chi2_ok, "mean": self.mean, "mean_expected": self.mean_expected,
                "mean_stderr": self.mean_stderr, "mean_ok": self.mean_ok,
                "variance": self.variance, "variance_expected": self.variance_expected,
                "variance_stderr": self.variance_stderr, "variance_ok": self.variance_ok,
                "capped": self.capped, "passed": self.passed}


def _geometric_bins(phi: np.ndarray, p: float, min_expected: float = 5.0):
    """Observed and expected counts over ``1, 2, ...`` with the tail pooled."""
    n = phi.size
    observed, expected = [], []
    k = 1
    mass_left = 1.0
    while True:
        e = n * (1 - p) * p ** (k - 1)
        tail = n * mass_left - e
        if e < min_expected or tail < min_expected:
            observed.append(int(np.sum(phi >= k)))
            expected.append(n * mass_left)
            break
        observed.append(int(np.sum(phi == k)))
        expected.append(e)
        mass_left -= (1 - p) * p ** (k - 1)
        k += 1
    return observed, expected


def phi_law_check(g: WeightedGraph, x, y, samples: int = 10**5, seed: int = 0,
                  alpha: float = 0.01, cap: int = DEFAULT_STEP_CAP, workers: int = 1,
                  tolerance: float = DEFAULT_TOLERANCE) -> PhiLawReport:
    """Test sampled ``Phi`` against the geometric law with the exact ``p``.

    Runs a chi-square goodness-of-fit test, compares the sample mean with
    ``1 / (1 - p)`` and the sample variance with ``p / (1 - p)^2``; the
    variance's standard error comes from the sample fourth moment.
    """
    p_exact = exact_return_vs_hit(g, x, y, tolerance=tolerance)
    p = float(p_exact)
    sample = sample_phi(g, x, y, samples, cap, seed, workers, tolerance=tolerance)
    phi = sample.phi[sample.hit]
    n = int(phi.size)
    values, counts = np.unique(phi, return_counts=True)
    histogram = {int(v): int(c) for v, c in zip(values, counts)}
    observed, expected = _geometric_bins(phi, p)
    if len(observed) == 1:
        chi2, dof = 0.0, 0
        pvalue = 1.0 if observed[0] == n else 0.0
    else:
        res = scipy.stats.chisquare(observed, expected)
        chi2, dof, pvalue = float(res.statistic), len(observed) - 1, float(res.pvalue)
    mean = float(phi.mean())
    var = float(phi.var(ddof=1)) if n > 1 else 0.0
    m4 = float(np.mean((phi - mean) ** 4))
    var_se = math.sqrt(max(m4 - var * var * (n - 3) / (n - 1), 0.0) / n) if n > 3 else math.inf
    mean_expected = 1 / (1 - p)
    return PhiLawReport(
        p_exact, n, histogram,
        {k + 1: e for k, e in enumerate(expected)},
        chi2, dof, pvalue, alpha,
        mean, mean_expected, math.sqrt(var / n) if n else math.inf,
        var, p / (1 - p) ** 2, var_se, sample.capped,
    )


# --- first steps and limit consistency ------------------------------------------


def first_step_frequencies(g: WeightedGraph, x, walks: int, seed: int = 0) -> dict:
    """Empirical distribution of the first move from ``x`` over ``walks`` walks."""
    counts = {v: 0 for v in g.neighbors(x)}
    chain = _chain(g)
    start = g.index(x)
    for w in range(walks):
        _, _, first, _ = _run(chain, start, -1, frozenset(), 1, walk_rng(seed, w), False)
        counts[g.labels[first]] += 1
    return {v: c / walks for v, c in counts.items()}


RECURRENCE_REFUSAL = (
    "the probabilistic representation on a limit graph needs a recurrent walk, "
    "which no finite truncation can certify; pass an explicit recurrence assertion. "
    "Counterexamples: on the graph with B and T attached to a ray of weights 2^k the "
    "walk escapes and P_B[tau_T <= tau_B^+] = 3/5 while R(B, T) = 2, and the two-ray "
    "line with and without the bridge has one limit graph but two different "
    "resistance metrics"
)


@dataclass
class LimitWalkReport:
    family: str
    sizes: list
    x: object
    y: object
    resistance: Fraction | float
    limit_graph_resistance: Fraction | float
    mc: McEstimate
    transition_limit: dict
    transition_empirical: dict
    transition_stderr: dict
    condition_c: dict = field(default_factory=dict)

    @property
    def mc_ok(self) -> bool:
        if self.mc.stderr == 0:
            return self.mc.estimate == float(self.resistance)
        return abs(self.mc.estimate - float(self.resistance)) <= 3 * self.mc.stderr

    @property
    def transitions_ok(self) -> bool:
        return all(abs(self.transition_empirical[z] - self.transition_limit[z])
                   <= 3 * self.transition_stderr[z] + 1e-12 for z in self.transition_limit)

    def to_dict(self) -> dict:
        from .numeric import format_scalar

        return {"family": self.family, "sizes": self.sizes, "x": self.x, "y": self.y,
                "resistance": format_scalar(self.resistance),
                "limit_graph_resistance": format_scalar(self.limit_graph_resistance),
                "mc": self.mc.to_dict(), "mc_ok": self.mc_ok,
                "transition_limit": self.transition_limit,
                "transition_empirical": self.transition_empirical,
                "transitions_ok": self.transitions_ok,
                "condition_c": {k: v.to_dict() for k, v in self.condition_c.items()}}


def limit_walk_consistency(family: str, sizes, x, y, samples: int = 10**4, seed: int = 0,
                           assert_recurrent: bool = False, cap: int = DEFAULT_STEP_CAP,
                           workers: int = 1, generator=None,
                           tolerance: float = DEFAULT_TOLERANCE) -> LimitWalkReport:
    """Check ``R(x, y) = E_x[Phi] / c_x`` on the finite-horizon limit graph.

    Also compares first-step frequencies of walks on the largest recovered
    graph with the limit graph's ``c(x, z) / c_x``.
    """
    from .families import family_metric
    from .limits import HOLDS, ExhaustionPlan, exhaustion_traces, limit_graph_estimate

    if not assert_recurrent:
        raise RecurrenceNotAsserted(RECURRENCE_REFUSAL)
    plan = ExhaustionPlan(family, sizes, generator)
    traces = exhaustion_traces(plan, tolerance)
    report = limit_graph_estimate(traces)
    metric = plan.generator(plan.sizes[-1])
    if x == y:
        zero = metric.distance(x, x)
        return LimitWalkReport(family, plan.sizes, x, y, zero, zero,
                               McEstimate(0.0, 0.0, samples, seed, walks=samples),
                               {}, {}, {})
    verdicts = {v: report.condition_c[v] for v in (x, y)}
    for v, verdict in verdicts.items():
        if verdict.kind != HOLDS:
            raise ConditionCFails(f"condition (C) at {v!r} is {verdict.kind}")
    limit = report.limit_graph()
    R = metric.distance(x, y)
    R_limit = effective_resistance(limit, tolerance).distance(x, y)
    mc = mc_resistance(limit, x, y, samples, cap, seed, workers, tolerance=tolerance)

    largest = traces[-1]
    cx = limit.strength(x)
    probs = {z: float(limit.weight(x, z) / cx) for z in limit.neighbors(x)}
    freq = first_step_frequencies(largest, x, samples, seed)
    for z in probs:
        freq.setdefault(z, 0.0)
    se = {z: math.sqrt(probs[z] * (1 - probs[z]) / samples) for z in probs}
    return LimitWalkReport(family, plan.sizes, x, y, R, R_limit, mc, probs, freq, se, verdicts)
