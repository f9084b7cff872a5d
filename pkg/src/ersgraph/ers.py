"""Effective resistance of a graph, and recovery of the graph from a metric.

``recover_graph`` decides whether a finite metric is the effective resistance
of some weighted graph.  It evaluates the triangle-defect determinant at one
anchor vertex and, when positive, solves the defect system of every vertex
for the corresponding column of conductances.  The metric is realizable
exactly when all recovered conductances are non-negative, and the graph is
then unique.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import Disconnected, ErsError, SameVertex, SingularMatrix, TooSmall
from .graph import WeightedGraph, energy, is_connected, kirchhoff_matrix
from .metric import MetricSpace, defect_system
from .numeric import (
    DEFAULT_TOLERANCE,
    RATIONAL,
    LabeledMatrix,
    Sign,
    determinant_sign,
    format_scalar,
    identity,
    sign_of,
    solve_linear_system,
    zeros,
)

IS_ERS = "is_ers"
NOT_ERS = "not_ers"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Potential:
    """Voltage ``phi`` of a unit current from ``source`` to ``sink`` (``phi[sink] = 0``)."""

    source: object
    sink: object
    values: dict

    def __getitem__(self, z):
        return self.values[z]


class ResistanceMatrix(MetricSpace):
    """Effective resistances of a connected graph; always a valid metric."""


def _grounded_kirchhoff(g: WeightedGraph, y: int):
    keep = [i for i in range(g.n) if i != y]
    K = kirchhoff_matrix(g).values
    return keep, K[np.ix_(keep, keep)]


def _require_connected(g: WeightedGraph, tolerance):
    if not is_connected(g, tolerance):
        raise Disconnected("effective resistance needs a connected graph")


def potential(g: WeightedGraph, x, y, tolerance: float = DEFAULT_TOLERANCE) -> Potential:
    """Solve the Dirichlet problem for a unit current from ``x`` to ``y``.

    With ``phi(y) = 0`` the problem reduces to the grounded Kirchhoff system
    ``K|_{V - y} phi = 1_x``.
    """
    i, k = g.index(x), g.index(y)
    if i == k:
        raise SameVertex(f"source and sink are both {x!r}")
    _require_connected(g, tolerance)
    keep, Kg = _grounded_kirchhoff(g, k)
    rhs = zeros(len(keep), g.backend)
    rhs[keep.index(i)] += 1
    sol = solve_linear_system(Kg, rhs, tolerance)
    values = {g.labels[k]: 0 * rhs[0]}
    for pos, idx in enumerate(keep):
        values[g.labels[idx]] = sol[pos]
    return Potential(x, y, {v: values[v] for v in g.labels})


def effective_resistance(g: WeightedGraph, tolerance: float = DEFAULT_TOLERANCE) -> ResistanceMatrix:
    """All-pairs effective resistance.

    One grounded solve gives the Green function ``G`` (vertex 0 grounded);
    then ``R(x, y) = G(x, x) + G(y, y) - 2 G(x, y)``, which equals the
    potential ``phi^{xy}(x)``.
    """
    if g.n < 2:
        raise TooSmall("effective resistance needs at least 2 vertices")
    _require_connected(g, tolerance)
    keep, Kg = _grounded_kirchhoff(g, 0)
    inv = solve_linear_system(Kg, identity(len(keep), g.backend), tolerance)
    G = zeros((g.n, g.n), g.backend)
    G[np.ix_(keep, keep)] = inv
    diag = np.array([G[i, i] for i in range(g.n)], dtype=G.dtype)
    R = diag[:, None] + diag[None, :] - 2 * G
    if g.backend != RATIONAL:
        R = 0.5 * (R + R.T)
        np.fill_diagonal(R, 0.0)
    return ResistanceMatrix(g.labels, R)


# --- recovery ---------------------------------------------------------------


@dataclass(frozen=True)
class SingularDefect:
    anchor: object
    determinant: Fraction | float

    def to_dict(self):
        return {"kind": "singular_defect", "anchor": self.anchor,
                "determinant": format_scalar(self.determinant)}


@dataclass(frozen=True)
class NegativeWeightWitness:
    x: object
    y: object
    value: Fraction | float

    def to_dict(self):
        return {"kind": "negative_weight", "x": self.x, "y": self.y,
                "value": format_scalar(self.value)}


@dataclass
class ErsVerdict:
    outcome: str
    graph: WeightedGraph | None = None
    reason: SingularDefect | NegativeWeightWitness | None = None
    candidate: LabeledMatrix | None = None
    negative_entries: list = field(default_factory=list)
    determinants: dict = field(default_factory=dict)
    residuals: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def is_ers(self) -> bool:
        return self.outcome == IS_ERS

    def to_dict(self) -> dict:
        out = {
            "outcome": self.outcome,
            "graph": None,
            "reason": self.reason.to_dict() if self.reason else None,
            "determinants": {str(k): format_scalar(v) for k, v in self.determinants.items()},
        }
        if self.graph is not None:
            out["graph"] = graph_to_dict(self.graph)
        if self.candidate is not None:
            labels = self.candidate.labels
            vals = self.candidate.values
            out["candidate"] = [
                {"u": labels[i], "v": labels[j], "w": format_scalar(vals[i, j])}
                for i in range(len(labels)) for j in range(i + 1, len(labels))
            ]
        if self.negative_entries:
            out["negative_entries"] = [w.to_dict() for w in self.negative_entries]
        if self.residuals:
            out["residuals"] = {str(k): float(v) for k, v in self.residuals.items()}
        if self.detail:
            out["detail"] = self.detail
        return out


def graph_to_dict(g: WeightedGraph) -> dict:
    return {
        "labels": list(g.labels),
        "edges": [{"u": u, "v": v, "w": format_scalar(w)} for u, v, w in g.edges()],
    }


def recover_graph(m: MetricSpace, tolerance: float = DEFAULT_TOLERANCE, anchor=None,
                  snap_zero: bool = False) -> ErsVerdict:
    """Decide whether ``m`` is an effective resistance space and recover its graph.

    The determinant test runs at one anchor (the first label unless given);
    the defect determinant does not depend on the anchor.  In float mode any
    numerically undecidable step returns an ``indeterminate`` verdict, and
    that includes a recovered weight within ``tolerance`` of zero unless
    ``snap_zero`` is set, in which case such weights are read as absent edges.
    """
    if m.n < 2:
        raise TooSmall("recovery needs at least 2 points")
    exact = m.backend == RATIONAL
    y0 = m.labels[0] if anchor is None else anchor
    system = defect_system(m, y0)
    verdict = determinant_sign(system.A.values, tolerance)
    determinants = {y0: verdict.magnitude}
    if verdict.sign is Sign.INDETERMINATE:
        return ErsVerdict(INDETERMINATE, determinants=determinants,
                          detail=f"defect determinant at {y0!r} is within the tolerance band")
    if verdict.sign is not Sign.POSITIVE:
        return ErsVerdict(NOT_ERS, reason=SingularDefect(y0, verdict.magnitude),
                          determinants=determinants)

    n = m.n
    C = zeros((n, n), m.backend)
    residuals = {}
    for k, y in enumerate(m.labels):
        sys_y = system if y == y0 else defect_system(m, y)
        try:
            col, res = solve_linear_system(sys_y.A.values, sys_y.b, tolerance,
                                           return_residual=True)
        except SingularMatrix:
            if exact:
                raise ErsError(f"defect system at {y!r} singular although det at {y0!r} > 0")
            return ErsVerdict(INDETERMINATE, determinants=determinants,
                              detail=f"defect system at {y!r} numerically singular")
        C[:, k] = col
        if not exact:
            residuals[y] = res

    if exact:
        if not np.all(C == C.T):
            raise ErsError("recovered conductances are not symmetric")
    else:
        scale = max(float(np.max(np.abs(C))), 1.0)
        asym = float(np.max(np.abs(C - C.T)))
        if asym > tolerance * scale:
            return ErsVerdict(INDETERMINATE, determinants=determinants, residuals=residuals,
                              detail=f"recovered conductances asymmetric by {asym:.3g}")
        C = 0.5 * (C + C.T)
        np.fill_diagonal(C, 0.0)

    negatives = []
    unclear = []
    for i in range(n):
        for j in range(i + 1, n):
            s = sign_of(C[i, j], tolerance).sign
            if s is Sign.NEGATIVE:
                negatives.append(NegativeWeightWitness(m.labels[i], m.labels[j], C[i, j]))
            elif s is Sign.INDETERMINATE:
                unclear.append((m.labels[i], m.labels[j]))
                if snap_zero:
                    C[i, j] = C[j, i] = 0.0
    candidate = LabeledMatrix(m.labels, C)
    if unclear and not snap_zero:
        return ErsVerdict(INDETERMINATE, candidate=candidate, determinants=determinants,
                          residuals=residuals,
                          detail=f"weight of {unclear[0]} is within the tolerance band of zero")
    if negatives:
        return ErsVerdict(NOT_ERS, reason=negatives[0], candidate=candidate,
                          negative_entries=negatives, determinants=determinants,
                          residuals=residuals)
    graph = WeightedGraph(m.labels, C)
    if not is_connected(graph, tolerance):
        raise ErsError("recovered graph is disconnected although the determinant is positive")
    return ErsVerdict(IS_ERS, graph=graph, candidate=candidate, determinants=determinants,
                      residuals=residuals)


# --- consistency reports ----------------------------------------------------


@dataclass
class RoundTripReport:
    exact: bool
    max_discrepancy: Fraction | float
    verdict: ErsVerdict


def check_round_trip(g: WeightedGraph, tolerance: float = DEFAULT_TOLERANCE) -> RoundTripReport:
    """Recover ``g`` from its own effective resistance and compare entrywise."""
    verdict = recover_graph(effective_resistance(g, tolerance), tolerance, snap_zero=True)
    if not verdict.is_ers:
        return RoundTripReport(False, None, verdict)
    diff = np.abs(verdict.graph.c - g.c)
    worst = diff.max()
    if g.backend == RATIONAL:
        return RoundTripReport(bool(worst == 0), worst, verdict)
    return RoundTripReport(bool(worst <= tolerance * max(1.0, float(np.abs(g.c).max()))),
                           float(worst), verdict)


@dataclass
class VariationalReport:
    resistance: Fraction | float
    energy: Fraction | float
    energy_matches: bool
    boundary_ok: bool
    max_derivative: Fraction | float
    stationary: bool
    minimizes: bool

    @property
    def passed(self) -> bool:
        return self.energy_matches and self.boundary_ok and self.stationary and self.minimizes


def variational_check(g: WeightedGraph, x, y, epsilon=None,
                      tolerance: float = DEFAULT_TOLERANCE) -> VariationalReport:
    """Check that the potential carries energy ``R(x, y)`` and minimizes it.

    The normalized potential ``u = phi / R`` must satisfy ``u(x) = 1``,
    ``u(y) = 0`` and be stationary for the energy under perturbation at each
    free vertex; the derivative is a central finite difference.
    """
    exact = g.backend == RATIONAL
    if epsilon is None:
        epsilon = Fraction(1, 1000) if exact else 1e-4
    phi = potential(g, x, y, tolerance)
    R = phi[x]
    E = energy(g, phi.values)
    u = {v: phi[v] / R for v in g.labels}
    base = energy(g, u)
    boundary_ok = u[x] == 1 and u[y] == 0
    worst = 0 * R
    minimizes = True
    for z in g.labels:
        if z in (x, y):
            continue
        up = dict(u)
        up[z] = u[z] + epsilon
        dn = dict(u)
        dn[z] = u[z] - epsilon
        e_up, e_dn = energy(g, up), energy(g, dn)
        deriv = abs((e_up - e_dn) / (2 * epsilon))
        worst = max(worst, deriv)
        slack = 0 if exact else tolerance * max(1.0, abs(float(base)))
        if e_up < base - slack or e_dn < base - slack:
            minimizes = False
    if exact:
        matches = E == R and base * R == 1
        stationary = worst == 0
    else:
        matches = abs(E - R) <= tolerance * max(1.0, abs(R))
        stationary = worst <= max(tolerance, 1e-6) * max(1.0, float(np.abs(g.c).max()))
    return VariationalReport(R, E, bool(matches), bool(boundary_ok), worst,
                             bool(stationary), minimizes)
