"""Finite metric spaces, axiom validation and triangle-defect systems."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    BadParameter,
    DimensionMismatch,
    MetricValidationError,
    TooSmall,
    UnknownFamily,
    UnknownVertex,
)
from .numeric import (
    DEFAULT_TOLERANCE,
    RATIONAL,
    LabeledMatrix,
    as_array,
    backend_of,
)


@dataclass(frozen=True, eq=False)
class MetricSpace:
    """Labeled distance matrix.  Build through :func:`validate_metric`."""

    labels: tuple
    d: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        if self.d.shape != (len(labels), len(labels)):
            raise DimensionMismatch(
                f"{len(labels)} labels for a matrix of shape {self.d.shape}"
            )

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def backend(self) -> str:
        return backend_of(self.d)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownVertex(label) from None

    def distance(self, x, y):
        return self.d[self.index(x), self.index(y)]

    def restrict(self, labels) -> "MetricSpace":
        idx = [self.index(v) for v in labels]
        return type(self)(tuple(labels), self.d[np.ix_(idx, idx)].copy())

    def equals(self, other: "MetricSpace") -> bool:
        return self.labels == other.labels and bool(np.all(self.d == other.d))


@dataclass(frozen=True)
class Violation:
    kind: str  # NotSymmetric | NonzeroDiagonal | NonPositiveOffDiagonal | TriangleViolation
    witness: tuple

    def __str__(self):
        return f"{self.kind}{self.witness}"


def validate_metric(labels, matrix, backend: str | None = None,
                    tolerance: float = DEFAULT_TOLERANCE) -> MetricSpace:
    """Check (M1)-(M3) and return a :class:`MetricSpace`.

    ``matrix`` is either a backend array or nested sequences of scalar
    literals (parsed with ``backend``, rational by default).  All violations
    are collected and raised together as :class:`MetricValidationError`.
    TriangleViolation(x, y, z) means ``d(x, z) > d(x, y) + d(y, z)``.
    """
    labels = tuple(labels)
    if len(labels) < 2:
        raise TooSmall(f"a metric space needs at least 2 points, got {len(labels)}")
    if isinstance(matrix, np.ndarray) and backend is None:
        d = matrix
        backend = backend_of(d)
    else:
        d = as_array(matrix, backend or RATIONAL)
        backend = backend_of(d)
    n = len(labels)
    if d.shape != (n, n):
        raise DimensionMismatch(f"{n} labels for a matrix of shape {d.shape}")
    exact = backend == RATIONAL
    tol = 0 if exact else tolerance

    violations = []
    for i in range(n):
        if abs(d[i, i]) > tol:
            violations.append(Violation("NonzeroDiagonal", (labels[i],)))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(d[i, j] - d[j, i]) > tol:
                violations.append(Violation("NotSymmetric", (labels[i], labels[j])))
            if d[i, j] <= 0 or d[j, i] <= 0:
                violations.append(
                    Violation("NonPositiveOffDiagonal", (labels[i], labels[j]))
                )
    for x in range(n):
        for z in range(x + 1, n):
            for y in range(n):
                if y == x or y == z:
                    continue
                if d[x, z] > d[x, y] + d[y, z] + tol:
                    violations.append(
                        Violation("TriangleViolation", (labels[x], labels[y], labels[z]))
                    )
    if violations:
        raise MetricValidationError(violations)
    return MetricSpace(labels, d)


@dataclass(frozen=True, eq=False)
class DefectSystem:
    """Triangle-defect matrices of one anchor vertex ``y``.

    ``M[x, z] = (d(x, y) + d(y, z) - d(x, z)) / 2``; ``A`` equals ``M`` except
    ``A[y, y] = 1``; ``b[x] = 1 - [x == y]``.  ``M_prime`` drops row and
    column ``y``.
    """

    anchor: object
    M: LabeledMatrix
    M_prime: LabeledMatrix
    A: LabeledMatrix
    b: np.ndarray


def defect_matrix(d: np.ndarray, y: int) -> np.ndarray:
    half = Fraction(1, 2) if d.dtype == object else 0.5
    return (d[:, y][:, None] + d[y, :][None, :] - d) * half


def defect_system(m: MetricSpace, y) -> DefectSystem:
    k = m.index(y)
    M = defect_matrix(m.d, k)
    one = Fraction(1) if m.backend == RATIONAL else 1.0
    A = M.copy()
    A[k, k] = one
    b = np.array([0 * one if i == k else one for i in range(m.n)],
                 dtype=object if m.backend == RATIONAL else np.float64)
    keep = [i for i in range(m.n) if i != k]
    rest = tuple(m.labels[i] for i in keep)
    return DefectSystem(
        anchor=y,
        M=LabeledMatrix(m.labels, M),
        M_prime=LabeledMatrix(rest, M[np.ix_(keep, keep)].copy()),
        A=LabeledMatrix(m.labels, A),
        b=b,
    )


def builtin_metric(family: str, n: int | None = None, *, graph=None,
                   backend: str = RATIONAL) -> MetricSpace:
    """``discrete(n)``, ``star(n)`` (vertex ``"1"`` is the centre) or ``geodesic`` of a graph."""
    if family == "geodesic":
        if graph is None:
            raise BadParameter("geodesic metric needs a graph")
        from .graph import geodesic_metric

        return geodesic_metric(graph)
    if family not in ("discrete", "star"):
        raise UnknownFamily(family)
    if n is None or int(n) != n or n < 2:
        raise BadParameter(f"{family} metric needs an integer n >= 2, got {n!r}")
    labels = tuple(str(i) for i in range(1, n + 1))
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(0)
            elif family == "discrete" or i == 1 or j == 1:
                row.append(1)
            else:
                row.append(2)
        rows.append(row)
    return MetricSpace(labels, as_array(rows, backend))
