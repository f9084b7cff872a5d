"""Weighted graphs: Laplacian, Kirchhoff matrix, connectivity, energy, geodesics."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral

import numpy as np

from .errors import (
    BackendMismatch,
    Disconnected,
    DimensionMismatch,
    DuplicateEdge,
    IsolatedVertex,
    MissingValue,
    NegativeWeight,
    SelfLoop,
    UnknownVertex,
)
from .metric import MetricSpace
from .numeric import (
    DEFAULT_TOLERANCE,
    FLOAT,
    RATIONAL,
    LabeledMatrix,
    backend_of,
    determinant,
    parse_scalar,
    zeros,
)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Vertex labels plus a symmetric, non-negative, zero-diagonal weight matrix.

    Weights are conductances.  The matrix is dense; adjacency means a
    strictly positive entry.
    """

    labels: tuple
    c: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        n = len(labels)
        if self.c.shape != (n, n):
            raise DimensionMismatch(f"{n} labels for weights of shape {self.c.shape}")
        backend_of(self.c)
        for i in range(n):
            if self.c[i, i] != 0:
                raise SelfLoop(f"nonzero diagonal weight at {labels[i]!r}")
        if not np.all(self.c == self.c.T):
            raise ValueError("weight matrix is not symmetric")
        if np.any(self.c < 0):
            i, j = np.argwhere(self.c < 0)[0]
            raise NegativeWeight(f"c({labels[i]!r}, {labels[j]!r}) = {self.c[i, j]}")

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def backend(self) -> str:
        return backend_of(self.c)

    def index(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownVertex(label) from None

    def weight(self, x, y):
        return self.c[self.index(x), self.index(y)]

    @property
    def strengths(self) -> np.ndarray:
        """Vertex strengths ``c_x = sum_y c(x, y)`` in label order."""
        return self.c.sum(axis=1)

    def strength(self, x):
        return self.c[self.index(x)].sum()

    def edges(self):
        """Yield ``(u, v, w)`` for every positive-weight pair, ``u`` before ``v``."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.c[i, j] > 0:
                    yield self.labels[i], self.labels[j], self.c[i, j]

    def neighbors(self, x):
        i = self.index(x)
        return [self.labels[j] for j in range(self.n) if self.c[i, j] > 0]

    def equals(self, other: "WeightedGraph") -> bool:
        return self.labels == other.labels and bool(np.all(self.c == other.c))

    def relabel(self, order) -> "WeightedGraph":
        """Same graph with vertices listed in ``order``."""
        idx = [self.index(v) for v in order]
        return WeightedGraph(tuple(order), self.c[np.ix_(idx, idx)].copy())


def build_graph(labels, edges, backend: str = RATIONAL) -> WeightedGraph:
    """Assemble a graph from ``(u, v, w)`` triples or ``{"u", "v", "w"}`` dicts."""
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be unique")
    pos = {v: i for i, v in enumerate(labels)}
    c = zeros((len(labels), len(labels)), backend)
    seen = set()
    for e in edges:
        if isinstance(e, dict):
            u, v, w = e["u"], e["v"], e["w"]
        else:
            u, v, w = e
        for end in (u, v):
            if end not in pos:
                raise UnknownVertex(end)
        if u == v:
            raise SelfLoop(f"edge ({u!r}, {v!r})")
        key = frozenset((u, v))
        if key in seen:
            raise DuplicateEdge(f"edge ({u!r}, {v!r}) given twice")
        seen.add(key)
        w = parse_scalar(w, backend)
        if w < 0:
            raise NegativeWeight(f"edge ({u!r}, {v!r}) has weight {w}")
        c[pos[u], pos[v]] = c[pos[v], pos[u]] = w
    return WeightedGraph(labels, c)


def laplacian(g: WeightedGraph) -> LabeledMatrix:
    """Normalized Laplacian matrix ``delta_x(y) - c(x, y) / c_x``; rows sum to 0."""
    s = g.strengths
    for i in range(g.n):
        if s[i] <= 0:
            raise IsolatedVertex(g.labels[i])
    one = Fraction(1) if g.backend == RATIONAL else 1.0
    lap = -(g.c / s[:, None])
    for i in range(g.n):
        lap[i, i] = one
    return LabeledMatrix(g.labels, lap)


def kirchhoff_matrix(g: WeightedGraph) -> LabeledMatrix:
    K = -g.c.copy()
    s = g.strengths
    for i in range(g.n):
        K[i, i] = s[i]
    return LabeledMatrix(g.labels, K)


def kirchhoff_minor_determinant(g: WeightedGraph, y):
    """Determinant of the Kirchhoff matrix with row and column ``y`` deleted.

    By the matrix-tree theorem this is the weighted spanning-tree sum, so it
    is positive exactly when ``g`` is connected.
    """
    k = g.index(y)
    keep = [i for i in range(g.n) if i != k]
    K = kirchhoff_matrix(g).values
    return determinant(K[np.ix_(keep, keep)])


def is_connected(g: WeightedGraph, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Breadth-first search over edges with ``c > 0`` (``c > tolerance`` in float mode)."""
    if g.n == 0:
        return True
    cut = 0 if g.backend == RATIONAL else tolerance
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(g.n):
            if j not in seen and g.c[i, j] > cut:
                seen.add(j)
                queue.append(j)
    return len(seen) == g.n


def _vector(g: WeightedGraph, u) -> np.ndarray:
    if isinstance(u, dict):
        missing = [v for v in g.labels if v not in u]
        if missing:
            raise MissingValue(f"no value for vertices {missing}")
        vals = [u[v] for v in g.labels]
    else:
        vals = list(u)
        if len(vals) != g.n:
            raise MissingValue(f"expected {g.n} values, got {len(vals)}")
    if g.backend == RATIONAL:
        out = np.empty(g.n, dtype=object)
        for i, v in enumerate(vals):
            if isinstance(v, Fraction):
                out[i] = v
            elif isinstance(v, Integral):
                out[i] = Fraction(int(v))
            else:
                raise BackendMismatch(f"{type(v).__name__} value on a rational graph")
        return out
    return np.asarray([float(v) for v in vals], dtype=np.float64)


def energy(g: WeightedGraph, u, v=None):
    """Quadratic energy ``1/2 sum c(x,y) (u(x)-u(y))^2``, or its bilinear form.

    ``u`` and ``v`` are dicts keyed by label or sequences in label order.
    The bilinear form comes from polarization.
    """
    uu = _vector(g, u)
    if v is not None:
        vv = _vector(g, v)
        quarter = Fraction(1, 4) if g.backend == RATIONAL else 0.25
        return (_quadratic(g, uu + vv) - _quadratic(g, uu - vv)) * quarter
    return _quadratic(g, uu)


def _quadratic(g, uu):
    diff = uu[:, None] - uu[None, :]
    half = Fraction(1, 2) if g.backend == RATIONAL else 0.5
    return (g.c * diff * diff).sum() * half


def geodesic_metric(g: WeightedGraph) -> MetricSpace:
    """All-pairs shortest paths with edge lengths ``1 / c(x, y)``."""
    if not is_connected(g):
        raise Disconnected("geodesic metric of a disconnected graph")
    n = g.n
    exact = g.backend == RATIONAL
    D = zeros((n, n), g.backend)
    lengths = []
    for i in range(n):
        for j in range(n):
            if i != j and g.c[i, j] > 0:
                D[i, j] = 1 / g.c[i, j]
                lengths.append(D[i, j])
    # any simple path is shorter than the sum of all edge lengths
    big = sum(lengths, Fraction(0) if exact else 0.0) + 1
    for i in range(n):
        for j in range(n):
            if i != j and not g.c[i, j] > 0:
                D[i, j] = big
    for k in range(n):
        via = D[:, k][:, None] + D[k, :][None, :]
        D = np.where(via < D, via, D)
    if g.backend == FLOAT:
        D = D.astype(np.float64)
    return MetricSpace(g.labels, D)
