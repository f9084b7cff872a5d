"""Scalar backends and dense linear algebra.

Two backends exist.  The rational backend stores matrices as numpy arrays of
``dtype=object`` holding :class:`fractions.Fraction` values and does exact
Gaussian elimination.  The float backend uses ``float64`` arrays and LAPACK
LU with partial pivoting.  The backend of an array is read off its dtype, and
every operation refuses to mix the two.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Rational, Real

import numpy as np
from gmpy2 import mpq
import scipy.linalg

from .errors import BackendMismatch, DimensionMismatch, ParseError, SingularMatrix

RATIONAL = "rational"
FLOAT = "float"
BACKENDS = (RATIONAL, FLOAT)

DEFAULT_TOLERANCE = 1e-9
# Above this size the rational backend gets slow; callers may still force it.
RATIONAL_SIZE_LIMIT = 64


def default_backend(n: int) -> str:
    return RATIONAL if n <= RATIONAL_SIZE_LIMIT else FLOAT


def parse_scalar(value, backend: str = RATIONAL):
    """Convert a number or scalar literal (``"3"``, ``"0.25"``, ``"1/260"``).

    Decimal literals and JSON floats become exact rationals on the rational
    backend: ``0.1`` parses to ``1/10``, not to its binary expansion.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a scalar: {value!r}")
    if backend == RATIONAL:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (Integral, Rational)):
            return Fraction(value)
        if isinstance(value, float):
            if not np.isfinite(value):
                raise ParseError(f"non-finite scalar: {value!r}")
            return Fraction(repr(value))
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad scalar literal {value!r}") from exc
        raise ParseError(f"not a scalar: {value!r}")
    if backend == FLOAT:
        if isinstance(value, str):
            try:
                return float(Fraction(value.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad scalar literal {value!r}") from exc
        if isinstance(value, Real):
            out = float(value)
            if not np.isfinite(out):
                raise ParseError(f"non-finite scalar: {value!r}")
            return out
        raise ParseError(f"not a scalar: {value!r}")
    raise ValueError(f"unknown backend {backend!r}")


def format_scalar(value) -> str | float:
    """JSON form of a scalar: ``"p/q"`` for rationals, the float itself otherwise."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return float(value)


def as_array(rows, backend: str = RATIONAL) -> np.ndarray:
    """Build a backend array from nested sequences of scalars or literals."""
    raw = np.asarray(rows, dtype=object)
    out = np.empty(raw.shape, dtype=object)
    for idx, v in np.ndenumerate(raw):
        out[idx] = parse_scalar(v, backend)
    if backend == FLOAT:
        return out.astype(np.float64)
    return out


def backend_of(arr) -> str:
    arr = np.asarray(arr)
    if arr.dtype == object:
        for v in arr.flat:
            if not isinstance(v, Fraction):
                raise BackendMismatch(
                    f"object array holds {type(v).__name__}, expected Fraction"
                )
        return RATIONAL
    if np.issubdtype(arr.dtype, np.floating):
        return FLOAT
    raise BackendMismatch(f"unsupported dtype {arr.dtype}")


def same_backend(*arrays) -> str:
    found = {backend_of(a) for a in arrays}
    if len(found) != 1:
        raise BackendMismatch(f"mixed backends: {sorted(found)}")
    return found.pop()


def zeros(shape, backend: str) -> np.ndarray:
    if backend == RATIONAL:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape, dtype=np.float64)


def identity(n: int, backend: str) -> np.ndarray:
    out = zeros((n, n), backend)
    for i in range(n):
        out[i, i] = Fraction(1) if backend == RATIONAL else 1.0
    return out


def convert(arr, backend: str) -> np.ndarray:
    """Explicit backend conversion; the only sanctioned way to change backend."""
    arr = np.asarray(arr)
    if backend == FLOAT:
        return np.asarray(arr, dtype=object).astype(np.float64)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = v if isinstance(v, Fraction) else Fraction(float(v))
    return out


def _check_square(A):
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {A.shape}")


# --- exact elimination ------------------------------------------------------


# elimination runs on gmpy2 rationals, several times faster than Fraction
def _to_mpq(A):
    return [[mpq(v.numerator, v.denominator) for v in row] for row in A]


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _eliminate(rows, rhs):
    """Row-reduce ``rows`` in place (exact rationals), applying the same ops to ``rhs``.

    Returns the number of row swaps, or raises SingularMatrix on a zero pivot.
    """
    n = len(rows)
    swaps = 0
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix(f"zero pivot in column {col}")
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
            swaps += 1
        prow = rows[col]
        p = prow[col]
        for r in range(col + 1, n):
            row = rows[r]
            f = row[col]
            if f == 0:
                continue
            f = f / p
            for k in range(col, n):
                if prow[k]:
                    row[k] -= f * prow[k]
            rr = rhs[r]
            pr = rhs[col]
            for k in range(len(rr)):
                if pr[k]:
                    rr[k] -= f * pr[k]
    return swaps


def _back_substitute(rows, rhs):
    n = len(rows)
    m = len(rhs[0]) if n else 0
    x = [[mpq(0)] * m for _ in range(n)]
    for i in range(n - 1, -1, -1):
        row = rows[i]
        for k in range(m):
            acc = rhs[i][k]
            for j in range(i + 1, n):
                if row[j]:
                    acc -= row[j] * x[j][k]
            x[i][k] = acc / row[i]
    return x


def _rational_determinant(A):
    n = A.shape[0]
    rows = _to_mpq(A)
    try:
        swaps = _eliminate(rows, [[] for _ in range(n)])
    except SingularMatrix:
        return Fraction(0)
    det = mpq(-1 if swaps % 2 else 1)
    for i in range(n):
        det *= rows[i][i]
    return _to_fraction(det)


# --- public operations ------------------------------------------------------


def solve_linear_system(A, b, tolerance: float = DEFAULT_TOLERANCE, *, return_residual=False):
    """Solve ``A x = b`` for a vector or a matrix of right-hand sides.

    Rational: exact elimination, SingularMatrix on an exactly zero pivot.
    Float: LU with partial pivoting, SingularMatrix when a pivot falls below
    ``tolerance`` relative to the largest entry of ``A``.  With
    ``return_residual`` the infinity norm of ``A x - b`` is returned as well.
    """
    A = np.asarray(A)
    b = np.asarray(b)
    _check_square(A)
    backend = same_backend(A, b)
    n = A.shape[0]
    if b.shape[0] != n or b.ndim not in (1, 2):
        raise DimensionMismatch(f"rhs shape {b.shape} does not fit {A.shape}")
    vector = b.ndim == 1
    B = b.reshape(n, -1)
    if backend == RATIONAL:
        rows = _to_mpq(A)
        rhs = _to_mpq(B)
        _eliminate(rows, rhs)
        sol = _back_substitute(rows, rhs)
        x = np.empty((n, B.shape[1]), dtype=object)
        for i in range(n):
            for k in range(B.shape[1]):
                x[i, k] = _to_fraction(sol[i][k])
        residual = Fraction(0)
    else:
        scale = float(np.max(np.abs(A))) if A.size else 0.0
        if scale == 0.0:
            raise SingularMatrix("zero matrix")
        with warnings.catch_warnings():
            # singularity is reported below through the pivot test
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(A, check_finite=True)
        pivots = np.abs(np.diag(lu))
        if pivots.min() <= tolerance * scale:
            raise SingularMatrix(
                f"pivot {pivots.min():.3g} below tolerance {tolerance:g} x scale {scale:.3g}"
            )
        x = scipy.linalg.lu_solve((lu, piv), B)
        residual = float(np.max(np.abs(A @ x - B))) if B.size else 0.0
    if vector:
        x = x.reshape(n)
    if return_residual:
        return x, residual
    return x


def determinant(A) -> Fraction | float:
    """Exact determinant (rational) or LU-based determinant (float)."""
    A = np.asarray(A)
    _check_square(A)
    if A.shape[0] == 0:
        return Fraction(1) if backend_of(A) == RATIONAL else 1.0
    if backend_of(A) == RATIONAL:
        return _rational_determinant(A)
    return float(scipy.linalg.det(A))


def condition_number(A) -> float:
    """2-norm condition estimate, computed in floating point for either backend."""
    A = np.asarray(A)
    _check_square(A)
    return float(np.linalg.cond(A.astype(np.float64)))


class Sign(enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class SignVerdict:
    sign: Sign
    magnitude: Fraction | float
    tolerance: Fraction | float

    @property
    def is_positive(self) -> bool:
        return self.sign is Sign.POSITIVE


def sign_of(x, tolerance: float = DEFAULT_TOLERANCE) -> SignVerdict:
    """Exact trichotomy for rationals; floats within the band are not decided.

    A float that is exactly ``0.0`` is ZERO, any other value with
    ``|x| <= tolerance`` is INDETERMINATE.
    """
    if isinstance(x, Fraction):
        s = Sign.POSITIVE if x > 0 else Sign.NEGATIVE if x < 0 else Sign.ZERO
        return SignVerdict(s, x, Fraction(0))
    if isinstance(x, (int, np.integer)):
        return sign_of(Fraction(int(x)))
    x = float(x)
    if x == 0.0:
        return SignVerdict(Sign.ZERO, x, tolerance)
    if abs(x) <= tolerance:
        return SignVerdict(Sign.INDETERMINATE, x, tolerance)
    return SignVerdict(Sign.POSITIVE if x > 0 else Sign.NEGATIVE, x, tolerance)


def determinant_sign(A, tolerance: float = DEFAULT_TOLERANCE) -> SignVerdict:
    """Sign of ``det A`` with a scale-aware band in float mode.

    The float decision is made on the LU pivots: the sign is left undecided
    when the smallest pivot is below ``tolerance`` times the largest entry.
    The reported tolerance is that criterion translated to the determinant's
    own scale, so ``|det| <= tolerance`` exactly when the band is hit.
    """
    A = np.asarray(A)
    _check_square(A)
    if backend_of(A) == RATIONAL:
        return sign_of(determinant(A))
    if A.shape[0] == 0:
        return SignVerdict(Sign.POSITIVE, 1.0, 0.0)
    scale = float(np.max(np.abs(A)))
    if scale == 0.0:
        return SignVerdict(Sign.ZERO, 0.0, tolerance)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(A)
    diag = np.diag(lu)
    swaps = int(np.sum(piv != np.arange(len(piv))))
    det = float(np.prod(diag)) * (-1.0 if swaps % 2 else 1.0)
    smallest = float(np.min(np.abs(diag)))
    if smallest == 0.0:
        return SignVerdict(Sign.ZERO, 0.0, tolerance * scale)
    eff_tol = abs(det) * tolerance * scale / smallest
    if smallest <= tolerance * scale:
        return SignVerdict(Sign.INDETERMINATE, det, eff_tol)
    return SignVerdict(Sign.POSITIVE if det > 0 else Sign.NEGATIVE, det, eff_tol)


@dataclass(frozen=True, eq=False)
class LabeledMatrix:
    """Square matrix whose rows and columns are indexed by the same labels."""

    labels: tuple
    values: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        if self.values.shape != (len(labels), len(labels)):
            raise DimensionMismatch(
                f"{len(labels)} labels for a matrix of shape {self.values.shape}"
            )

    def __getitem__(self, key):
        x, y = key
        return self.values[self.labels.index(x), self.labels.index(y)]

    @property
    def backend(self) -> str:
        return backend_of(self.values)
