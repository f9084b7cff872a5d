from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cofactor_det
from ersgraph.errors import BackendMismatch, DimensionMismatch, ParseError, SingularMatrix
from ersgraph.numeric import (
    FLOAT,
    RATIONAL,
    Sign,
    as_array,
    backend_of,
    determinant,
    determinant_sign,
    format_scalar,
    identity,
    parse_scalar,
    sign_of,
    solve_linear_system,
)

PRINTED = [[23, 10, 20], [10, 36, 20], [20, 20, 40]]


def rat(rows, scale=1):
    return as_array([[F(v, scale) for v in r] for r in rows])


def test_identity_solve():
    x = solve_linear_system(identity(3, RATIONAL), as_array([1, 2, 3]))
    assert list(x) == [1, 2, 3]


def test_solve_defect_matrix_of_negative_example():
    # defect matrix at v0 of the 1/260 metric, built from the half-sum definition
    A = rat(PRINTED, 260)
    x = solve_linear_system(A, as_array([1, 1, 1]))
    assert list(x) == [10, 5, -1]


def test_solve_printed_scaling_differs():
    x = solve_linear_system(rat(PRINTED, 130), as_array([1, 1, 1]))
    assert list(x) == [5, F(5, 2), F(-1, 2)]


def test_random_spd_solve_exact(rng):
    B = rat(rng.integers(-5, 6, size=(6, 6)).tolist(), 3)
    A = B.T @ B + identity(6, RATIONAL)
    x_star = as_array([F(int(a), int(b)) for a, b in zip(rng.integers(-9, 9, 6),
                                                          rng.integers(1, 7, 6))])
    assert np.all(solve_linear_system(A, A @ x_star) == x_star)


def test_matrix_rhs():
    A = rat([[2, 1], [1, 3]])
    X = solve_linear_system(A, identity(2, RATIONAL))
    assert np.all(A @ X == identity(2, RATIONAL))


def test_singular_and_shape_errors():
    with pytest.raises(SingularMatrix):
        solve_linear_system(rat([[1, 2], [2, 4]]), as_array([1, 1]))
    with pytest.raises(SingularMatrix):
        solve_linear_system(np.array([[1.0, 2.0], [2.0, 4.0]]), np.array([1.0, 1.0]))
    with pytest.raises(DimensionMismatch):
        solve_linear_system(rat([[1, 0], [0, 1]]), as_array([1, 2, 3]))
    with pytest.raises(BackendMismatch):
        solve_linear_system(rat([[1, 0], [0, 1]]), np.array([1.0, 2.0]))


def test_float_residual_reported():
    A = np.array([[4.0, 1.0], [1.0, 3.0]])
    x, res = solve_linear_system(A, np.array([1.0, 2.0]), return_residual=True)
    assert np.allclose(A @ x, [1, 2]) and res < 1e-12


def test_determinant_examples():
    assert determinant(identity(4, RATIONAL)) == 1
    assert determinant(rat([[1, 1, 0], [1, 2, 1], [0, 1, 1]])) == 0
    assert determinant(rat(PRINTED, 130)) == F(26, 4225)
    assert determinant(rat(PRINTED, 260)) == F(1, 1300)
    assert abs(determinant(np.eye(3) * 2.0) - 8.0) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_determinant_matches_cofactor_oracle(rng, n):
    for _ in range(10):
        rows = [[F(int(v), int(d)) for v, d in zip(rng.integers(-4, 5, n), rng.integers(1, 4, n))]
                for _ in range(n)]
        assert determinant(as_array(rows)) == cofactor_det(rows)


def test_determinant_permutation_parity(rng):
    rows = [[F(int(v)) for v in rng.integers(-5, 6, 5)] for _ in range(5)]
    A = as_array(rows)
    base = determinant(A)
    for _ in range(10):
        perm = rng.permutation(5)
        inversions = sum(1 for i in range(5) for j in range(i + 1, 5) if perm[i] > perm[j])
        assert determinant(A[perm]) == (-1) ** inversions * base


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                         min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=4,
                max_size=4))
def test_solve_then_multiply(rows, b):
    A = as_array(rows)
    bb = as_array(b)
    try:
        x = solve_linear_system(A, bb)
    except SingularMatrix:
        assert determinant(A) == 0
        return
    assert np.all(A @ x == bb)


def test_sign_of():
    assert sign_of(F(26, 4225)).sign is Sign.POSITIVE
    assert sign_of(F(0)).sign is Sign.ZERO
    assert sign_of(F(-1, 10**30)).sign is Sign.NEGATIVE
    assert sign_of(1e-13, 1e-9).sign is Sign.INDETERMINATE
    assert sign_of(0.0).sign is Sign.ZERO
    assert sign_of(-0.5).sign is Sign.NEGATIVE


def test_determinant_sign_float():
    assert determinant_sign(np.eye(3)).sign is Sign.POSITIVE
    assert determinant_sign(np.array([[1.0, 1.0], [1.0, 1.0 + 1e-14]])).sign is Sign.INDETERMINATE
    assert determinant_sign(rat([[1, 1, 0], [1, 2, 1], [0, 1, 1]])).sign is Sign.ZERO


def test_scalars_round_trip():
    assert parse_scalar("1/260") == F(1, 260)
    assert parse_scalar("0.1") == F(1, 10)
    assert parse_scalar(0.1) == F(1, 10)
    assert parse_scalar("3/4", FLOAT) == 0.75
    assert format_scalar(F(-3, 4)) == "-3/4"
    assert format_scalar(0.25) == 0.25
    with pytest.raises(ParseError):
        parse_scalar("abc")
    with pytest.raises(ParseError):
        parse_scalar(float("nan"))
    assert backend_of(as_array([[1]])) == RATIONAL
