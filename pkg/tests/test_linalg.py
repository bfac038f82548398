import numpy as np
import pytest

from transinv.errors import InsufficientCoefficients, SingularMatrix
from transinv.linalg import determinant, hankel, solve_linear


def test_solve_identity():
    np.testing.assert_allclose(solve_linear(np.eye(3), [1, 2, 3]), [1, 2, 3])


def test_solve_tiny_pivot_is_singular():
    with pytest.raises(SingularMatrix):
        solve_linear([[1, 0], [0, 1e-20]], [1, 1])


def test_solve_hankel_worked_example():
    x = solve_linear(hankel([1, 0, 1, 0], 1), [0, 1])
    np.testing.assert_allclose(x, [0, 1])


def test_solve_random_complex_against_numpy():
    rng = np.random.default_rng(0)
    for n in range(1, 12):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        b = rng.normal(size=n) + 1j * rng.normal(size=n)
        np.testing.assert_allclose(solve_linear(A, b), np.linalg.solve(A, b), rtol=1e-9, atol=1e-11)


def test_solve_needs_pivoting():
    np.testing.assert_allclose(solve_linear([[0, 1], [1, 0]], [2, 3]), [3, 2])


def test_determinant_examples():
    for n in range(1, 5):
        assert determinant(np.eye(n)) == pytest.approx(1)
    assert determinant(hankel([1, 0, 1], 1)) == pytest.approx(1)
    assert determinant(hankel([1, 0, 0], 1)) == 0
    assert determinant(np.zeros((0, 0))) == 1


def test_determinant_sign_of_row_swaps():
    assert determinant([[0, 1], [1, 0]]) == pytest.approx(-1)
    P = np.eye(3)[[1, 2, 0]]  # cyclic permutation, even
    assert determinant(P) == pytest.approx(1)


def test_determinant_against_numpy():
    rng = np.random.default_rng(1)
    for n in range(1, 10):
        A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert determinant(A) == pytest.approx(np.linalg.det(A), rel=1e-10)


def test_hankel_examples():
    np.testing.assert_array_equal(hankel([1, 0, 1], 1), [[1, 0], [0, 1]])
    np.testing.assert_array_equal(hankel([1], 0), [[1]])
    np.testing.assert_array_equal(hankel([1, 2, 3, 4, 5], 2), [[1, 2, 3], [2, 3, 4], [3, 4, 5]])


def test_hankel_too_few_coefficients():
    with pytest.raises(InsufficientCoefficients):
        hankel([1, 2], 1)
