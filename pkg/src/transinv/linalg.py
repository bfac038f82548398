"""Small dense complex solves, determinants and Hankel matrices.

Matrices are plain 2-D complex numpy arrays.  Factorization is LAPACK's
partial-pivot LU (``getrf``); pivots are inspected so that near-singular
systems raise instead of returning garbage.
"""

import warnings

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from .errors import InsufficientCoefficients, SingularMatrix

PIVOT_RTOL = 1e-13


def _square(A):
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def _factor(A):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        warnings.simplefilter("ignore", RuntimeWarning)
        return lu_factor(A, check_finite=True)


def solve_linear(A, rhs):
    """Solve ``A x = rhs`` by LU with partial pivoting.

    Raises :class:`SingularMatrix` when a pivot falls below ``1e-13`` times
    the largest entry of ``A``.
    """
    A = _square(A)
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.shape[0] != A.shape[0]:
        raise ValueError("right-hand side length does not match the matrix")
    if A.shape[0] == 0:
        return np.zeros(0, dtype=complex)
    scale = np.max(np.abs(A))
    lu, piv = _factor(A)
    pivots = np.abs(np.diag(lu))
    if scale == 0 or pivots.min() <= PIVOT_RTOL * scale:
        raise SingularMatrix(
            f"pivot {pivots.min():.3e} below {PIVOT_RTOL:g} x matrix scale {scale:.3e}"
        )
    return lu_solve((lu, piv), rhs)


def determinant(A):
    """Product of LU pivots, signed by the row exchanges.  Zero if singular."""
    A = _square(A)
    if A.shape[0] == 0:
        return 1.0 + 0j
    lu, piv = _factor(A)
    swaps = np.count_nonzero(piv != np.arange(piv.size))
    with np.errstate(over="ignore", invalid="ignore"):
        det = np.prod(np.diag(lu))
    return complex(-det if swaps % 2 else det)


def hankel(M, n):
    """The ``(n+1) x (n+1)`` matrix with entry ``(i, j) = M_{i+j-1}`` (1-based).

    ``M`` holds ``M_1, M_2, ...`` in that order, so entry ``(i, j)`` is
    ``M[i + j]`` with 0-based indices.
    """
    M = np.asarray(M, dtype=complex)
    if n < 0:
        raise ValueError("Hankel order must be nonnegative")
    if M.size < 2 * n + 1:
        raise InsufficientCoefficients(
            f"Hankel order {n} needs {2 * n + 1} coefficients, got {M.size}"
        )
    idx = np.arange(n + 1)
    return M[idx[:, None] + idx[None, :]]
