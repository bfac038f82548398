"""Reconstruction of the normalized recurrence from Weyl coefficients or two spectra."""

from dataclasses import dataclass

import numpy as np

from .errors import (
    HankelConditionViolated,
    InvalidInstance,
    SingularMatrix,
    SpectraNotDisjoint,
)
from .forward import StandardCoeffs, TwoSpectra, WeylData
from .linalg import determinant, hankel, solve_linear
from .polynomial import Poly, Spectrum, laurent_expand, magnitude_scale, poly_from_roots

HANKEL_RTOL = 1e-10
M1_RTOL = 1e-12
DISJOINT_RTOL = 1e-12


@dataclass(frozen=True)
class CTable:
    """``columns[n]`` holds the ascending coefficients ``c_{0n}..c_{nn}`` of ``P_{n+1}``."""

    columns: tuple

    def poly(self, n):
        return Poly(self.columns[n], trim=False)

    def c(self, i, n):
        if i < 0:
            return 0j
        return self.columns[n][i]


@dataclass(frozen=True)
class HankelCheck:
    deltas: np.ndarray
    passed: bool
    margins: np.ndarray

    def __bool__(self):
        return self.passed


def _as_weyl(M):
    if isinstance(M, WeylData):
        return M
    return WeylData.from_coefficients(M)


def hankel_condition(M):
    """Determinants ``Delta_1..Delta_{l-1}`` and whether all are nonzero.

    ``Delta_0 = 1``.  ``Delta_n`` counts as nonzero when

        |Delta_n / Delta_{n-1}| > 1e-10 * scale_n,

    ``scale_n`` being the largest entry of the ``n``-th Hankel matrix.  Both
    sides transform the same way when ``lam`` is rescaled, whereas ``Delta_n``
    itself grows like ``scale**(n+1)`` and would need a size-dependent
    threshold.  At ``n = 1`` this is the plain test ``|Delta_1| > 1e-10 *
    scale_1``.  ``margins`` holds the left-hand ratios divided by ``scale_n``.
    """
    W = _as_weyl(M)
    l = W.l
    margins = []
    prev = 1.0
    for n in range(1, l):
        scale = float(np.max(np.abs(hankel(W.M, n))))
        delta = W.deltas[n - 1]
        if prev == 0 or scale == 0 or not np.isfinite(prev) or not np.isfinite(scale):
            margins.append(0.0)
        else:
            with np.errstate(over="ignore", invalid="ignore"):
                margins.append(abs(delta / prev) / scale)
        prev = delta
    margins = np.nan_to_num(np.array(margins), nan=0.0, posinf=0.0)
    passed = bool(np.all(margins > HANKEL_RTOL))
    return HankelCheck(W.deltas, passed, margins)


def _check_m1(W):
    if abs(W.M[0] - 1) > M1_RTOL:
        raise InvalidInstance(f"Weyl coefficients must be normalized with M_1 = 1, got {W.M[0]}")


def _last_column_cramer(M, l, c_ll, delta_l):
    """Coefficients ``c_{il}``, ``i < l``, by Cramer's rule on the full system.

    Replacing column ``i`` of the ``(l+1) x (l+1)`` Hankel matrix by the unit
    vector ``e_l`` and expanding along it leaves the minor without row ``l``
    and column ``i``; that minor never touches the unknown ``M_{2l+1}``.  The
    determinant of the full matrix is replaced by ``delta_l``.
    """
    H = np.zeros((l + 1, l + 1), dtype=complex)
    full = np.append(M, 0.0)  # placeholder for M_{2l+1}; never read
    idx = np.arange(l + 1)
    H[:, :] = full[idx[:, None] + idx[None, :]]
    out = np.zeros(l + 1, dtype=complex)
    for i in range(l):
        minor = np.delete(np.delete(H, l, axis=0), i, axis=1)
        out[i] = (-1) ** (i + l) * determinant(minor) / delta_l
    out[l] = c_ll
    return out


def solve_weyl(M, cross_check=False):
    """Recover ``a``, ``b`` from ``M_1..M_{2l}`` (``M_1 = 1``).

    For ``n < l`` the ``(n+1) x (n+1)`` Hankel systems
    ``sum_i c_in M_{i+k+1} = delta_nk`` give the coefficients of ``P_{n+1}``.
    The last column uses ``c_ll = c_{l-1,l-1}`` (that is ``a_l = 1``) moved to
    the right-hand side, leaving an ``l x l`` system with the ``Delta_{l-1}``
    matrix that needs only ``M_1..M_{2l}``.

    With ``cross_check=True`` the last column is also computed by the
    determinant-replacement Cramer formulation and the two are compared.

    Returns ``(StandardCoeffs, CTable)``.
    """
    W = _as_weyl(M)
    _check_m1(W)
    l = W.l
    check = hankel_condition(W)
    if not check.passed:
        bad = int(np.argmin(check.margins)) + 1
        raise HankelConditionViolated(
            f"Hankel determinant condition fails: Delta_{bad} = {check.deltas[bad - 1]:.3e}",
            check.deltas,
        )
    Mv = W.M
    columns = [np.array([1.0 + 0j])]
    for n in range(1, l):
        rhs = np.zeros(n + 1, dtype=complex)
        rhs[n] = 1.0
        try:
            columns.append(solve_linear(hankel(Mv, n), rhs))
        except SingularMatrix as exc:
            raise HankelConditionViolated(
                f"Hankel determinant condition fails at n = {n}: {exc}", check.deltas
            ) from exc
    c_ll = columns[l - 1][l - 1]
    idx = np.arange(l)
    rhs = -c_ll * Mv[l + idx]
    try:
        head = solve_linear(hankel(Mv, l - 1), rhs)
    except SingularMatrix as exc:
        raise HankelConditionViolated(
            f"Hankel determinant condition fails at n = {l - 1}: {exc}", check.deltas
        ) from exc
    last = np.append(head, c_ll)
    if cross_check:
        delta_prev = W.deltas[l - 2] if l > 1 else 1.0
        cramer = _last_column_cramer(Mv, l, c_ll, delta_prev / c_ll)
        scale = max(1.0, float(np.max(np.abs(last))))
        if np.max(np.abs(cramer - last)) > 1e-6 * scale:
            raise AssertionError(
                f"Cramer cross-check disagrees with the reduced system: {cramer} vs {last}"
            )
    columns.append(last)
    table = CTable(tuple(columns))

    a = np.ones(l, dtype=complex)
    b = np.zeros(l, dtype=complex)
    for n in range(1, l + 1):
        a_n = table.c(n - 1, n - 1) / table.c(n, n)
        b[n - 1] = (table.c(n - 2, n - 1) - a_n * table.c(n - 1, n)) / table.c(n - 1, n - 1)
        a[n - 1] = a_n
    return StandardCoeffs(a, b), table


def spectra_disjoint(mu, nu, tol=None):
    """True when no ``mu_j`` lies within ``tol`` of any ``nu_k``.

    The default ``1e-12 * max(1, max|value|)`` only catches values that are
    equal up to rounding.  Complex recurrences do not interlace, and distinct
    eigenvalues ``1e-9`` apart still round-trip; real degeneracy shows up in
    the Hankel determinant condition.
    """
    mu_v = mu.values if isinstance(mu, Spectrum) else np.asarray(mu, dtype=complex)
    nu_v = nu.values if isinstance(nu, Spectrum) else np.asarray(nu, dtype=complex)
    if mu_v.size == 0 or nu_v.size == 0:
        return True
    if tol is None:
        tol = DISJOINT_RTOL * max(1.0, magnitude_scale(np.concatenate([mu_v, nu_v])))
    return bool(np.all(np.abs(mu_v[:, None] - nu_v[None, :]) > tol))


def weyl_from_two_spectra(T):
    mu, nu = T.mu, T.nu
    l = len(mu)
    if l < 1 or len(nu) != l - 1:
        raise InvalidInstance(f"two spectra need |mu| = l >= 1 and |nu| = l - 1, got {len(mu)}, {len(nu)}")
    if not spectra_disjoint(mu, nu):
        raise SpectraNotDisjoint("mu and nu share an eigenvalue, so M(lam) is not of full degree")
    num = poly_from_roots(nu, 1.0)
    den = poly_from_roots(mu, 1.0)
    return WeylData.from_coefficients(laurent_expand(num, den, 2 * l))


def solve_two_spectra(T):
    """Recover ``a``, ``b`` from the zeros of ``P_{l+1}`` and ``Q_{l+1}``.

    ``M = prod(lam - nu_j) / prod(lam - mu_j)``: the common leading factor of
    ``-Q_{l+1}`` and ``P_{l+1}`` cancels.
    """
    if not isinstance(T, TwoSpectra):
        T = TwoSpectra(*T)
    S, _ = solve_weyl(weyl_from_two_spectra(T))
    return S
