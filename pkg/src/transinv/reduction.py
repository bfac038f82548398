"""Inverse problems with polynomial boundary conditions.

The transmission problem and the Hochstadt mixed-data problem are both
reduced to the normalized recurrence with the boundary condition
``R0(lam) y_1 - R1(lam) y_0 = 0``.  Its characteristic polynomial
``E = R0 v_1 - R1 v_0`` is rebuilt from the eigenvalues, ``v_0``, ``v_1`` are
recovered from ``E``, and ``M = v_1 / v_0`` goes to the Weyl solver.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    CommonRoot,
    ConfigMismatch,
    InvalidInstance,
    LeadingMismatch,
    SingularMatrix,
    SingularSystem,
)
from .forward import (
    BoundaryPolys,
    StandardCoeffs,
    WeylData,
    build_boundary_polys,
    forward_recursion,
    lift_standard,
)
from .linalg import solve_linear
from .polynomial import (
    Poly,
    Spectrum,
    cluster_roots,
    hermite_interpolate,
    laurent_expand,
    magnitude_scale,
    poly_eval,
    poly_from_roots,
    poly_roots,
    scaled_derivative,
)
from .weyl import CTable, solve_weyl

LEADING_RTOL = 1e-9
RESIDUAL_RTOL = 1e-9
HERMITE_CLUSTER_RTOL = 1e-6
COMMON_ROOT_RTOL = 1e-10


def _check_E(B, E, L):
    if L is None:
        L = B.size
    if L != B.size:
        raise ConfigMismatch(f"boundary polynomials imply size {B.size}, got L = {L}")
    if E.degree != 2 * L - 1:
        raise LeadingMismatch(f"E must have degree {2 * L - 1}, got {E.degree}")
    expected = B.leading_E()
    if abs(E.leading - expected) > LEADING_RTOL * max(abs(expected), abs(E.leading)):
        raise LeadingMismatch(
            f"leading coefficient of E is {E.leading}, boundary polynomials require {expected}"
        )
    return L


def recover_v_linear(B, E, L=None):
    """Monic ``v_0`` (degree ``L``) and ``v_1`` (degree ``L - 1``) with ``R0 v_1 - R1 v_0 = E``.

    Matches the coefficients of ``lam**s``, ``s = 0..2L-2``; the unknowns are
    the non-leading coefficients of ``v_1`` followed by those of ``v_0``, and
    the monic terms are moved to the right-hand side.
    """
    L = _check_E(B, E, L)
    R0, R1 = B.R0, B.R1
    n1, n0 = L - 1, L
    size = n1 + n0
    A = np.zeros((size, size), dtype=complex)
    rhs = np.zeros(size, dtype=complex)
    for s in range(size):
        for k in range(n1):
            A[s, k] = R0.coef(s - k)
        for k in range(n0):
            A[s, n1 + k] = -R1.coef(s - k)
        rhs[s] = E.coef(s) - R0.coef(s - n1) + R1.coef(s - n0)
    try:
        x = solve_linear(A, rhs)
    except SingularMatrix as exc:
        raise SingularSystem(
            "coefficient system for v_0, v_1 is singular; R0 and R1 are probably not coprime"
        ) from exc
    v1 = Poly(np.append(x[:n1], 1.0), trim=False)
    v0 = Poly(np.append(x[n1:], 1.0), trim=False)
    residual = B.R0 * v1 - B.R1 * v0 - E
    scale = max(magnitude_scale(E.coeffs), 1e-300)
    if magnitude_scale(residual.coeffs) > RESIDUAL_RTOL * scale * max(1.0, magnitude_scale(x)):
        raise SingularSystem("coefficient system for v_0, v_1 solved with a large residual")
    return v0, v1


def _eval_scale(p, z):
    return float(np.sum(np.abs(p.coeffs) * abs(z) ** np.arange(len(p))))


def _polish_centre(R, xi, m, radius, steps=3):
    """Newton on the ``(m-1)``-th derivative, which has a simple root at an ``m``-fold root.

    Rounding splits a multiple root into a small cluster whose mean can sit
    ``1e-7`` away from the point where ``R, R', ..., R^(m-1)`` vanish
    together; the Hermite data are only consistent at that point.  Steps that
    would leave the cluster radius are discarded.
    """
    f = scaled_derivative(R, m - 1)
    df = scaled_derivative(f, 1)
    z = xi
    for _ in range(steps):
        d = poly_eval(df, z)
        if d == 0:
            break
        z_new = z - poly_eval(f, z) / d
        if not np.isfinite(z_new) or abs(z_new - xi) > radius:
            break
        z = z_new
    return z


def _hermite_data(nodes, mults, E, partner, sign):
    data = []
    for xi, m in zip(nodes, mults):
        r = poly_eval(partner, xi)
        if abs(r) <= COMMON_ROOT_RTOL * max(_eval_scale(partner, xi), 1e-300):
            raise CommonRoot(f"R0 and R1 share the root {xi}")
        vals = []
        for nu in range(m):
            acc = sign * poly_eval(scaled_derivative(E, nu), xi)
            for s in range(nu):
                acc -= poly_eval(scaled_derivative(partner, nu - s), xi) * vals[s]
            vals.append(acc / r)
        data.append(vals)
    return data


def recover_v_hermite(B, E, L=None, tol=None):
    """Same result as :func:`recover_v_linear`, built from values at the roots of ``R0``, ``R1``.

    At a root ``xi`` of ``R_j`` the identity ``E = R0 v_1 - R1 v_0`` involves
    only ``v_j`` and the other polynomial, so the scaled derivatives
    ``v_j^<nu>(xi)``, ``nu`` below the multiplicity, follow by a triangular
    recursion.  Hermite interpolation then gives the monic ``v_j``.

    Only the configuration ``deg R0 = L``, ``deg R1 = L - 1`` is supported,
    since there the number of conditions equals ``deg v_j``.  ``tol`` is the
    relative clustering tolerance used to detect repeated roots of ``R_j``
    (default ``1e-6``): computed double roots split by about ``sqrt(eps)``.
    """
    if B.config != "paper":
        raise ConfigMismatch("the Hermite path needs deg R0 = L and deg R1 = L - 1")
    L = _check_E(B, E, L)
    rtol = HERMITE_CLUSTER_RTOL if tol is None else tol
    out = []
    for j, (Rj, partner, sign) in enumerate(((B.R0, B.R1, -1.0), (B.R1, B.R0, 1.0))):
        degree = L - j
        if degree == 0:
            out.append(Poly([1.0]))
            continue
        roots = poly_roots(Rj)
        ctol = rtol * max(1.0, magnitude_scale(roots.values))
        ms = cluster_roots(roots, ctol)
        nodes = np.array([
            _polish_centre(Rj, xi, m, ctol) if m > 1 else xi
            for xi, m in zip(ms.distinct_roots, ms.multiplicities)
        ], dtype=complex)
        data = _hermite_data(nodes, ms.multiplicities, E, partner, sign)
        out.append(hermite_interpolate(nodes, ms.multiplicities, data, degree))
    v0, v1 = out
    return v0, v1


@dataclass(frozen=True)
class PolyBCSolution:
    coeffs: StandardCoeffs
    E: Poly
    v0: Poly
    v1: Poly
    weyl: WeylData
    ctable: CTable


def reconstruct_poly_bc(B, spectrum, leading=None):
    """Full output of the polynomial-boundary inverse problem (see :func:`solve_poly_bc`)."""
    values = spectrum.values if isinstance(spectrum, Spectrum) else np.asarray(spectrum, dtype=complex).ravel()
    L = B.size
    if values.size != 2 * L - 1:
        raise InvalidInstance(f"expected {2 * L - 1} eigenvalues for size {L}, got {values.size}")
    if leading is None:
        leading = B.leading_E()
    E = poly_from_roots(values, leading)
    v0, v1 = recover_v_linear(B, E, L)
    W = WeylData.from_coefficients(laurent_expand(v1, v0, 2 * L))
    S, table = solve_weyl(W)
    return PolyBCSolution(S, E, v0, v1, W, table)


def solve_poly_bc(B, spectrum, leading=None):
    """Recover the normalized coefficients from ``2L - 1`` eigenvalues and ``R0``, ``R1``.

    ``E`` is rebuilt from its zeros with leading coefficient
    ``R0[L] - R1[L-1]``, which is ``r0 - r1`` in the paper configuration and
    ``-r1`` in the Hochstadt one.  Passing ``leading`` overrides it; a value
    inconsistent with ``B`` raises :class:`LeadingMismatch`.
    """
    return reconstruct_poly_bc(B, spectrum, leading).coeffs


def solve_transmission(alpha_dot, beta_dot, alpha_l, spectrum):
    """Recover ``(alpha, beta)`` of the transmission problem from its ``2l - 1`` eigenvalues.

    ``alpha_dot``, ``beta_dot`` and ``alpha_l`` are known a priori; the
    returned ``alpha`` ends with the given ``alpha_l``.
    """
    B = build_boundary_polys(alpha_dot, beta_dot, alpha_l)
    S = solve_poly_bc(B, spectrum)
    return lift_standard(S, alpha_l)


@dataclass(frozen=True, eq=False)
class SymmetricJacobi:
    """Symmetric tridiagonal matrix: diagonal ``B`` (length ``l``), off-diagonal ``A`` (length ``l - 1``)."""

    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        B = np.array(self.B, dtype=complex).ravel()
        A = np.array(self.A, dtype=complex).ravel()
        if B.size < 1:
            raise InvalidInstance("need l >= 1")
        if A.size != B.size - 1:
            raise InvalidInstance(f"A must have l - 1 = {B.size - 1} entries, got {A.size}")
        if np.any(A == 0):
            raise InvalidInstance(f"A_{int(np.flatnonzero(A == 0)[0]) + 1} must be nonzero")
        A.setflags(write=False)
        B.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    @property
    def l(self):
        return self.B.size

    def matrix(self):
        return np.diag(self.B) + np.diag(self.A, 1) + np.diag(self.A, -1)


def symmetric_to_standard(J):
    """``a_n = A_n**2``, ``b_n = B_n`` (with ``A_l = 1`` so ``a_l = 1``)."""
    return StandardCoeffs(np.append(J.A ** 2, 1.0), J.B)


def standard_to_symmetric(S):
    """Principal square roots ``A_n = sqrt(a_n)``.

    ``A_n`` is only determined up to sign; the principal branch makes this a
    function and inverts :func:`symmetric_to_standard` for ``A_n`` in the
    right half-plane.
    """
    return SymmetricJacobi(np.sqrt(S.a[:-1].astype(complex)), S.b)


def solve_hochstadt_mixed(A_head, B_head, mu):
    """Complete a symmetric Jacobi matrix of odd size ``l = 2m - 1``.

    Given ``A_1..A_{m-1}``, ``B_1..B_{m-1}`` and all ``l`` eigenvalues, the
    upper block fixes ``P_{m-1}``, ``P_m``; the rows ``m..l`` then form a
    normalized recurrence of size ``m`` with boundary condition
    ``P_{m-1} y_m - P_m y_{m-1} = 0``.  Its characteristic polynomial has
    leading coefficient ``-leading(P_m)`` because ``deg P_{m-1} < m``.
    """
    A_head = np.array(A_head, dtype=complex).ravel()
    B_head = np.array(B_head, dtype=complex).ravel()
    values = mu.values if isinstance(mu, Spectrum) else np.asarray(mu, dtype=complex).ravel()
    m = A_head.size + 1
    if B_head.size != m - 1:
        raise InvalidInstance("A_head and B_head must both have m - 1 entries")
    if values.size != 2 * m - 1:
        raise InvalidInstance(f"expected {2 * m - 1} eigenvalues for m = {m}, got {values.size}")
    if np.any(A_head == 0):
        raise InvalidInstance("A_head entries must be nonzero")
    if m == 1:
        return SymmetricJacobi(np.zeros(0), values.copy())
    P = forward_recursion(A_head ** 2, B_head, Poly(), Poly([1.0]))
    R0, R1 = P[m - 1], P[m]
    B = BoundaryPolys(R0, R1, "hochstadt")
    tail = solve_poly_bc(B, values, -R1.leading)
    A_tail = np.sqrt(tail.a[:-1].astype(complex))
    return SymmetricJacobi(np.concatenate([A_head, A_tail]), np.concatenate([B_head, tail.b]))
