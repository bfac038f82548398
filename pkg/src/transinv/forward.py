"""Forward problems: solution families, characteristic polynomials, Weyl data.

Two recurrences appear throughout.  The normalized one

    a_n y_{n+1} + b_n y_n + y_{n-1} = lam y_n,   n = 1..l,   a_l = 1,

and the symmetric-weight (transmission) one

    alpha_n psi_{n+1} + beta_n psi_n + alpha_n psi_{n-1} = lam psi_n.

All solutions are polynomials in ``lam`` and are computed exactly on
coefficients; nothing is sampled or interpolated.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigMismatch, DegenerateLeading, InvalidInstance
from .linalg import determinant, hankel
from .polynomial import Poly, Spectrum, laurent_expand, poly_roots

LAM = Poly([0.0, 1.0])
DEGENERATE_RTOL = 1e-12


def _vector(values, name, length=None):
    arr = np.array(values, dtype=complex).ravel()
    if length is not None and arr.size != length:
        raise InvalidInstance(f"{name} must have {length} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInstance(f"{name} contains non-finite values")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class StandardCoeffs:
    """Coefficients of the normalized recurrence.

    ``a`` may be given with ``l`` or ``l - 1`` entries; ``a_l`` is always
    stored as 1 because it multiplies ``y_{l+1} = 0`` and cannot be observed.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        b = _vector(self.b, "b")
        l = b.size
        if l < 1:
            raise InvalidInstance("need at least one coefficient (l >= 1)")
        a = np.array(self.a, dtype=complex).ravel()
        if a.size == l - 1:
            a = np.append(a, 1.0)
        a = _vector(a, "a", l).copy()
        a[-1] = 1.0
        if np.any(a[:-1] == 0):
            n = int(np.flatnonzero(a[:-1] == 0)[0]) + 1
            raise InvalidInstance(f"a_{n} must be nonzero")
        a.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def l(self):
        return self.b.size


@dataclass(frozen=True, eq=False)
class TransmissionInstance:
    alpha: np.ndarray
    beta: np.ndarray
    alpha_dot: np.ndarray
    beta_dot: np.ndarray

    def __post_init__(self):
        beta = _vector(self.beta, "beta")
        l = beta.size
        if l < 1:
            raise InvalidInstance("need at least one coefficient (l >= 1)")
        alpha = _vector(self.alpha, "alpha", l)
        alpha_dot = _vector(self.alpha_dot, "alpha_dot", l)
        beta_dot = _vector(self.beta_dot, "beta_dot", l)
        for name, arr in (("alpha", alpha), ("alpha_dot", alpha_dot)):
            zero = np.flatnonzero(arr == 0)
            if zero.size:
                raise InvalidInstance(f"{name}_{zero[0] + 1} must be nonzero")
        if _degenerate(alpha[-1], alpha_dot[-1]):
            raise InvalidInstance("alpha_l equals alpha_dot_l")
        for name, arr in (("alpha", alpha), ("beta", beta),
                          ("alpha_dot", alpha_dot), ("beta_dot", beta_dot)):
            object.__setattr__(self, name, arr)

    @property
    def l(self):
        return self.beta.size


def _degenerate(x, y):
    return abs(x - y) <= DEGENERATE_RTOL * max(abs(x), abs(y))


@dataclass(frozen=True)
class SolutionFamily:
    polys: tuple
    kind: str

    def __getitem__(self, n):
        return self.polys[n]

    def __len__(self):
        return len(self.polys)


def forward_recursion(a, b, y0, y1):
    """Solutions ``y_0..y_{len(b)+1}`` of the normalized recurrence, run upward.

    Unlike :class:`StandardCoeffs` this does not force the last ``a`` to 1,
    so it can run over an interior block of a larger recurrence.
    """
    ys = [y0, y1]
    for n in range(1, b.size + 1):
        nxt = ((LAM - b[n - 1]) * ys[n] - ys[n - 1]) / a[n - 1]
        ys.append(nxt)
    return ys


def _forward_symmetric(alpha, beta):
    ys = [Poly(), Poly([1.0])]
    for n in range(1, beta.size + 1):
        al = alpha[n - 1]
        nxt = ((LAM - beta[n - 1]) * ys[n] - al * ys[n - 1]) / al
        ys.append(nxt)
    return ys


def _backward_v(a, b):
    l = b.size
    v = [None] * (l + 2)
    v[l + 1] = Poly()
    v[l] = Poly([1.0])
    for n in range(l, 0, -1):
        v[n - 1] = (LAM - b[n - 1]) * v[n] - a[n - 1] * v[n + 1]
    return v


def solution_family(coeffs, kind):
    """Solutions indexed ``n = 0..l+1`` of one of the two recurrences.

    ``kind`` is ``"P"``, ``"Q"`` or ``"v"`` for :class:`StandardCoeffs`
    (P: P_0 = 0, P_1 = 1; Q: Q_0 = 1, Q_1 = 0; v: v_{l+1} = 0, v_l = 1,
    computed downward), or ``"phi"`` / ``"phi_dot"`` for a
    :class:`TransmissionInstance` (phi_0 = 0, phi_1 = 1, using the plain or
    dotted coefficients).
    """
    if kind in ("P", "Q", "v"):
        if not isinstance(coeffs, StandardCoeffs):
            raise TypeError(f"family {kind} needs StandardCoeffs")
        if kind == "P":
            polys = forward_recursion(coeffs.a, coeffs.b, Poly(), Poly([1.0]))
        elif kind == "Q":
            polys = forward_recursion(coeffs.a, coeffs.b, Poly([1.0]), Poly())
        else:
            polys = _backward_v(coeffs.a, coeffs.b)
    elif kind in ("phi", "phi_dot"):
        if not isinstance(coeffs, TransmissionInstance):
            raise TypeError(f"family {kind} needs a TransmissionInstance")
        if kind == "phi":
            polys = _forward_symmetric(coeffs.alpha, coeffs.beta)
        else:
            polys = _forward_symmetric(coeffs.alpha_dot, coeffs.beta_dot)
    else:
        raise ValueError(f"unknown solution family {kind!r}")
    return SolutionFamily(tuple(polys), kind)


@dataclass(frozen=True, eq=False)
class WeylData:
    """Truncated Weyl coefficients ``M_1..M_{2l}`` with their Hankel determinants.

    ``deltas[n-1]`` is the determinant of ``hankel(M, n)`` for ``n = 1..l-1``.
    """

    M: np.ndarray
    deltas: np.ndarray

    @classmethod
    def from_coefficients(cls, M):
        M = np.array(M, dtype=complex).ravel()
        if M.size < 2 or M.size % 2:
            raise InvalidInstance(f"need an even number (>= 2) of Weyl coefficients, got {M.size}")
        l = M.size // 2
        deltas = np.array([determinant(hankel(M, n)) for n in range(1, l)], dtype=complex)
        return cls(M, deltas)

    @property
    def l(self):
        return self.M.size // 2


def weyl_forward(S):
    """Weyl coefficients of ``M(lam) = -Q_{l+1} / P_{l+1}``."""
    P = solution_family(S, "P")[S.l + 1]
    Q = solution_family(S, "Q")[S.l + 1]
    return WeylData.from_coefficients(laurent_expand(-Q, P, 2 * S.l))


@dataclass(frozen=True)
class TwoSpectra:
    mu: Spectrum
    nu: Spectrum

    def __post_init__(self):
        for name in ("mu", "nu"):
            val = getattr(self, name)
            if not isinstance(val, Spectrum):
                object.__setattr__(self, name, Spectrum(val))

    @property
    def l(self):
        return len(self.mu)


def two_spectra_forward(S):
    """Zeros of ``P_{l+1}`` (``y_0 = 0``) and of ``Q_{l+1}`` (``y_1 = 0``)."""
    P = solution_family(S, "P")[S.l + 1]
    Q = solution_family(S, "Q")[S.l + 1]
    mu = poly_roots(P)
    nu = poly_roots(Q) if S.l > 1 else Spectrum(np.zeros(0))
    return TwoSpectra(mu, nu)


def char_poly_transmission(T):
    """``D = phi_l * phi_dot_{l+1} - phi_{l+1} * phi_dot_l``; degree ``2l - 1``."""
    phi = solution_family(T, "phi")
    phd = solution_family(T, "phi_dot")
    l = T.l
    return phi[l] * phd[l + 1] - phi[l + 1] * phd[l]


def transmission_spectrum(T, tol=None):
    return poly_roots(char_poly_transmission(T), tol)


@dataclass(frozen=True)
class BoundaryPolys:
    """Polynomials of the boundary condition ``R0(lam) y_1 - R1(lam) y_0 = 0``.

    ``config="paper"``: ``deg R0 = L``, ``deg R1 = L - 1``.
    ``config="hochstadt"``: ``deg R0 = L - 2``, ``deg R1 = L - 1`` (R0 may be
    the constant 1 when ``L = 2``, or zero-free constant for larger shifts).
    """

    R0: Poly
    R1: Poly
    config: str = "paper"

    def __post_init__(self):
        if self.config not in ("paper", "hochstadt"):
            raise ConfigMismatch(f"unknown boundary configuration {self.config!r}")
        if self.R0.is_zero() or self.R1.is_zero():
            raise ConfigMismatch("boundary polynomials must be nonzero")
        if self.config == "paper":
            if self.R0.degree != self.R1.degree + 1:
                raise ConfigMismatch(
                    f"paper configuration needs deg R0 = deg R1 + 1, got {self.R0.degree}, {self.R1.degree}"
                )
        elif self.R0.degree != self.R1.degree - 1:
            raise ConfigMismatch(
                f"hochstadt configuration needs deg R0 = deg R1 - 1, got {self.R0.degree}, {self.R1.degree}"
            )

    @property
    def size(self):
        """The problem size ``L`` implied by the degrees."""
        return self.R0.degree if self.config == "paper" else self.R1.degree + 1

    @property
    def r0(self):
        return self.R0.leading

    @property
    def r1(self):
        return self.R1.leading

    def leading_E(self):
        """Coefficient of ``lam**(2L-1)`` in ``R0 v1 - R1 v0`` for monic ``v``."""
        L = self.size
        return self.R0.coef(L) - self.R1.coef(L - 1)


def char_poly_polybc(S, B):
    """``E = R0 v_1 - R1 v_0``, zeros are the eigenvalues with boundary ``B``."""
    if B.size != S.l:
        raise ConfigMismatch(f"boundary polynomials imply size {B.size}, coefficients have l = {S.l}")
    v = solution_family(S, "v")
    return B.R0 * v[1] - B.R1 * v[0]


def build_boundary_polys(alpha_dot, beta_dot, alpha_l):
    """``R0 = alpha_l * phi_dot_{l+1}``, ``R1 = phi_dot_l``.

    Leading coefficients are ``r1 = prod_{k<l} 1/alpha_dot_k`` and
    ``r0 = (alpha_l / alpha_dot_l) r1``; raises :class:`DegenerateLeading`
    when they coincide, which happens exactly when ``alpha_l = alpha_dot_l``.
    """
    alpha_dot = _vector(alpha_dot, "alpha_dot")
    beta_dot = _vector(beta_dot, "beta_dot", alpha_dot.size)
    if np.any(alpha_dot == 0):
        raise InvalidInstance("alpha_dot entries must be nonzero")
    if alpha_l == 0:
        raise InvalidInstance("alpha_l must be nonzero")
    if _degenerate(alpha_l, alpha_dot[-1]):
        raise DegenerateLeading("alpha_l equals alpha_dot_l, so r_0 = r_1")
    phd = _forward_symmetric(alpha_dot, beta_dot)
    l = alpha_dot.size
    return BoundaryPolys(complex(alpha_l) * phd[l + 1], phd[l], "paper")


def reduce_transmission(T):
    """Gauge change ``y_{l+1-n} = d_n psi_n`` to the normalized recurrence.

    Returns ``(S, B, d)`` with ``d[n-1] = d_n`` for ``n = 1..l+1``.  The
    coefficient order is reversed: ``b_{l+1-n} = beta_n``.
    """
    l = T.l
    d = np.zeros(l + 1, dtype=complex)
    d[l] = 1.0
    for n in range(l, 0, -1):
        d[n - 1] = d[n] / T.alpha[n - 1]
    a = np.ones(l, dtype=complex)
    for n in range(2, l + 1):
        a[l - n] = d[n - 1] * T.alpha[n - 1] / d[n - 2]
    b = T.beta[::-1]
    S = StandardCoeffs(a, b)
    B = build_boundary_polys(T.alpha_dot, T.beta_dot, T.alpha[-1])
    return S, B, d


def lift_standard(S, alpha_l):
    """Inverse of the gauge change: recover ``(alpha, beta)`` from ``S`` and ``alpha_l``."""
    if alpha_l == 0:
        raise InvalidInstance("alpha_l must be nonzero")
    l = S.l
    d = np.zeros(l + 1, dtype=complex)
    d[l] = 1.0
    d[l - 1] = 1.0 / alpha_l
    for n in range(l, 1, -1):
        d[n - 2] = d[n] / S.a[l - n]
    alpha = d[1:] / d[:-1]
    alpha[-1] = alpha_l  # avoid the round trip through 1 / alpha_l
    beta = S.b[::-1].copy()
    return alpha, beta
