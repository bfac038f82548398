"""Dense complex polynomials, root finding, root clustering and Laurent expansion.

Polynomials are stored by ascending coefficients: ``coeffs[k]`` multiplies
``lam**k``.  The zero polynomial has an empty coefficient array.  Degrees in
this package never exceed a few dozen, so everything is plain O(n^2) numpy.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import AmbiguousClustering, DegreeMismatch, DegreeZero, ZeroLeading

TRIM_RTOL = 1e-13
CLUSTER_RTOL = 1e-8


def _as_complex(values):
    arr = np.array(values, dtype=complex).ravel()
    return arr


def magnitude_scale(values):
    """Largest absolute value in ``values`` (0 for an empty sequence)."""
    arr = np.asarray(values)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


class Poly:
    """Immutable dense polynomial with complex coefficients in ascending order.

    Trailing coefficients with magnitude at most ``1e-13`` times the largest
    coefficient magnitude are dropped, so cancellation in subtraction cannot
    inflate the degree.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=(), trim=True):
        c = _as_complex(coeffs)
        if trim and c.size:
            thresh = TRIM_RTOL * magnitude_scale(c)
            k = c.size
            while k > 0 and abs(c[k - 1]) <= thresh:
                k -= 1
            c = c[:k]
        c = c.copy()
        c.setflags(write=False)
        self._coeffs = c

    @classmethod
    def monomial(cls, k, c=1.0):
        coeffs = np.zeros(k + 1, dtype=complex)
        coeffs[k] = c
        return cls(coeffs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return self._coeffs.size - 1

    @property
    def leading(self):
        return self._coeffs[-1] if self._coeffs.size else 0j

    def is_zero(self):
        return self._coeffs.size == 0

    def coef(self, k):
        """Coefficient of ``lam**k``; zero when ``k`` is out of range."""
        if 0 <= k < self._coeffs.size:
            return self._coeffs[k]
        return 0j

    def __call__(self, z):
        return poly_eval(self, z)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return scale(self, 1.0 / c)

    def __neg__(self):
        return scale(self, -1.0)

    def __len__(self):
        return self._coeffs.size

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def allclose(self, other, rtol=1e-12, atol=1e-12):
        """Coefficientwise comparison after padding to a common length."""
        n = max(len(self), len(other))
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: len(self)] = self._coeffs
        b[: len(other)] = other.coeffs
        return bool(np.allclose(a, b, rtol=rtol, atol=atol))

    def __repr__(self):
        return f"Poly({np.array2string(self._coeffs, precision=6)})"


def _coerce(x):
    return x if isinstance(x, Poly) else Poly([x])


def poly_eval(p, z):
    """Horner evaluation; works for scalar or array ``z``."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in p.coeffs[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def add(p, q):
    n = max(len(p), len(q))
    out = np.zeros(n, dtype=complex)
    out[: len(p)] += p.coeffs
    out[: len(q)] += q.coeffs
    return Poly(out)


def sub(p, q):
    n = max(len(p), len(q))
    out = np.zeros(n, dtype=complex)
    out[: len(p)] += p.coeffs
    out[: len(q)] -= q.coeffs
    return Poly(out)


def mul(p, q):
    if p.is_zero() or q.is_zero():
        return Poly()
    return Poly(np.convolve(p.coeffs, q.coeffs))


def scale(p, c):
    return Poly(p.coeffs * complex(c))


def scaled_derivative(p, nu):
    """Return ``(1/nu!) d^nu p / dlam^nu``.

    The scaled derivative keeps integer binomial weights, so the coefficient
    of ``lam**k`` in the result is ``comb(k + nu, nu) * p[k + nu]``.
    """
    if nu < 0:
        raise ValueError("derivative order must be nonnegative")
    if nu == 0:
        return p
    c = p.coeffs
    if c.size <= nu:
        return Poly()
    weights = np.array([comb(k + nu, nu) for k in range(c.size - nu)], dtype=float)
    return Poly(c[nu:] * weights)


@dataclass(frozen=True)
class Spectrum:
    """Multiset of complex eigenvalues; repeated values encode multiplicity.

    ``tol`` is the absolute clustering tolerance used when the multiset has to
    be split into distinct values.  ``None`` means the default
    ``1e-8 * max(1, max|value|)``.
    """

    values: np.ndarray
    tol: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", _as_complex(self.values))
        if self.tol is not None and self.tol < 0:
            raise ValueError("clustering tolerance must be nonnegative")

    def __len__(self):
        return self.values.size

    def __iter__(self):
        return iter(self.values)

    @property
    def cluster_tol(self):
        if self.tol is not None:
            return self.tol
        return CLUSTER_RTOL * max(1.0, magnitude_scale(self.values))

    def sorted(self):
        """Values sorted by real part, then imaginary part."""
        return sort_complex(self.values)


@dataclass(frozen=True)
class RootMultiset:
    distinct_roots: np.ndarray
    multiplicities: tuple = field(default=())

    def __len__(self):
        return len(self.multiplicities)

    @property
    def total(self):
        return int(sum(self.multiplicities))


def sort_complex(values, decimals=9):
    """Sort by real part then imaginary part, robust to round-off in the keys."""
    v = np.asarray(values, dtype=complex)
    order = np.lexsort((np.round(v.imag, decimals), np.round(v.real, decimals)))
    return v[order]


def poly_from_roots(roots, leading=1.0):
    """``leading * prod(lam - r)`` over the roots, honoring repeats."""
    if leading == 0:
        raise ZeroLeading("leading coefficient must be nonzero")
    values = roots.values if isinstance(roots, Spectrum) else _as_complex(roots)
    c = np.array([1.0 + 0j])
    for r in values:
        c = np.convolve(c, [-r, 1.0])
    # no trimming: the degree is fixed by the number of roots
    return Poly(c * complex(leading), trim=False)


def poly_roots(p, tol=None):
    """All roots of ``p`` with multiplicity.

    Eigenvalues of the companion matrix of the monic normalization (LAPACK
    balances it), then one guarded Newton step per root.  The step is kept
    only if it reduces ``|p|``; near multiple roots Newton can overshoot.
    """
    if p.degree < 1:
        raise DegreeZero("constant polynomial has no roots")
    c = p.coeffs / p.leading
    n = p.degree
    if n == 1:
        roots = np.array([-c[0]])
    else:
        comp = np.zeros((n, n), dtype=complex)
        comp[1:, :-1] = np.eye(n - 1)
        comp[:, -1] = -c[:-1]
        roots = np.linalg.eigvals(comp)
    dp = scaled_derivative(p, 1)
    polished = roots.copy()
    for j, r in enumerate(roots):
        fr = poly_eval(p, r)
        dfr = poly_eval(dp, r)
        if dfr == 0:
            continue
        cand = r - fr / dfr
        if abs(poly_eval(p, cand)) < abs(fr):
            polished[j] = cand
    return Spectrum(sort_complex(polished), tol)


def cluster_roots(s, tol=None):
    """Greedy clustering of a spectrum into distinct roots with multiplicities.

    A value joins the first cluster whose members all lie within ``tol``;
    otherwise it opens a new cluster.  Representatives are cluster means.
    Raises :class:`AmbiguousClustering` if two means end up within ``2*tol``.
    """
    values = s.values if isinstance(s, Spectrum) else _as_complex(s)
    if tol is None:
        tol = s.cluster_tol if isinstance(s, Spectrum) else Spectrum(values).cluster_tol
    if tol <= 0:
        raise ValueError("clustering tolerance must be positive")
    clusters = []
    for z in values:
        for members in clusters:
            if all(abs(z - w) <= tol for w in members):
                members.append(z)
                break
        else:
            clusters.append([z])
    means = np.array([np.mean(m) for m in clusters], dtype=complex)
    for i in range(means.size):
        for j in range(i + 1, means.size):
            if abs(means[i] - means[j]) <= 2 * tol:
                raise AmbiguousClustering(
                    f"cluster means {means[i]} and {means[j]} closer than 2*tol={2 * tol:g}"
                )
    return RootMultiset(means, tuple(len(m) for m in clusters))


def poly_coprime(p, q, tol=None):
    """True iff no root of ``p`` lies within ``tol`` of a root of ``q``.

    Constants have no roots and are coprime to anything nonzero.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("coprimality is undefined for the zero polynomial")
    if p.degree < 1 or q.degree < 1:
        return True
    rp = poly_roots(p).values
    rq = poly_roots(q).values
    if tol is None:
        tol = CLUSTER_RTOL * max(1.0, magnitude_scale(rp), magnitude_scale(rq))
    dist = np.abs(rp[:, None] - rq[None, :])
    return bool(np.all(dist > tol))


def laurent_expand(num, den, K):
    """First ``K`` coefficients of ``num/den = sum_k M_k lam**-k``.

    Requires ``deg num == deg den - 1``.  With ``t = 1/lam`` the quotient is
    ``t * N(t) / D(t)`` where ``N``, ``D`` are the reversed coefficient
    sequences, and ``N/D`` is expanded by power-series division.
    """
    if den.is_zero():
        raise DegreeMismatch("denominator is the zero polynomial")
    if num.degree != den.degree - 1:
        raise DegreeMismatch(
            f"need deg(num) = deg(den) - 1, got {num.degree} and {den.degree}"
        )
    n_rev = num.coeffs[::-1]
    d_rev = den.coeffs[::-1]
    out = np.zeros(K, dtype=complex)
    for j in range(K):
        acc = n_rev[j] if j < n_rev.size else 0j
        upper = min(j, d_rev.size - 1)
        for i in range(1, upper + 1):
            acc -= d_rev[i] * out[j - i]
        out[j] = acc / d_rev[0]
    return out


def hermite_interpolate(nodes, multiplicities, data, degree):
    """Monic polynomial of the given degree matching scaled derivatives.

    ``data[n][nu]`` is the prescribed value of ``f^<nu>(nodes[n])`` for
    ``nu < multiplicities[n]``; the multiplicities must add up to ``degree``.
    The monic part ``lam**degree`` is subtracted from the data and the
    remainder is built by Newton divided differences on the confluent node
    sequence, where a node repeated ``nu + 1`` times contributes the scaled
    derivative ``f^<nu>`` directly.
    """
    if sum(multiplicities) != degree:
        raise ValueError("multiplicities must sum to the interpolation degree")
    monic = Poly.monomial(degree)
    z = []
    targets = []
    for xi, m, vals in zip(nodes, multiplicities, data):
        local = [vals[nu] - poly_eval(scaled_derivative(monic, nu), xi) for nu in range(m)]
        z.extend([xi] * m)
        targets.append(local)
    n = len(z)
    if n == 0:
        return monic
    z = np.array(z, dtype=complex)
    # table[i] holds f[z_i .. z_{i+k}] after pass k
    first_of = {}
    table = np.zeros(n, dtype=complex)
    pos = 0
    for block, (xi, m) in enumerate(zip(nodes, multiplicities)):
        for r in range(m):
            first_of[pos + r] = (block, pos)
            table[pos + r] = targets[block][0]
        pos += m
    coef = [table[0]]
    for k in range(1, n):
        new = np.zeros(n - k, dtype=complex)
        for i in range(n - k):
            if z[i + k] == z[i]:
                block, _ = first_of[i]
                new[i] = targets[block][k]
            else:
                new[i] = (table[i + 1] - table[i]) / (z[i + k] - z[i])
        table = new
        coef.append(table[0])
    q = Poly()
    basis = Poly([1.0])
    for k in range(n):
        q = q + basis * coef[k]
        basis = basis * Poly([-z[k], 1.0])
    return monic + q
