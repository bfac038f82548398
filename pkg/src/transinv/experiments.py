"""Random instances, round-trip verification and stability sweeps.

Every random draw goes through a ``numpy.random.Generator``; trial ``i`` of a
run seeded with ``seed`` uses ``default_rng([seed, i])`` so any single trial
can be replayed on its own.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import SpectralError
from .forward import (
    BoundaryPolys,
    StandardCoeffs,
    TransmissionInstance,
    char_poly_polybc,
    transmission_spectrum,
    two_spectra_forward,
    weyl_forward,
)
from .polynomial import Poly, poly_coprime, poly_from_roots, poly_roots
from .reduction import (
    SymmetricJacobi,
    solve_hochstadt_mixed,
    solve_poly_bc,
    solve_transmission,
)
from .weyl import solve_two_spectra, solve_weyl

MODES = ("weyl", "two-spectra", "polybc", "transmission", "hochstadt")
MAX_L = 12
LEADING_GAP = 0.25


def _annulus(rng, n, lo=0.5, hi=2.0):
    return rng.uniform(lo, hi, n) * np.exp(2j * np.pi * rng.uniform(size=n))


def _disk(rng, n, radius=2.0):
    return radius * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))


def random_standard(rng, l):
    """``|a_n|`` uniform on [0.5, 2] with uniform phase, ``b_n`` uniform on the disk of radius 2."""
    return StandardCoeffs(_annulus(rng, l - 1), _disk(rng, l))


def random_transmission(rng, l):
    """Same ranges for ``alpha``/``alpha_dot`` and ``beta``/``beta_dot``.

    Draws are rejected until ``|alpha_l - alpha_dot_l| >= 0.25``.
    """
    while True:
        alpha, alpha_dot = _annulus(rng, l), _annulus(rng, l)
        if abs(alpha[-1] - alpha_dot[-1]) >= LEADING_GAP:
            break
    return TransmissionInstance(alpha, _disk(rng, l), alpha_dot, _disk(rng, l))


def _random_poly(rng, degree, radius=1.0):
    return Poly(np.append(_disk(rng, degree, radius), _annulus(rng, 1)), trim=False)


def random_boundary(rng, l, double_root=False):
    """Coprime ``R0`` (degree ``l``) and ``R1`` (degree ``l - 1``) with ``|r0 - r1| >= 0.25``.

    With ``double_root=True`` (needs ``l >= 3``) ``R1`` is built with a
    repeated root.
    """
    if double_root and l < 3:
        raise ValueError("a double root in R1 needs l >= 3")
    while True:
        R0 = _random_poly(rng, l)
        if double_root:
            xi = _disk(rng, 1, 1.5)[0]
            rest = poly_from_roots(_disk(rng, l - 3, 1.5), _annulus(rng, 1)[0])
            R1 = rest * Poly([-xi, 1.0]) * Poly([-xi, 1.0])
        else:
            R1 = _random_poly(rng, l - 1)
        if abs(R0.leading - R1.leading) < LEADING_GAP:
            continue
        if poly_coprime(R0, R1, tol=1e-3):
            return BoundaryPolys(R0, R1, "paper")


def random_symmetric(rng, l):
    """Real symmetric Jacobi matrix: ``A_n`` uniform on [0.5, 2], ``B_n`` uniform on [-2, 2]."""
    return SymmetricJacobi(rng.uniform(0.5, 2.0, l - 1), rng.uniform(-2.0, 2.0, l))


def jacobi_eigenvalues(J):
    """Brute-force eigenvalues of the tridiagonal matrix (Hermitian solver when real)."""
    mat = J.matrix()
    if np.all(mat.imag == 0):
        return np.linalg.eigvalsh(mat.real).astype(complex)
    return np.linalg.eigvals(mat)


def _maxdiff(*pairs):
    return float(max(np.max(np.abs(np.asarray(x) - np.asarray(y)), initial=0.0) for x, y in pairs))


def run_trial(mode, rng, l):
    """One forward-then-inverse trial; returns the max componentwise error."""
    if mode == "weyl":
        S = random_standard(rng, l)
        S2, _ = solve_weyl(weyl_forward(S))
        return _maxdiff((S.a, S2.a), (S.b, S2.b))
    if mode == "two-spectra":
        S = random_standard(rng, l)
        S2 = solve_two_spectra(two_spectra_forward(S))
        return _maxdiff((S.a, S2.a), (S.b, S2.b))
    if mode == "polybc":
        S = random_standard(rng, l)
        B = random_boundary(rng, l)
        S2 = solve_poly_bc(B, poly_roots(char_poly_polybc(S, B)))
        return _maxdiff((S.a, S2.a), (S.b, S2.b))
    if mode == "transmission":
        T = random_transmission(rng, l)
        alpha, beta = solve_transmission(T.alpha_dot, T.beta_dot, T.alpha[-1], transmission_spectrum(T))
        return _maxdiff((T.alpha, alpha), (T.beta, beta))
    if mode == "hochstadt":
        if l % 2 == 0:
            raise ValueError("the mixed-data problem needs odd l")
        m = (l + 1) // 2
        J = random_symmetric(rng, l)
        J2 = solve_hochstadt_mixed(J.A[: m - 1], J.B[: m - 1], jacobi_eigenvalues(J))
        return _maxdiff((J.A, J2.A), (J.B, J2.B))
    raise ValueError(f"unknown mode {mode!r}")


@dataclass
class RoundTripReport:
    mode: str
    l: int
    seed: int
    tol: float
    errors: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def max_error(self):
        finite = [e for e in self.errors if np.isfinite(e)]
        if len(finite) < len(self.errors):
            return float("inf")
        return max(finite, default=0.0)

    @property
    def ok(self):
        return not self.failures

    def as_dict(self):
        return {
            "kind": "report",
            "report": "roundtrip",
            "mode": self.mode,
            "l": self.l,
            "seed": self.seed,
            "trials": len(self.errors),
            "tol": self.tol,
            "max_error": self.max_error,
            "errors": list(self.errors),
            "failures": list(self.failures),
        }


def roundtrip(mode, l, trials, seed, tol=1e-6):
    """Run ``trials`` independent round trips of size ``l``.

    A trial fails if its error exceeds ``tol`` or the inverse raises; the
    failure record keeps the trial index so it can be replayed with
    ``default_rng([seed, index])``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if not 1 <= l <= MAX_L:
        raise ValueError(f"l must be between 1 and {MAX_L}")
    report = RoundTripReport(mode, l, seed, tol)
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        try:
            err = run_trial(mode, rng, l)
        except SpectralError as exc:
            report.errors.append(float("inf"))
            report.failures.append({"trial": i, "seed": [seed, i], "error": type(exc).__name__})
            continue
        report.errors.append(err)
        if not err <= tol:
            report.failures.append({"trial": i, "seed": [seed, i], "error": err})
    return report


# stability -----------------------------------------------------------------

def _kick(rng, values, delta):
    values = np.asarray(values, dtype=complex)
    return values + delta * np.exp(2j * np.pi * rng.uniform(size=values.shape))


class _WeylProblem:
    name = "weyl"

    def __init__(self, S):
        self.M = weyl_forward(S).M

    def solve(self, rng=None, delta=0.0):
        M = self.M.copy()
        if rng is not None:
            M[1:] = _kick(rng, M[1:], delta)
        S, _ = solve_weyl(M)
        return np.concatenate([S.a, S.b])


class _PolyBCProblem:
    name = "polybc"

    def __init__(self, S, B):
        self.B = B
        self.spectrum = poly_roots(char_poly_polybc(S, B)).values

    def solve(self, rng=None, delta=0.0):
        B, lam = self.B, self.spectrum
        if rng is not None:
            lam = _kick(rng, lam, delta)
            B = BoundaryPolys(Poly(_kick(rng, B.R0.coeffs, delta), trim=False),
                              Poly(_kick(rng, B.R1.coeffs, delta), trim=False), B.config)
        S = solve_poly_bc(B, lam)
        return np.concatenate([S.a, S.b])


class _TransmissionProblem:
    name = "transmission"

    def __init__(self, T):
        self.T = T
        self.spectrum = transmission_spectrum(T).values

    def solve(self, rng=None, delta=0.0):
        T, lam = self.T, self.spectrum
        ad, bd, al = T.alpha_dot, T.beta_dot, T.alpha[-1]
        if rng is not None:
            lam = _kick(rng, lam, delta)
            ad = _kick(rng, ad, delta)
            bd = _kick(rng, bd, delta)
            al = _kick(rng, [al], delta)[0]
        alpha, beta = solve_transmission(ad, bd, al, lam)
        return np.concatenate([alpha, beta])


def stability_problem(instance, boundary=None):
    if isinstance(instance, TransmissionInstance):
        return _TransmissionProblem(instance)
    if boundary is not None:
        return _PolyBCProblem(instance, boundary)
    return _WeylProblem(instance)


@dataclass
class StabilityRow:
    delta: float
    errors: list
    outside: list

    @property
    def ratios(self):
        if self.delta == 0:
            return []
        return [e / self.delta for e in self.errors]

    @property
    def mean_ratio(self):
        r = self.ratios
        return float(np.mean(r)) if r else float("nan")

    @property
    def max_error(self):
        return max(self.errors, default=float("nan"))


def stability(instance, deltas, trials, seed, boundary=None):
    """Perturb the data of one instance and tabulate the change in recovered coefficients.

    The data are the Weyl coefficients ``M_2..M_{2l}`` for a standard
    instance, the eigenvalues plus all coefficients of ``R0``, ``R1`` when
    ``boundary`` is given, and the eigenvalues plus ``alpha_dot``,
    ``beta_dot``, ``alpha_l`` for a transmission instance.  Each datum moves
    by exactly ``delta`` in a uniformly random direction.  Errors are
    measured against the reconstruction from unperturbed data, so
    ``delta = 0`` gives zero.  Failed solves are counted as outside the
    local solvability ball instead of aborting the sweep.
    """
    problem = stability_problem(instance, boundary)
    base = problem.solve()
    rows = []
    for k, delta in enumerate(deltas):
        errors, outside = [], []
        for i in range(trials):
            rng = np.random.default_rng([seed, k, i])
            try:
                rec = problem.solve(rng, float(delta))
            except SpectralError as exc:
                outside.append({"trial": i, "error": type(exc).__name__})
                continue
            errors.append(float(np.max(np.abs(rec - base))))
        rows.append(StabilityRow(float(delta), errors, outside))
    return problem.name, rows


def ratio_spread(rows):
    """Largest over smallest mean ratio across rows with nonzero delta."""
    means = [r.mean_ratio for r in rows if r.delta > 0 and r.errors]
    if not means or min(means) == 0:
        return float("inf")
    return max(means) / min(means)


def reference_instances():
    """Fixed real ``l = 5`` instances for the stability sweeps.

    Random complex instances of this size often have Lipschitz constants of
    ``1e4``..``1e6``, which puts ``delta = 1e-2`` outside the region where the
    error is linear in ``delta``; these moderate instances keep the whole
    range ``1e-4``..``1e-2`` inside it.
    """
    S = StandardCoeffs([1.0, 1.0, 1.0, 1.0], [0.5, -0.5, 1.0, -1.0, 0.0])
    B = BoundaryPolys(Poly([0.0, 1.0, 0.0, 0.0, 0.0, 2.0]), Poly([1.0, 0.0, 0.0, 0.0, 1.0]))
    T = TransmissionInstance([1.0, 1.0, 1.0, 1.0, 2.0], [0.0, 0.5, -0.5, 1.0, -1.0],
                             [1.0] * 5, [0.0] * 5)
    return S, B, T


__all__ = [
    "MODES",
    "MAX_L",
    "random_standard",
    "random_transmission",
    "random_boundary",
    "random_symmetric",
    "jacobi_eigenvalues",
    "run_trial",
    "roundtrip",
    "RoundTripReport",
    "stability",
    "StabilityRow",
    "ratio_spread",
    "reference_instances",
]
