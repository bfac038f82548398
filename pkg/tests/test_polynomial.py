import numpy as np
import pytest

from transinv.errors import AmbiguousClustering, DegreeMismatch, DegreeZero, ZeroLeading
from transinv.polynomial import (
    Poly,
    Spectrum,
    cluster_roots,
    hermite_interpolate,
    laurent_expand,
    poly_coprime,
    poly_eval,
    poly_from_roots,
    poly_roots,
    scaled_derivative,
)

LAM = Poly([0, 1])


def test_zero_polynomial_is_empty():
    z = Poly()
    assert z.degree == -1
    assert len(z.coeffs) == 0
    assert poly_eval(z, 5) == 0


def test_eval_examples():
    assert poly_eval(Poly([-1, 0, 1]), 1) == 0
    assert poly_eval(Poly([1, 2]), 1j) == 1 + 2j


def test_eval_vectorised():
    p = Poly([1, -3, 2])
    z = np.array([0, 1, 2, 1j])
    np.testing.assert_allclose(poly_eval(p, z), 1 - 3 * z + 2 * z**2)


def test_arithmetic():
    assert (LAM - 1) * (LAM + 1) == Poly([-1, 0, 1])
    p = Poly([1, 2, 3])
    d = p - p
    assert d.degree == -1 and len(d.coeffs) == 0
    assert (2 * p).allclose(Poly([2, 4, 6]))
    assert (p / 2).allclose(Poly([0.5, 1, 1.5]))


def test_cancellation_trims_leading_term():
    p = Poly([1, 1, 1])
    q = Poly([0, 0, 1])
    assert (p - q).degree == 1


def test_scaled_derivative():
    assert scaled_derivative(Poly([0, 0, 0, 1]), 2) == Poly([0, 3])
    p = Poly([1, 2, 3, 4])
    assert scaled_derivative(p, 0) == p
    assert scaled_derivative(p, 4).degree == -1


def test_scaled_derivative_matches_taylor_coefficients():
    rng = np.random.default_rng(0)
    p = Poly(rng.normal(size=6) + 1j * rng.normal(size=6))
    xi = 0.3 - 0.7j
    # Taylor coefficients at xi from the shifted polynomial p(xi + t)
    shifted = Poly()
    for k, c in enumerate(p.coeffs):
        term = Poly([c])
        for _ in range(k):
            term = term * Poly([xi, 1])
        shifted = shifted + term
    for nu in range(6):
        assert abs(poly_eval(scaled_derivative(p, nu), xi) - shifted.coef(nu)) < 1e-12


def test_poly_from_roots_examples():
    assert poly_from_roots([1, -1], 2).allclose(Poly([-2, 0, 2]))
    assert poly_from_roots([0], 2 - 1).allclose(LAM)
    p = poly_from_roots([0, np.sqrt(2), -np.sqrt(2)], -1)
    assert p.allclose(Poly([0, 2, 0, -1]), atol=1e-14)


def test_poly_from_roots_zero_leading():
    with pytest.raises(ZeroLeading):
        poly_from_roots([1, 2], 0)


def test_poly_roots_examples():
    r = poly_roots(Poly([-1, 0, 1]))
    np.testing.assert_allclose(np.sort(r.values.real), [-1, 1], atol=1e-14)
    r = poly_roots(LAM / 2)
    assert len(r) == 1 and abs(r.values[0]) < 1e-15
    r = poly_roots(Poly([9, -6, 1]))
    ms = cluster_roots(r)
    assert ms.multiplicities == (2,)
    assert abs(ms.distinct_roots[0] - 3) < 1e-7


def test_poly_roots_constant():
    with pytest.raises(DegreeZero):
        poly_roots(Poly([3]))


def test_coprime():
    assert poly_coprime(LAM, LAM + 1)
    assert not poly_coprime(Poly([-1, 0, 1]), LAM - 1)
    assert poly_coprime(2 * LAM, Poly([1]))


def test_cluster_roots_examples():
    ms = cluster_roots(Spectrum([3, 3]))
    assert ms.multiplicities == (2,)
    ms = cluster_roots(Spectrum([1, -1, 0]))
    assert ms.multiplicities == (1, 1, 1)
    ms = cluster_roots(Spectrum([1, 1 + 1e-12]), tol=1e-9)
    assert ms.multiplicities == (2,)
    assert ms.total == 2


def test_cluster_roots_ambiguous():
    # a chain of points spaced just under the tolerance has no clean split
    with pytest.raises(AmbiguousClustering):
        cluster_roots(Spectrum([0, 0.9e-3, 1.8e-3, 2.7e-3]), tol=1e-3)


def test_laurent_examples():
    np.testing.assert_allclose(laurent_expand(LAM, Poly([-1, 0, 1]), 4), [1, 0, 1, 0])
    b = 2.5 - 1j
    np.testing.assert_allclose(laurent_expand(Poly([1]), LAM - b, 2), [1, b])


def test_laurent_monic_gives_unit_first_coefficient():
    rng = np.random.default_rng(1)
    for l in range(1, 6):
        num = poly_from_roots(rng.normal(size=l - 1), 1.0)
        den = poly_from_roots(rng.normal(size=l), 1.0)
        assert laurent_expand(num, den, 2 * l)[0] == pytest.approx(1.0)


def test_laurent_against_sampled_values():
    # M(lam) = sum_k M_k lam^{-k}; compare a truncated sum at large |lam|
    num = Poly([0.5, -1, 1])
    den = Poly([2, 0.3, 1j, 1])
    M = laurent_expand(num, den, 40)
    z = 7.0 + 3.0j
    series = sum(M[k] * z ** (-(k + 1)) for k in range(40))
    assert abs(series - num(z) / den(z)) < 1e-14


def test_laurent_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        laurent_expand(Poly([0, 0, 1]), Poly([0, 1]), 3)


def test_hermite_simple_nodes():
    # monic cubic with values at three nodes
    target = Poly([2, -1, 0.5, 1])
    nodes = [0.0, 1.0, -2.0]
    data = [[target(x)] for x in nodes]
    p = hermite_interpolate(nodes, [1, 1, 1], data, 3)
    assert p.allclose(target, atol=1e-12)


def test_hermite_with_derivatives():
    target = Poly([1, 2, -3, 0.5, 1j, 1])
    nodes = [0.5, -1.0 + 1j]
    mults = [3, 2]
    data = [[scaled_derivative(target, nu)(x) for nu in range(m)] for x, m in zip(nodes, mults)]
    p = hermite_interpolate(nodes, mults, data, 5)
    assert p.allclose(target, atol=1e-11)
