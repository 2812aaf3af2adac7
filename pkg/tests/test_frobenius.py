import numpy as np
import pytest

from heunqes import canonical as cn
from heunqes.canonical import GenericCoefficients, Point
from heunqes.frobenius import (NoIndicialEquation, ResonanceError, indicial_exponents,
                               residual_max, series_coefficients, verify_truncation)
from heunqes.solvability import analyze
from heunqes.specmat import quasi_polynomials
from heunqes.specmat.builder import QuasiPolynomial
from heunqes.su11 import GeneralizedPolynomial as GP, apply_operator

from draws import qes_params, random_params


def test_kummer_series():
    # z y'' + (b - z) y' - a y = 0: coefficients (a)_k / ((b)_k k!)
    a, b = 0.3 + 0.1j, 1.7
    c = GenericCoefficients(a2=1, a5=-1, a6=b, a8=-a)
    s = series_coefficients(c, 0, c.a8, 8)
    expect, term = [], 1.0
    for k in range(8):
        expect.append(term)
        term *= (a + k) / ((b + k) * (k + 1))
    np.testing.assert_allclose(s.coeffs, expect, rtol=1e-13)


def test_second_kummer_exponent():
    a, b = 0.3, 1.7
    c = GenericCoefficients(a2=1, a5=-1, a6=b, a8=-a)
    r = indicial_exponents(c, Point.ZERO)
    assert sorted(x.real for x in r.exponents) == pytest.approx(sorted([0, 1 - b]))


@pytest.mark.parametrize("family", ["GHE", "CHE", "BHE", "DHE"])
def test_series_satisfies_operator(family):
    p = random_params(family, np.random.default_rng(4))
    c = p.to_generic()
    _, rep = analyze(c)
    rho = indicial_exponents(c, Point.ZERO).exponents[0]
    n = 12
    s = series_coefficients(c, rho, c.a8, n)
    r = apply_operator(c, s)
    # only the last few powers are affected by truncating the series
    low = r.coeffs[: n - 3]
    assert np.max(np.abs(low)) <= 1e-10 * max(1.0, s.max_abs()) * c.scale() * n ** 2


def test_non_exponent_rejected():
    c = cn.BiconfluentHeunParams(0.5, 1, 2, 3).to_generic()
    with pytest.raises(ValueError, match="local exponent"):
        series_coefficients(c, 0.123, c.a8, 5)


def test_resonance_detected():
    # z y'' + y' + (1 - 1/z) y: exponents +-1, and rho = -1 is resonant
    c = GenericCoefficients(a0=0, a1=0, a2=1, a4=0, a5=0, a6=1, a7=0, a8=1, a9=-1)
    r = indicial_exponents(c, Point.ZERO)
    assert sorted(x.real for x in r.exponents) == pytest.approx([-1, 1])
    with pytest.raises(ResonanceError):
        series_coefficients(c, -1, c.a8, 6)


def test_no_indicial_equation():
    the = cn.TriconfluentHeunParams(1, 2, 3).to_generic()
    with pytest.raises(NoIndicialEquation):
        indicial_exponents(the, Point.ZERO)
    che = cn.ConfluentHeunParams(0, 1, 1, 1, 0).to_generic()
    with pytest.raises(NoIndicialEquation):
        indicial_exponents(che, "infinity")


def test_irregular_infinity_exponent_is_minus_two_sigma():
    p = cn.BiconfluentHeunParams(0.4, 1.1, 2.3, 0.7)
    c = p.to_generic()
    r = indicial_exponents(c, Point.INFINITY)
    assert r.exponents == [pytest.approx(c.a7 / c.a4)]
    _, rep = analyze(c)
    sigma = (-c.a7 / (2 * c.a4))
    assert r.exponents[0] == pytest.approx(-2 * sigma)


@pytest.mark.parametrize("family", ["GHE", "CHE", "BHE", "DHE"])
def test_truncation_and_negative_control(family):
    p = qes_params(family, np.random.default_rng(9), 4)
    c = p.to_generic()
    _, rep = analyze(c)
    inst = next(i for i in rep.instances if i.N == 4)
    for qp in quasi_polynomials(c, inst):
        assert verify_truncation(c, qp).max_relative <= 1e-8
        assert residual_max(c, qp) <= 1e-9
        bad = QuasiPolynomial(qp.tau2, qp.coeffs, qp.eigen + 1e-2)
        assert residual_max(c, bad) > 1e-9
        assert verify_truncation(c, bad).max_relative > 1e-8


def test_truncation_extra_must_be_positive():
    qp = QuasiPolynomial(0, [1.0], 0)
    with pytest.raises(ValueError):
        verify_truncation(cn.GeneralHeunParams(1, 1, 0, 1, 0, 2).to_generic(), qp, extra=0)
