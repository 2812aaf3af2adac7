import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from heunqes import canonical as cn
from heunqes.specmat import (DISCREPANCIES, ClosureError, InvariantMatrix,
                             NumericalFailure, build_invariant_matrix,
                             eigen_tridiagonal, published_matrix, quasi_polynomials)
from heunqes.specmat.builder import leading_normalized
from heunqes.specmat.published import (compare, generic_counterpart, published_instance,
                                       unregistered)
from heunqes.solvability import analyze
from heunqes.su11 import GeneralizedPolynomial as GP, apply_operator
from heunqes.tolerances import DEFAULT

from draws import qes_params


def _instance(p, N):
    _, rep = analyze(p.to_generic())
    return next(i for i in rep.instances if i.N == N)


@pytest.mark.parametrize("family", ["GHE", "CHE", "BHE", "DHE"])
def test_matrix_columns_are_operator_images(family):
    rng = np.random.default_rng(5)
    p = qes_params(family, rng, 4)
    c = p.to_generic()
    inst = _instance(p, 4)
    M = build_invariant_matrix(c, inst.sigma, inst.tau, 4)
    dense = M.dense() + M.shift * np.eye(5)
    for k in range(5):
        img = apply_operator(c, GP.monomial(2 * inst.tau + k))
        col = np.zeros(5, complex)
        for pw, v in zip(img.powers(), img.coeffs):
            j = int(round((pw - 2 * inst.tau).real))
            if 0 <= j <= 4:
                col[j] += v
            else:
                assert abs(v) <= 1e-9 * c.scale() * (k + 3) ** 2
        np.testing.assert_allclose(dense[:, k], col, atol=1e-12 * c.scale() * 50)


def test_non_instance_rejected():
    p = qes_params("BHE", np.random.default_rng(2), 3)
    inst = _instance(p, 3)
    with pytest.raises((ClosureError, ValueError)):
        build_invariant_matrix(p.to_generic(), inst.sigma + 0.3, inst.tau, 3)


def test_reversed_and_dense():
    M = InvariantMatrix(2, [0, 1, 2], [1, 2], [3, 4, 5], [6, 7])
    R = M.reversed()
    np.testing.assert_array_equal(R.dense(), M.dense()[::-1, ::-1])
    assert M.norm_inf() == 1 + 4 + 7
    with pytest.raises(ValueError):
        InvariantMatrix(2, [0, 1, 2], [1], [3, 4, 5], [6, 7])


def test_leading_normalized():
    v = leading_normalized(np.array([0, 2, 4j]))
    np.testing.assert_allclose(v, [0, 1, 2j])
    assert leading_normalized(np.zeros(3)) is None


# -- eigen-solver ---------------------------------------------------------------


def _random_bands(rng, n):
    cz = lambda k: rng.normal(size=k) + 1j * rng.normal(size=k)
    return cz(n - 1), cz(n), cz(n - 1)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12))
def test_eigen_matches_numpy(seed, n):
    sub, diag, sup = _random_bands(np.random.default_rng(seed), n)
    M = InvariantMatrix(n - 1, np.arange(n), sub, diag, sup)
    pairs = eigen_tridiagonal(M, seed=seed)
    ref = np.linalg.eigvals(M.dense())
    got = np.array([p.value for p in pairs])
    for lam in ref:
        assert np.min(np.abs(got - lam)) <= 1e-8 * max(1, abs(lam))
    bound = 1e-9 * max(1, M.norm_inf())
    for p in pairs:
        r = M.dense() @ p.vector - p.value * p.vector
        assert np.max(np.abs(r)) <= bound
        assert np.max(np.abs(p.vector)) == pytest.approx(1.0)


def test_eigen_sorted_and_seed_stable():
    sub, diag, sup = _random_bands(np.random.default_rng(0), 7)
    a = eigen_tridiagonal((sub, diag, sup), seed=1)
    b = eigen_tridiagonal((sub, diag, sup), seed=1)
    assert [p.value for p in a] == [p.value for p in b]
    keys = [(round(p.value.real, 9), round(p.value.imag, 9)) for p in a]
    assert keys == sorted(keys)


def test_eigen_defective_jordan_block():
    # nilpotent 3x3 Jordan block: triple zero eigenvalue, one eigenvector
    pairs = eigen_tridiagonal(([0, 0], [0, 0, 0], [1, 1]))
    assert all(abs(p.value) < 1e-4 for p in pairs)
    assert all(p.residual <= 1e-9 for p in pairs)


def test_eigen_failure_is_reported(monkeypatch):
    from heunqes.specmat import eigen

    def broken(diag, offprod, z0, maxiter, tol):
        return np.full(len(diag), np.nan + 0j), 0, 0
    monkeypatch.setattr(eigen.kernels, "aberth", broken)
    with pytest.raises(NumericalFailure):
        eigen_tridiagonal(([1], [1, 2], [1]))


# -- published displays ---------------------------------------------------------


CASES = [("GHE", "polynomial"), ("GHE", "quasi"), ("CHE", "polynomial"),
         ("CHE", "quasi"), ("BHE", "polynomial"), ("BHE", "quasi"),
         ("DHE", "dhe_i"), ("DHE", "dhe_ii")]


def _display_params(family, mode, N, rng):
    if family == "GHE":
        return qes_params("GHE", rng, N, branch=0 if mode == "polynomial" else 3)
    if family in ("CHE", "BHE"):
        return qes_params(family, rng, N, branch=0 if mode == "polynomial" else 1)
    return qes_params("DHE", rng, N)


@pytest.mark.parametrize("family, mode", CASES)
def test_corrected_display_equals_generic(family, mode):
    rng = np.random.default_rng(13)
    for N in range(7):
        p = _display_params(family, mode, N, rng)
        disp = published_matrix(family, mode, p, N, literal=False)
        gen = generic_counterpart(family, mode, p, N)
        assert compare(disp, gen) == []


@pytest.mark.parametrize("family, mode", CASES)
def test_literal_mismatches_are_registered(family, mode):
    rng = np.random.default_rng(14)
    for N in range(7):
        p = _display_params(family, mode, N, rng)
        mm = compare(published_matrix(family, mode, p, N), generic_counterpart(family, mode, p, N))
        assert unregistered(family, mode, N, mm) == []


def test_every_registered_discrepancy_occurs():
    rng = np.random.default_rng(15)
    seen = set()
    for family, mode in CASES:
        for N in range(7):
            p = _display_params(family, mode, N, rng)
            mm = compare(published_matrix(family, mode, p, N),
                         generic_counterpart(family, mode, p, N))
            for d in DISCREPANCIES:
                if d.family == family and d.mode == mode and any(
                        m.band == d.band and d.rows(m.row, N) for m in mm):
                    seen.add(d.description)
    assert seen == {d.description for d in DISCREPANCIES}


def test_published_instance_validates():
    p = cn.BiconfluentHeunParams(0.5, 1.0, 3.0, 0)
    with pytest.raises(ValueError):
        published_instance("BHE", "polynomial", p, 2)
    with pytest.raises(ValueError):
        published_matrix("DHE", "quasi", p, 2)


# -- solutions ------------------------------------------------------------------


@pytest.mark.parametrize("family", ["GHE", "CHE", "BHE", "DHE"])
def test_quasi_polynomials_verified(family):
    rng = np.random.default_rng(31)
    p = qes_params(family, rng, 5)
    c = p.to_generic()
    sols = quasi_polynomials(c, _instance(p, 5))
    assert len(sols) == 6
    for qp in sols:
        assert qp.verified, (qp.residual_max, qp.truncation_max)
        assert qp.coeffs[0] == pytest.approx(1.0)
        r = apply_operator(c.with_a8(-qp.eigen), GP(qp.tau2, qp.coeffs))
        assert r.max_abs() <= DEFAULT.residual * np.max(np.abs(qp.coeffs))
