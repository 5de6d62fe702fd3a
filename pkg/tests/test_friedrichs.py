import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from critline import friedrichs as F
from critline import hcatalog as H
from critline.errors import IndeterminateError, PreconditionError

R075, _ = H.get("rational-075")


def toy(lams, weights=None, theta=None, c_shift=None):
    n = len(lams)
    return F.DiscreteModel.from_entries(lams, weights if weights is not None else np.ones(n),
                                        theta if theta is not None else np.ones(n), c_shift)


# model

def test_build_model_rational():
    m = F.build_model(R075, -1, 10.0, 8)
    assert m.lambda_points.tolist() == [-0.1875]
    assert m.c_shift == 1.0
    assert abs(m.theta_vec[-1] - math.sqrt(0.5)) <= 1e-13
    with pytest.raises(PreconditionError):
        F.build_model(R075, 1, 10.0, 8)


def test_model_validation():
    with pytest.raises(PreconditionError):
        toy([-1.0, -2.0], c_shift=-0.5)
    with pytest.raises(PreconditionError):
        toy([-1.0, -2.0], weights=[1.0, 0.0])
    with pytest.raises(PreconditionError):
        toy([-1.0, -2.0], theta=[1.0])


# secular equation

def test_secular_two_entries():
    roots = F.secular_roots(toy([-1.0, -2.0]))
    assert np.allclose(roots, [-1.5], atol=1e-15)


def test_secular_three_entries():
    # F = 0 is p'(lambda) = 0 for p = (l + 1)(l + 2)(l + 3): 3 l^2 + 12 l + 11 = 0
    want = np.sort(np.roots([3.0, 12.0, 11.0]).real)
    assert np.allclose(want, [-2 - 1 / math.sqrt(3), -2 + 1 / math.sqrt(3)], atol=1e-15)
    roots = F.secular_roots(toy([-1.0, -2.0, -3.0]))
    assert np.max(np.abs(np.sort(roots) - want)) <= 1e-14


def test_secular_all_theta_zero():
    with pytest.raises(IndeterminateError):
        F.secular_roots(toy([-1.0, -2.0], theta=[0.0, 0.0]))


def test_secular_window():
    m = toy([-1.0, -2.0, -3.0])
    roots = F.secular_roots(m, window=(-2.0 + 1e-9, 0.0))
    assert roots.size == 1 and roots[0] > -2
    with pytest.raises(PreconditionError):
        F.secular_roots(m, window=(-2.0, 0.0))


# generalized eigenproblem

def test_hermitian_eig_diagonal():
    vals, _ = F.hermitian_eig(np.diag([3.0, 1.0, 2.0]), np.eye(3))
    assert vals.tolist() == [1.0, 2.0, 3.0]


def test_hermitian_eig_two_by_two():
    a = np.array([[2.0, 1.0], [1.0, 3.0]])
    b = np.array([[2.0, 0.5], [0.5, 1.0]])
    # det(A - l B) = (2 - 2l)(3 - l) - (1 - 0.5 l)^2 = 1.75 l^2 - 7 l + 5
    qa, qb, qc = 1.75, -7.0, 5.0
    disc = math.sqrt(qb * qb - 4 * qa * qc)
    want = sorted([(-qb - disc) / (2 * qa), (-qb + disc) / (2 * qa)])
    vals, vecs = F.hermitian_eig(a, b)
    assert np.max(np.abs(vals - want)) <= 1e-12
    assert np.allclose(vecs.T @ b @ vecs, np.eye(2), atol=1e-12)


def test_hermitian_eig_complex():
    rng = np.random.default_rng(5)
    x = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    a = x + x.conj().T
    y = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    b = y @ y.conj().T + 6 * np.eye(6)
    vals, _ = F.hermitian_eig(a, b)
    # oracle: eigenvalues of B^{-1} A are the same set
    ref = np.sort(np.linalg.eigvals(np.linalg.solve(b, a)).real)
    assert np.max(np.abs(vals - ref)) <= 1e-10


def test_hermitian_eig_singular_gram():
    with pytest.raises(PreconditionError):
        F.hermitian_eig(np.eye(2), np.diag([1.0, 0.0]))


# constrained spectrum

def test_constrained_toy():
    res = F.constrained_spectrum(toy([-1.0, -2.0]))
    assert np.allclose(res.eigenvalues, [-1.5], atol=1e-14)
    res = F.constrained_spectrum(toy([-1.0, -2.0, -3.0]))
    assert np.max(np.abs(res.eigenvalues - F.secular_roots(toy([-1.0, -2.0, -3.0])))) <= 1e-13


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-50, 0.5), min_size=2, max_size=30, unique=True),
       st.integers(0, 2 ** 31))
def test_secular_matches_constrained(lams, seed):
    lams = np.array(lams)
    if np.min(np.diff(np.sort(lams))) < 1e-3:
        return
    rng = np.random.default_rng(seed)
    w = rng.uniform(0.1, 2.0, lams.size)
    th = rng.uniform(0.2, 2.0, lams.size) * np.exp(2j * math.pi * rng.uniform(size=lams.size))
    m = toy(lams, w, th)
    sec = F.secular_roots(m)
    eig = F.constrained_spectrum(m).eigenvalues
    assert sec.size == eig.size == lams.size - 1
    assert np.max(np.abs(sec - eig) / np.maximum(1, np.abs(sec))) <= 1e-10
    # interlacing with the entries
    d = np.sort(lams)
    assert np.all((sec > d[:-1]) & (sec < d[1:]))


def test_kernel_basis_is_orthonormal_and_annihilated():
    m = F.build_model(R075, -1, 10.0, 8)
    basis = F.kernel_basis(m)
    assert basis.shape == (len(m), len(m) - 1)
    g = np.array([[m.h1_inner(basis[:, j], basis[:, i]) for j in range(basis.shape[1])]
                  for i in range(basis.shape[1])])
    assert np.max(np.abs(g - np.eye(len(m) - 1))) <= 1e-12
    assert max(abs(m.pairing(basis[:, j])) for j in range(basis.shape[1])) <= 1e-12


def test_rational_model_spectrum_is_real_and_agrees():
    m = F.build_model(R075, -1, 20.0, 8)
    res = F.constrained_spectrum(m)
    assert np.isrealobj(res.eigenvalues)
    sec = F.secular_roots(m)
    assert np.max(np.abs(sec - res.eigenvalues) / np.maximum(1, np.abs(sec))) <= 1e-10
    assert res.max_residual() <= 1e-9


# Riesz map

def test_riesz_examples():
    m = toy([-1.0, -2.0, -3.0], theta=[1.0, 2.0, 1j])
    u = F.riesz_inverse(m, m.theta_vec)
    assert np.allclose(u, m.theta_vec / (m.c_shift - m.lambdas), atol=1e-15)
    back = (m.c_shift - m.lambdas) * u
    assert np.max(np.abs(back - m.theta_vec)) <= 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_riesz_contraction(seed):
    m = F.build_model(R075, -1, 10.0, 8)
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(len(m)) + 1j * rng.standard_normal(len(m))
    u = F.riesz_inverse(m, f)
    assert abs(m.h1_inner(u, u)) <= abs(m.h0_inner(f, f)) * (1 + 1e-12)


# lambda to w

def test_map_lambda_to_w():
    assert F.map_lambda_to_w(-0.25) == (0.5,)
    a, b = F.map_lambda_to_w(-1.25)
    assert abs(a - (0.5 + 1j)) <= 1e-15 and abs(b - (0.5 - 1j)) <= 1e-15
    assert sorted(x.real for x in F.map_lambda_to_w(-3 / 16)) == [0.25, 0.75]


@settings(max_examples=50, deadline=None)
@given(st.floats(-1e4, 1e4))
def test_map_lambda_to_w_solves(lam):
    for w in F.map_lambda_to_w(lam):
        assert abs(w * (w - 1) - lam) <= 1e-12 * max(1.0, abs(lam))


# backends

def test_backends_agree():
    pytest.importorskip("critline._ext")
    m = F.build_model(R075, -1, 20.0, 8)
    a = F.secular_roots(m, backend="python")
    b = F.secular_roots(m, backend="compiled")
    assert np.max(np.abs(a - b)) <= 1e-12
    rng = np.random.default_rng(1)
    x = rng.standard_normal((20, 20))
    s = x + x.T
    va, _ = F.hermitian_eig(s, np.eye(20), backend="python")
    vb, _ = F.hermitian_eig(s, np.eye(20), backend="compiled")
    assert np.max(np.abs(va - vb)) <= 1e-12


# invariants

@pytest.fixture(scope="module")
def xi_model():
    spec, eta = H.get("xi2s")
    return F.build_model(spec, eta, 20.0, 8, check=False)


def test_line_only_model_spectrum_on_line(xi_model):
    assert xi_model.lambda_points.size == 0
    res = F.constrained_spectrum(xi_model)
    assert np.all(res.eigenvalues < -0.25)
    assert all(abs(w[0].real - 0.5) == 0 for w in res.mapped_w)


@pytest.mark.parametrize("label", ["rational-075", "rational-sigma5", "epstein-101"])
def test_real_pairs_inside_segment(label):
    spec, eta = H.get(label)
    m = F.build_model(spec, eta, 20.0, 8)
    vals = F.constrained_spectrum(m).eigenvalues
    sn = spec.sigma_max
    for mu in vals[vals > -0.25]:
        hi, lo = (w.real for w in F.map_lambda_to_w(mu))
        assert 1 - sn - 1e-12 <= lo and hi <= sn + 1e-12


def test_dual_pairing_bound(xi_model):
    m = xi_model
    gap = m.c_shift - m.lambdas
    rng = np.random.default_rng(9)
    for _ in range(50):
        f = rng.standard_normal(len(m)) + 1j * rng.standard_normal(len(m))
        g = rng.standard_normal(len(m)) + 1j * rng.standard_normal(len(m))
        hm1 = math.sqrt(float(np.sum(m.weights * np.abs(f) ** 2 / gap)))
        h1 = math.sqrt(abs(m.h1_inner(g, g)))
        assert abs(m.h0_inner(f, g)) <= hm1 * h1 * (1 + 1e-12)


def test_riesz_contraction_100(xi_model):
    m = xi_model
    rng = np.random.default_rng(10)
    for _ in range(100):
        f = rng.standard_normal(len(m)) + 1j * rng.standard_normal(len(m))
        u = F.riesz_inverse(m, f, n_checks=1)
        assert abs(m.h1_inner(u, u)) <= abs(m.h0_inner(f, f)) * (1 + 1e-12)


def test_c_shift_invariance(xi_model):
    m = xi_model
    a = F.constrained_spectrum(m).eigenvalues
    doubled = F.DiscreteModel(m.lambda_line, m.line_weights, m.lambda_points, m.theta_vec,
                              2 * m.c_shift, m.eta, lambda_closure=m.lambda_closure)
    b = F.constrained_spectrum(doubled).eigenvalues
    assert np.max(np.abs(a - b) / np.maximum(1, np.abs(a))) <= 1e-9
