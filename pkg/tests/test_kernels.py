"""Compiled and pure-Python kernels must agree."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from critline import kernels, specfun

ext = pytest.importorskip("critline._ext")
py = kernels.backend("python")


def test_backend_names():
    assert kernels.backend("compiled") is ext
    with pytest.raises(ValueError):
        kernels.backend("fortran")
    assert kernels.BACKEND in ("compiled", "python")


@settings(max_examples=30, deadline=None)
@given(st.floats(-5, 5), st.floats(-60, 60), st.floats(0.2, 3.0))
def test_hurwitz_em_agrees(x, y, a):
    s = np.array([complex(x, y), complex(x + 0.5, -y)])
    n = specfun.em_terms(float(np.abs(s).max()), a)
    r1, p1, b1 = py.hurwitz_em(s, a, n, specfun.EM_BERN)
    r2, p2, b2 = ext.hurwitz_em(s, a, n, specfun.EM_BERN)
    assert np.max(np.abs(r1 - r2)) <= 1e-12 * max(1.0, np.abs(r1).max())
    assert np.max(np.abs(p1 - p2)) <= 1e-12 * max(1.0, np.abs(p1).max())
    assert np.allclose(b1, b2, rtol=1e-10, atol=0)


@pytest.mark.parametrize("n", [1, 2, 7, 40])
def test_jacobi_agrees(n):
    rng = np.random.default_rng(n)
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = x + x.conj().T
    v1, q1, _ = py.jacobi_hermitian(a)
    v2, q2, _ = ext.jacobi_hermitian(a)
    ref = np.linalg.eigvalsh(a)
    assert np.max(np.abs(np.sort(v1) - ref)) <= 1e-12 * max(1.0, np.abs(ref).max())
    assert np.max(np.abs(np.sort(v2) - ref)) <= 1e-12 * max(1.0, np.abs(ref).max())
    for vals, vecs in ((v1, q1), (v2, q2)):
        assert np.allclose(a @ vecs, vecs * vals, atol=1e-11 * np.abs(ref).max())


def test_jacobi_sweep_cap():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((12, 12))
    with pytest.raises(RuntimeError):
        py.jacobi_hermitian(x + x.T, max_sweeps=1)
    with pytest.raises(RuntimeError):
        ext.jacobi_hermitian(x + x.T, max_sweeps=1)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 60), st.integers(0, 2 ** 31))
def test_secular_gap_roots_agree(n, seed):
    rng = np.random.default_rng(seed)
    d = np.sort(rng.uniform(-100, 1, n))
    if np.min(np.diff(d)) < 1e-6:
        return
    z = rng.uniform(0.01, 3.0, n)
    gaps = np.arange(n - 1, dtype=np.int64)
    r1 = np.asarray(py.secular_gap_roots(d, z, gaps))
    r2 = np.asarray(ext.secular_gap_roots(d, z, gaps))
    assert np.max(np.abs(r1 - r2)) <= 1e-12 * max(1.0, np.abs(d).max())
    f = (z[None, :] / (d[None, :] - r1[:, None])).sum(axis=1)
    # F is steep near the poles, so measure the residual against its derivative
    fp = (z[None, :] / (d[None, :] - r1[:, None]) ** 2).sum(axis=1)
    assert np.max(np.abs(f / fp)) <= 1e-12 * max(1.0, np.abs(d).max())
