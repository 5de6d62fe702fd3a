import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from critline import hcatalog as H
from critline.errors import IsolationError, PreconditionError, SignConditionError

R075, _ = H.get("rational-075")
XI, _ = H.get("xi2s")


def test_h_eval_examples():
    assert H.h_eval(R075, 0.75) == 0
    assert abs(H.h_eval(XI, 1.0) - math.pi / 6) <= 1e-14
    y2 = H.HFunctionSpec(H.RiemannXi2sY(2.0), (), "y2")
    # xi(0) * 2^0, with xi(0) = 1/2 checked against mpmath in test_specfun
    assert abs(H.h_eval(y2, 0.0) - 0.5) <= 1e-12


def test_c_ratio_examples():
    assert H.c_ratio(R075, 0.5) == 1
    assert abs(H.c_ratio(R075, 2.0) - (-1.4)) <= 1e-15
    assert abs(H.c_ratio(XI, 1.0) - 3 / math.pi) <= 1e-14


def test_theta_examples():
    assert abs(H.theta_eval(R075, -1, 0) - math.sqrt(0.5)) <= 1e-14
    with pytest.raises(SignConditionError):
        H.theta_eval(R075, 1, 0)
    assert abs(H.theta_eval(XI, 1, 1.0) - (1 + 3 / math.pi)) <= 1e-14


def test_residue_examples():
    assert abs(H.residue_at(R075, 0.75).R - (-0.5)) <= 1e-13
    r8 = H.HFunctionSpec(H.Rational((0.8,)), (0.8,), "r8")
    assert abs(H.residue_at(r8, 0.8).R - (-0.6)) <= 1e-13
    double = H.HFunctionSpec(H.Rational((0.8, 0.8)), (0.8,), "double")
    with pytest.raises(IsolationError):
        H.residue_at(double, 0.8)


def test_epstein_residue_at_one():
    spec, eta = H.get("epstein-101")
    r = H.residue_for_eta(spec, eta, 1.0)
    assert r.eta_R > 0
    assert r.imag_defect <= 1e-9


@pytest.mark.parametrize("label", sorted(H.CATALOG))
def test_unit_modulus_and_involution(label):
    spec, _ = H.get(label)
    t = np.linspace(-50, 50, 1001)
    c = H.c_ratio(spec, 0.5 + 1j * t)
    assert np.max(np.abs(np.abs(c) - 1)) <= 1e-10
    rng = np.random.default_rng(3)
    s = rng.uniform(-2, 3, 50) + 1j * rng.uniform(-30, 30, 50)
    prod = np.asarray(H.c_ratio(spec, s)) * np.asarray(H.c_ratio(spec, 1 - s))
    assert np.max(np.abs(prod - 1)) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.floats(-2, 3), st.floats(-30, 30))
def test_c_conjugate_symmetry(x, y):
    s = complex(x, y)
    for spec in (R075, XI):
        a = H.c_ratio(spec, s)
        b = H.c_ratio(spec, s.conjugate())
        assert abs(a - b.conjugate()) <= 1e-10 * max(1.0, abs(a))


@pytest.mark.parametrize("label", sorted(H.CATALOG))
def test_catalog_passes_hypotheses(label):
    spec, eta = H.get(label)
    assert H.check_hypotheses(spec, eta).status == "pass"


def test_rational_hypotheses_example():
    rep = H.check_hypotheses(R075, -1, box=(0.5, 3, -5, 5))
    assert rep.status == "pass"
    assert abs(rep["c_growth"].witness["epsilon"] - 1.0) < 0.1


def test_xi_zero_free_box():
    rep = H.check_hypotheses(XI, 1, box=(0.5, 2, 0, 30))
    assert rep["b_zero_free"].status == "pass"
    assert rep["b_zero_free"].witness["winding_h"] == 0


def test_degenerate_fails_square_integrability():
    spec, _ = H.get("degenerate-2s-1")
    rep = H.check_hypotheses(spec, 1)
    assert rep.status == "fail"
    assert rep["f_not_square_integrable"].status == "fail"
    assert [c.name for c in rep.checks if c.status == "fail"] == ["f_not_square_integrable"]
    assert H.check_hypotheses(spec, -1).status == "pass"


def test_simultaneous_zero():
    spec, _ = H.get("degenerate-2s-1")
    assert H.simultaneous_zero(spec, 0.5)
    assert not H.simultaneous_zero(XI, 0.5 + 14.134725141734693j)


def test_every_check_has_a_witness():
    rep = H.check_hypotheses(R075, -1)
    assert all(c.witness for c in rep.checks)
    with pytest.raises(ValueError):
        rep.add("x", "pass", {})


def test_spec_validation():
    with pytest.raises(PreconditionError):
        H.Rational((0.5 + 1j,))
    with pytest.raises(PreconditionError):
        H.HFunctionSpec(H.Rational(), (0.4,))
    with pytest.raises(PreconditionError):
        H.EtaSign(0)
    assert H.EtaSign("minus") == -1
    with pytest.raises(KeyError):
        H.get("nope")


# invariants

@pytest.mark.parametrize("label", sorted(H.CATALOG))
def test_conjugate_is_reflection_on_line(label):
    spec, _ = H.get(label)
    t = np.linspace(0.05, 50, 500)
    s = 0.5 + 1j * t
    a = np.asarray(H.c_ratio(spec, s))
    b = np.asarray(H.c_ratio(spec, 1 - s))
    assert np.max(np.abs(np.conj(a) - b)) <= 1e-10


@pytest.mark.parametrize("label", ["rational-075", "rational-sigma5"])
def test_rational_residue_exact(label):
    spec, _ = H.get(label)
    zeros = spec.variant.zeros
    for sigma in spec.declared_sigmas:
        # simple zero of h at sigma: residue of h(1-s)/h(s) is h(1-sigma)/h'(sigma)
        num = np.prod([(1 - sigma) - z for z in zeros])
        den = np.prod([sigma - z for z in zeros if z != sigma])
        want = num / den
        assert abs(H.residue_at(spec, sigma).R - want) <= 1e-10
