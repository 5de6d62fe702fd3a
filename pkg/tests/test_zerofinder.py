import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from critline import hcatalog as H
from critline import zerofinder as Z
from critline.errors import BoundaryError

R075, _ = H.get("rational-075")
XI, _ = H.get("xi2s")


def test_winding_examples():
    assert Z.winding_number(lambda s: s - 0.5, (0.0, 1.0, -0.5, 0.5)) == 1
    f = lambda s: (2 * s - 1) / (s - 0.75)  # noqa: E731
    assert Z.winding_number(f, (0.4, 0.6, -0.1, 0.1)) == 1
    assert Z.winding_number(f, (0.3, 0.9, -0.1, 0.1)) == 0


def test_winding_double_zero():
    assert Z.winding_on_circle(lambda s: (s - 0.5) ** 2, 0.5, 1e-3) == 2


def test_winding_boundary_error():
    with pytest.raises(BoundaryError):
        Z.winding_number(lambda s: s - 0.5, (0.5, 1.0, -0.5, 0.5))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.floats(-2, 2), st.floats(-2, 2)), min_size=1, max_size=5))
def test_winding_counts_polynomial_roots(roots):
    roots = [complex(a, b) for a, b in roots]
    rect = (-1.0, 1.0, -1.0, 1.0)
    # keep roots clear of the contour
    if any(min(abs(abs(r.real) - 1), abs(abs(r.imag) - 1)) < 0.05 for r in roots):
        return

    def f(s):
        out = 1.0
        for r in roots:
            out = out * (s - r)
        return out
    inside = sum(1 for r in roots if abs(r.real) < 1 and abs(r.imag) < 1)
    assert Z.winding_number(f, rect) == inside


def test_locate_rational():
    zs = Z.locate_zeros(R075, -1, (0.3, 0.9, -0.5, 0.5))
    assert len(zs) == 1
    assert abs(zs[0].w - 0.5) <= 1e-14
    assert zs[0].multiplicity == 1
    assert Z.locate_zeros(R075, 1, (0.3, 0.9, -0.5, 0.5)) == []


def test_phase_rational():
    zs = Z.online_phase_zeros(R075, -1, (-1.0, 1.0))
    assert [r.t for r in zs] == [0.0]
    assert Z.online_phase_zeros(R075, 1, (-10.0, 10.0)) == []


def test_simplicity_rational():
    rec = Z.locate_zeros(R075, -1, (0.3, 0.9, -0.5, 0.5))[0]
    out = Z.simplicity_check(R075, -1, rec)
    assert out.multiplicity == 1
    # N = 2s - 1 up to the normalization
    assert out.derivative_magnitude > 0


def test_xi_two_methods_agree_with_mpmath():
    loc = Z.locate_zeros(XI, 1, (0.1, 0.9, 0.0, 30.0))
    ph = Z.online_phase_zeros(XI, 1, (0.0, 30.0))
    assert len(loc) == len(ph) == 13
    assert all(r.online_defect <= 1e-8 and r.certified for r in loc)
    assert Z.match_lists(loc, ph) <= 1e-9
    # on the line 2 - 2s is the conjugate of 2s, so 1 + c = 0 means Re xi(1 + 2it) = 0
    mp.mp.dps = 30

    def re_xi(t):
        z = 1 + 2j * t
        return mp.re(z * (z - 1) / 2 * mp.pi ** (-z / 2) * mp.gamma(z / 2) * mp.zeta(z))
    want = [float(mp.findroot(re_xi, r.t)) for r in ph]
    assert max(abs(r.t - g) for r, g in zip(ph, want)) <= 1e-9


def test_xi_first_zero_simple():
    rec = Z.online_phase_zeros(XI, 1, (0.0, 8.0))[0]
    out = Z.simplicity_check(XI, 1, rec)
    assert out.multiplicity == 1
    assert out.derivative_magnitude > 0


def test_degenerate_minus_has_no_off_line_zeros():
    spec, _ = H.get("degenerate-2s-1")
    zs = Z.locate_zeros(spec, -1, (0.1, 0.9, -1.0, 30.0))
    assert all(abs(r.w.real - 0.5) <= 1e-8 for r in zs)


def test_match_lists_count_mismatch():
    zs = Z.online_phase_zeros(XI, 1, (0.0, 30.0))
    assert Z.match_lists(zs, zs[:-1]) == float("inf")


# invariants

def _has_partner(records, target, tol=1e-9):
    return any(abs(r.w - target) <= tol for r in records)


def test_completeness_and_symmetries_off_line():
    # h = (s - 0.2)(s - 3) violates the hypotheses, so N_+1 has zeros off the line
    spec = H.HFunctionSpec(H.Rational((0.2, 3.0)), (), "off")
    rect = (-1.0, 2.0, -3.0, 3.1)
    zs = Z.locate_zeros(spec, 1, rect)
    assert sum(r.multiplicity for r in zs) == zs.winding == 2
    for r in zs:
        assert _has_partner(zs, 1 - r.w)
        assert _has_partner(zs, r.w.conjugate())


def test_xi_conjugate_pairs():
    zs = Z.locate_zeros(XI, 1, (0.1, 0.9, -20.0, 20.3))
    assert sum(r.multiplicity for r in zs) == zs.winding == 12
    assert all(_has_partner(zs, r.w.conjugate()) for r in zs)


@pytest.mark.parametrize("label", sorted(H.CATALOG))
def test_catalog_zeros_on_line_and_simple(label):
    spec, eta = H.get(label)
    for r in Z.locate_zeros(spec, eta, (0.1, 0.9, 0.0, 12.0)):
        if r.w.imag != 0 and r.certified:
            assert r.online_defect <= 1e-8
            assert Z.simplicity_check(spec, eta, r).multiplicity == 1
