"""Zeros of theta_eta = 1 + eta c_s, located through the entire function N_eta.

N_eta(s) = P(s) (h(s) + eta h(1 - s)) with P the monic polynomial clearing the
poles of h(s) and h(1 - s); see ``hcatalog.n_parts``.  Winding counts use the
normalized value N / (|P h(s)| + |P h(1-s)|), which has the same phase.
"""

from dataclasses import dataclass, replace
import math

import numpy as np

from . import hcatalog
from .errors import (BoundaryError, DepthExhaustedError, IndeterminateError,
                     IsolationError, NonConvergenceError)
from .hcatalog import EtaSign

BOUNDARY_FLOOR = 1e-13
CERTIFY_RESIDUAL = 1e-10
FD_STEP = 1e-3
MIN_RECT = 1e-9
SPLITS = (0.4713, 0.5371, 0.4419, 0.5623)


@dataclass(frozen=True)
class ZeroRecord:
    w: complex
    eta: int
    multiplicity: int = 1
    online_defect: float = 0.0
    refinement_residual: float = float("nan")
    simultaneous_flag: bool = False
    derivative_magnitude: float = float("nan")
    certified: bool = False
    method: str = "locate"
    # For real zeros: (inside [1 - sigma_n, sigma_n], inside [-sigma_n, sigma_n]).
    interval_flags: tuple = ()

    @property
    def t(self):
        return self.w.imag

    def to_dict(self):
        return {
            "re_w": self.w.real, "im_w": self.w.imag, "eta": int(self.eta),
            "multiplicity": self.multiplicity, "online_defect": self.online_defect,
            "refinement_residual": self.refinement_residual,
            "simultaneous_flag": self.simultaneous_flag,
            "derivative_magnitude": self.derivative_magnitude,
            "certified": self.certified, "method": self.method,
            "in_theorem_interval": self.interval_flags[0] if self.interval_flags else None,
            "in_closing_interval": self.interval_flags[1] if self.interval_flags else None,
        }


# ------------------------------------------------------------------ winding

def _walk(f, param, phase_step_cap, max_depth, n0):
    """Winding of f along the closed curve u -> param(u), u in [0, 1]."""
    u = np.linspace(0.0, 1.0, n0 + 1)
    v = np.asarray(f(param(u)), dtype=complex)
    for depth in range(max_depth + 1):
        mag = np.abs(v)
        top = float(mag.max())
        if not top > 0 or np.any(mag <= BOUNDARY_FLOOR * top):
            k = int(np.argmin(mag))
            raise BoundaryError(f"|f| vanishes on the contour near {complex(param(u[k:k + 1])[0])}")
        ratio = v[1:] / v[:-1]
        dphi = np.angle(ratio)
        bad = (np.abs(dphi) >= phase_step_cap) | (np.abs(np.log(np.abs(ratio))) > 1.0)
        if not bad.any():
            return int(round(float(np.sum(dphi)) / (2 * math.pi)))
        idx = np.nonzero(bad)[0]
        if np.min(u[idx + 1] - u[idx]) < 1e-15:
            raise BoundaryError("phase jump unresolved at the minimum step; zero on the contour")
        mid = 0.5 * (u[idx] + u[idx + 1])
        vm = np.asarray(f(param(mid)), dtype=complex)
        u = np.insert(u, idx + 1, mid)
        v = np.insert(v, idx + 1, vm)
    raise NonConvergenceError("boundary walk exceeded its refinement depth")


def _rect_param(rect):
    x0, x1, y0, y1 = rect
    corners = np.array([x0 + 1j * y0, x1 + 1j * y0, x1 + 1j * y1, x0 + 1j * y1, x0 + 1j * y0])

    def param(u):
        u = np.asarray(u, dtype=float)
        k = np.minimum((u * 4).astype(int), 3)
        frac = u * 4 - k
        return corners[k] + frac * (corners[k + 1] - corners[k])
    return param


def winding_number(f, rect, phase_step_cap=math.pi / 2, max_depth=60):
    """(zeros - poles) of f inside rect = (re_lo, re_hi, im_lo, im_hi)."""
    x0, x1, y0, y1 = rect
    if not (x1 > x0 and y1 > y0):
        raise ValueError(f"degenerate rectangle {rect}")
    return _walk(f, _rect_param(rect), phase_step_cap, max_depth, 256)


def winding_on_circle(f, center, radius, phase_step_cap=math.pi / 2, max_depth=60):
    """(zeros - poles) of f inside |s - center| < radius."""
    def param(u):
        return center + radius * np.exp(2j * math.pi * np.asarray(u, dtype=float))
    return _walk(f, param, phase_step_cap, max_depth, 64)


# ----------------------------------------------------------- N_eta helpers

def _nfun(spec, eta):
    def f(s):
        val, local, _ = hcatalog.n_eta_normalized(spec, eta, s)
        # both parts vanish exactly at a simultaneous zero
        safe = np.where(local > 0, local, 1.0)
        return np.where(local > 0, val / safe, 0.0)
    return f


def _n_and_derivative(spec, eta, w, step=FD_STEP):
    """(N, N', local, log_ref) at w, all normalized by e^log_ref."""
    pts = w + step * np.array([0, -2, -1, 1, 2], dtype=complex)
    _, _, ref = hcatalog.n_eta_normalized(spec, eta, pts[:1])
    val, local, _ = hcatalog.n_eta_normalized(spec, eta, pts, ref=np.full(5, ref[0]))
    d = (val[1] - 8 * val[2] + 8 * val[3] - val[4]) / (12 * step)
    return complex(val[0]), complex(d), float(local[0]), float(ref[0])


def _newton(spec, eta, w, multiplicity=1, max_iter=60):
    for _ in range(max_iter):
        n, dn, local, _ = _n_and_derivative(spec, eta, w)
        if n == 0:
            return w, True
        if dn == 0:
            return w, False
        step = multiplicity * n / dn
        w = w - step
        if abs(step) <= 4e-16 * max(1.0, abs(w)):
            return w, True
    n, _, local, _ = _n_and_derivative(spec, eta, w)
    return w, abs(n) / local <= CERTIFY_RESIDUAL


def _sigma_n(spec):
    return spec.sigma_max


def _make_record(spec, eta, w, multiplicity, method):
    if abs(w.imag) <= 1e-14 * max(1.0, abs(w.real)):
        w = complex(w.real, 0.0)
    n, dn, local, ref = _n_and_derivative(spec, eta, w)
    # at a simultaneous zero |A| + |B| collapses; fall back to the variation
    # of N over one difference step
    scale = max(local, abs(dn) * FD_STEP)
    resid = abs(n) / scale if scale > 0 else float("inf")
    flags = ()
    if abs(w.imag) <= 1e-12:
        sn = _sigma_n(spec)
        x = w.real
        flags = (1 - sn - 1e-12 <= x <= sn + 1e-12, -sn - 1e-12 <= x <= sn + 1e-12)
    return ZeroRecord(
        w=complex(w), eta=int(eta), multiplicity=int(multiplicity),
        online_defect=abs(w.real - 0.5), refinement_residual=resid,
        simultaneous_flag=bool(hcatalog.simultaneous_zero(spec, w)),
        derivative_magnitude=abs(dn) * math.exp(ref),
        certified=resid <= CERTIFY_RESIDUAL, method=method, interval_flags=flags)


def _sort_key(r):
    return (round(r.w.imag, 12), round(r.w.real, 12))


# ------------------------------------------------------------ locate_zeros

def _inside(w, rect, pad):
    x0, x1, y0, y1 = rect
    return x0 - pad <= w.real <= x1 + pad and y0 - pad <= w.imag <= y1 + pad


def locate_zeros(spec, eta, rect, max_depth=40):
    """All zeros of N_eta inside rect by quadrisection and Newton refinement.

    The returned multiplicities sum to the winding number of the rectangle;
    the rectangle actually searched (after any outward perturbation) is
    available as the ``rect`` attribute of the returned list.
    """
    eta = EtaSign(eta)
    f = _nfun(spec, eta)
    rect = tuple(float(x) for x in rect)
    total = None
    for _ in range(4):
        try:
            total = winding_number(f, rect)
            break
        except BoundaryError:
            d = 1e-6
            rect = (rect[0] - d, rect[1] + d, rect[2] - d, rect[3] + d)
    if total is None:
        raise BoundaryError("zero of N on the search boundary after 3 perturbations")
    if total < 0:
        raise NonConvergenceError(f"negative winding {total} for an entire function")

    found = []
    unresolved = []
    stack = [(rect, total, 0)]
    while stack:
        r, n, depth = stack.pop()
        if n == 0:
            continue
        x0, x1, y0, y1 = r
        diam = max(x1 - x0, y1 - y0)
        centre = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        if n == 1 and diam <= 0.25:
            w, ok = _newton(spec, eta, centre)
            if ok and _inside(w, r, 1e-12 * max(1.0, abs(w))):
                found.append(_make_record(spec, eta, w, 1, "locate"))
                continue
        if n > 1 and diam <= 1e-6:
            w, ok = _newton(spec, eta, centre, multiplicity=n)
            found.append(_make_record(spec, eta, w, n, "locate"))
            continue
        if depth >= max_depth or diam < MIN_RECT:
            unresolved.append(r)
            continue
        children = None
        for frac in SPLITS:
            xm = x0 + frac * (x1 - x0)
            ym = y0 + (1.0 - frac) * (y1 - y0)
            quads = [(x0, xm, y0, ym), (xm, x1, y0, ym), (x0, xm, ym, y1), (xm, x1, ym, y1)]
            try:
                counts = [winding_number(f, q) for q in quads]
            except BoundaryError:
                continue
            if sum(counts) == n:
                children = list(zip(quads, counts))
                break
        if children is None:
            unresolved.append(r)
            continue
        for q, c in reversed(children):
            stack.append((q, c, depth + 1))
    if unresolved:
        raise DepthExhaustedError(f"{len(unresolved)} sub-rectangles unresolved", unresolved)
    found.sort(key=_sort_key)
    out = ZeroList(found)
    out.rect = rect
    out.winding = total
    return out


class ZeroList(list):
    """List of ZeroRecord carrying the searched rectangle and its winding."""

    rect = None
    winding = None


def real_axis_zeros(spec, eta, interval, n_samples=2001):
    """Sign changes of N_eta on a real interval, refined by bisection.

    Each record carries flags telling whether it lies in [1 - sigma_n, sigma_n]
    and in [-sigma_n, sigma_n].
    """
    eta = EtaSign(eta)
    lo, hi = interval
    x = np.linspace(lo, hi, n_samples)

    def g(xs):
        val, local, _ = hcatalog.n_eta_normalized(spec, eta, np.asarray(xs, dtype=complex))
        return (val / local).real

    v = g(x)
    roots = list(x[v == 0])
    idx = np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]
    for i in idx:
        a, b = x[i], x[i + 1]
        fa = v[i]
        for _ in range(200):
            m = 0.5 * (a + b)
            if m in (a, b):
                break
            fm = g([m])[0]
            if fm == 0:
                a = b = m
                break
            if np.sign(fm) == np.sign(fa):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    recs = [_make_record(spec, eta, complex(r), 1, "real-scan") for r in sorted(roots)]
    return recs


# -------------------------------------------------------------- phase method

def _line_phase_parts(spec):
    """Rational pieces for arg h on the line; factors at exactly 1/2 removed."""
    zeros, poles, scale = hcatalog._split(spec)
    n_half = sum(1 for z in zeros if z == 0.5) + sum(1 for p in poles if p == 0.5)
    z_rest = [z for z in zeros if z != 0.5]
    p_rest = [p for p in poles if p != 0.5]
    for z in z_rest + p_rest:
        if abs(z.real - 0.5) <= 1e-15:
            raise IndeterminateError(f"h has a zero or pole on the critical line at {z}")
    return n_half, z_rest, p_rest, scale


def _raw_phase(spec, t):
    """arg c_{1/2+it} modulo 2 pi, from c = conj(h)/h on the line."""
    n_half, z_rest, p_rest, scale = _line_phase_parts(spec)
    s = 0.5 + 1j * np.asarray(t, dtype=float)
    val = np.full(s.shape, complex(np.sign(scale)))
    for z in z_rest:
        val = val * (s - z) / np.abs(s - z)
    for p in p_rest:
        val = val * np.abs(s - p) / (s - p)
    mant, _ = hcatalog._entire_scaled(spec, s)
    val = val * mant
    return math.pi * n_half - 2.0 * np.angle(val)


def _wrap(x):
    return (x + math.pi) % (2 * math.pi) - math.pi


def phase_track(spec, t_range, t_step=0.05, cap=math.pi / 4, min_step=1e-9):
    """(t, phi) with phi = arg c_{1/2+it} continuous, |increments| < cap."""
    a, b = t_range
    n = max(2, int(math.ceil((b - a) / t_step)) + 1)
    t = np.linspace(a, b, n)
    raw = _raw_phase(spec, t)
    while True:
        d = _wrap(np.diff(raw))
        bad = np.abs(d) >= cap
        if not bad.any():
            break
        idx = np.nonzero(bad)[0]
        if np.min(t[idx + 1] - t[idx]) < min_step:
            raise NonConvergenceError("phase tracking hit the minimum step")
        mid = 0.5 * (t[idx] + t[idx + 1])
        t = np.insert(t, idx + 1, mid)
        raw = np.insert(raw, idx + 1, _raw_phase(spec, mid))
    phi = raw[0] + np.concatenate([[0.0], np.cumsum(_wrap(np.diff(raw)))])
    return t, phi


def online_phase_zeros(spec, eta, t_range, t_step=0.05):
    """Zeros of theta_eta on the critical line from the phase of c."""
    eta = EtaSign(eta)
    t, phi = phase_track(spec, t_range, t_step)
    if np.all(np.abs(1.0 + eta * np.exp(1j * phi)) <= 1e-12):
        raise IndeterminateError("theta vanishes identically on the scanned segment")
    target = math.pi if eta > 0 else 0.0
    g = (phi - target) / (2 * math.pi)
    # grid points that land on a root (t = 0 for a real zero at 1/2)
    roots = [float(tt) for tt, gg in zip(t, g) if abs(gg - round(gg)) <= 1e-12]
    for i in range(len(t) - 1):
        lo, hi = min(g[i], g[i + 1]), max(g[i], g[i + 1])
        for m in range(int(math.floor(lo)) + 1, int(math.ceil(hi))):
            roots.append(_refine_phase_root(spec, t[i], t[i + 1], phi[i], phi[i + 1],
                                            target + 2 * math.pi * m))
    roots.sort()
    uniq = []
    for r in roots:
        if not uniq or abs(r - uniq[-1]) > 1e-12 * max(1.0, abs(r)):
            uniq.append(r)
    recs = [_make_record(spec, eta, complex(0.5, r), 1, "phase") for r in uniq]
    return recs


def _refine_phase_root(spec, ta, tb, pa, pb, level):
    ref_raw = float(_raw_phase(spec, [ta])[0])

    def F(tt):
        raw = float(_raw_phase(spec, [tt])[0])
        return pa + _wrap(raw - ref_raw) - level

    fa, fb = pa - level, pb - level
    if fa == 0:
        return ta
    if fb == 0:
        return tb
    a, b = ta, tb
    for it in range(200):
        if abs(b - a) <= 4e-16 * max(1.0, abs(a), abs(b)):
            break
        x = 0.5 * (a + b)
        if it % 3 != 2 and fb != fa:
            sec = a - fa * (b - a) / (fb - fa)
            if min(a, b) < sec < max(a, b):
                x = sec
        fx = F(x)
        if fx == 0 or abs(fx) <= 1e-15:
            return x
        if (fx > 0) == (fa > 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    return 0.5 * (a + b)


# --------------------------------------------------------------- simplicity

def simplicity_check(spec, eta, record, circle_radius=1e-3):
    """Multiplicity by winding on a small circle, and |N'(w)|."""
    f = _nfun(spec, EtaSign(eta))
    n1 = winding_on_circle(f, record.w, circle_radius)
    n2 = winding_on_circle(f, record.w, 0.5 * circle_radius)
    if n1 != n2:
        raise IsolationError(
            f"windings {n1} and {n2} on radii {circle_radius} and {circle_radius / 2} differ")
    if n1 < 1:
        raise IsolationError(f"no zero inside |s - {record.w}| < {circle_radius}")
    _, dn, _, ref = _n_and_derivative(spec, eta, record.w)
    return replace(record, multiplicity=int(n1), derivative_magnitude=abs(dn) * math.exp(ref))


def match_lists(a, b):
    """Max pairwise |w_a - w_b| after sorting by height; inf on count mismatch."""
    if len(a) != len(b):
        return float("inf")
    ta = sorted((r.w for r in a), key=lambda w: (w.imag, w.real))
    tb = sorted((r.w for r in b), key=lambda w: (w.imag, w.real))
    return max((abs(x - y) for x, y in zip(ta, tb)), default=0.0)
