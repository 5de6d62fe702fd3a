"""The functional theta~_eta, the solutions u_w and the identities they satisfy.

Line integrals are over s = 1/2 + it with the normalization
(1/4 pi i) int f ds = (1/4 pi) int f dt.  On the line
lambda_s - lambda_w = -(t^2 + a^2) with a = w - 1/2.

Pairings are evaluated in split form: with G(s) = (1 + eta c_{1-s})(1 + eta c_s),
which equals |theta_eta|^2 on the line and satisfies G(1 - s) = G(s),

    (1/4pi) int G(s) / (lambda_s - lambda_w) dt
        = (1/4pi) int (G(s) - G(w)) / (lambda_s - lambda_w) dt - G(w) / (2 (2w - 1)).

The first integrand has removable singularities at s = w and s = 1 - w, so
the quadrature does not have to resolve the near-pole when w is close to the
line, and the formula continues analytically to Re w = 1/2.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import math
import warnings

import numpy as np

from . import hcatalog
from .errors import NonConvergenceError, PreconditionError
from .hcatalog import EtaSign, VerificationReport

_GL16 = np.polynomial.legendre.leggauss(16)
FILL_RADIUS = 1e-6
FILL_STEP = 1e-3
ONLINE_TOL = 1e-8


def _panels(edges):
    """Gauss-Legendre nodes and weights on consecutive panels."""
    x, w = _GL16
    a = np.asarray(edges[:-1], dtype=float)[:, None]
    b = np.asarray(edges[1:], dtype=float)[:, None]
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * x
    weights = 0.5 * (b - a) * w
    return nodes.ravel(), weights.ravel()


class LineQuadrature:
    """Composite 16-point Gauss-Legendre rule on [-T, T].

    ``N`` is the number of nodes per unit length, so panels have width 16/N
    (shrunk slightly so that they tile [-T, T] exactly).
    """

    scheme = "composite-gauss-legendre-16"

    def __init__(self, T, N=16):
        if not (T > 0 and N > 0):
            raise PreconditionError("T and N must be positive")
        self.T = float(T)
        self.N = int(N)
        half = max(1, int(math.ceil(self.T * self.N / 16.0)))
        edges = np.linspace(-self.T, self.T, 2 * half + 1)
        nodes, weights = _panels(edges)
        # Mirror the positive half so the rule is exactly symmetric.
        pos = nodes.size // 2
        self.nodes = np.concatenate([-nodes[pos:][::-1], nodes[pos:]])
        self.weights = np.concatenate([weights[pos:][::-1], weights[pos:]])

    @property
    def panels(self):
        return list(zip(self.nodes.tolist(), self.weights.tolist()))

    def __len__(self):
        return self.nodes.size

    def positive_half(self):
        m = self.nodes > 0
        return self.nodes[m], self.weights[m]


def mean_square_theta(spec, eta):
    """Limit of the mean of |theta_eta|^2 along the line as |t| -> infinity."""
    if isinstance(spec.variant, hcatalog.Rational):
        v = spec.variant
        deg = len(v.zeros) - len(v.poles)
        return abs(1 + eta * (-1) ** deg) ** 2
    return 2.0


def _g_of(spec, eta, s):
    c = np.asarray(hcatalog.c_ratio(spec, s))
    return (1.0 + eta / c) * (1.0 + eta * c)


def _g_at(spec, eta, w):
    c = complex(hcatalog.c_ratio(spec, w))
    return (1.0 + eta / c) * (1.0 + eta * c)


def _tail_factor(a, T):
    """(1/4pi) * 2 * int_T^inf -1/(t^2 + a^2) dt = -arctan(a/T) / (2 pi a)."""
    if a == 0:
        return -1.0 / (2 * math.pi * T)
    return -complex(np.arctan(a / T)) / (2 * math.pi * a)


def _fill_removable(func, t, vals, mask):
    """Replace vals[mask] by the 4-point symmetric extrapolation of func."""
    if not mask.any():
        return vals
    tc = t[mask]
    h = FILL_STEP
    f = [func(tc + k * h) for k in (-2, -1, 1, 2)]
    vals = vals.copy()
    vals[mask] = (-f[0] + 4 * f[1] + 4 * f[2] - f[3]) / 6.0
    return vals


TAIL_SIGMA = 20.0


@lru_cache(maxsize=64)
def _tail_contour(spec, T):
    """Nodes and c values for the tail of the line beyond |t| = T.

    The c_s part of the tail is moved onto the horizontal segments
    [1/2, TAIL_SIGMA] +- iT and the vertical rays Re s = TAIL_SIGMA,
    |t| >= T, where c is replaced by ``c_asymptotic``.  The rays use
    t = T / v^2 so Gauss-Legendre in v reaches infinity.
    """
    n = int(math.ceil(TAIL_SIGMA - 0.5))
    x, wx = _panels(np.linspace(0.5, TAIL_SIGMA, n + 1))
    up = x + 1j * T
    dn = x - 1j * T
    v, wv = _panels(np.linspace(0.0, 1.0, 3))
    tv = T / v ** 2
    wt = wv * 2.0 * T / v ** 3
    ray_up = TAIL_SIGMA + 1j * tv
    ray_dn = TAIL_SIGMA - 1j * tv
    c_up = np.asarray(hcatalog.c_ratio(spec, up))
    c_dn = np.asarray(hcatalog.c_ratio(spec, dn))
    a_up = np.asarray(hcatalog.c_asymptotic(spec, ray_up))
    a_dn = np.asarray(hcatalog.c_asymptotic(spec, ray_dn))
    return up, dn, wx, c_up, c_dn, ray_up, ray_dn, wt, a_up, a_dn


def line_tail(spec, eta, w, T):
    """(1/4pi) int_{|t| > T} G(s) / (lambda_s - lambda_w) dt.

    G = 2 + eta (c_s + c_{1-s}); the constant is integrated in closed form
    and, since t -> -t swaps c_s and c_{1-s}, the rest is twice the c_s tail.
    """
    if not abs(complex(w).imag) < T:
        raise PreconditionError("need |Im w| < T for the tail contour")
    up, dn, wx, c_up, c_dn, ray_up, ray_dn, wt, a_up, a_dn = _tail_contour(spec, float(T))
    lam_w = w * (w - 1.0)

    def f(s, c):
        return c / (s * (s - 1.0) - lam_w)
    horiz = (np.sum(f(up, c_up) * wx) - np.sum(f(dn, c_dn) * wx)) / (4j * math.pi)
    rays = (np.sum(f(ray_up, a_up) * wt) + np.sum(f(ray_dn, a_dn) * wt)) / (4 * math.pi)
    c_tail = horiz + rays
    return 2.0 * _tail_factor(w - 0.5, T) + 2.0 * eta * c_tail


@dataclass
class UwSolution:
    """u_w(s) = theta_eta(s) / (lambda_s - lambda_w), with abstract-point values."""

    spec: object
    eta: int
    w: complex
    lambda_w: complex = field(init=False)

    def __post_init__(self):
        self.eta = EtaSign(self.eta)
        self.w = complex(self.w)
        self.lambda_w = self.w * (self.w - 1.0)

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        return np.asarray(hcatalog.theta_eval(self.spec, self.eta, s)) / (s * (s - 1.0) - self.lambda_w)

    def at_point(self, i):
        sigma = self.spec.declared_sigmas[i]
        return hcatalog.theta_eval(self.spec, self.eta, i) / (sigma * (sigma - 1.0) - self.lambda_w)

    def fe_defect(self, s):
        """|c_s u(1-s) - eta u(s)|, zero when u satisfies the functional equation."""
        s = np.asarray(s, dtype=complex)
        c = np.asarray(hcatalog.c_ratio(self.spec, s))
        return np.abs(c * self(1.0 - s) - self.eta * self(s))


@dataclass
class PairingResult:
    value: complex
    line_part: complex
    point_part: complex
    tail_correction: complex
    tail_estimate: float
    target: complex
    T: float

    @property
    def abs_error(self):
        return abs(self.value - self.target)

    @property
    def rel_error(self):
        return self.abs_error / abs(self.target) if self.target != 0 else self.abs_error


def point_terms(spec, eta, w):
    """Sum over abstract points of conj(theta(tau_i)) u_w(tau_i) = eta R_i / (lambda_sigma - lambda_w)."""
    lam_w = w * (w - 1.0)
    total = 0j
    for i, sigma in enumerate(spec.declared_sigmas):
        th = hcatalog.theta_eval(spec, eta, i)
        total += (th.conjugate() * th) / (sigma * (sigma - 1.0) - lam_w)
    return total


def _check_w(spec, w):
    for sigma in spec.declared_sigmas:
        if abs(w - sigma) <= 1e-12:
            raise PreconditionError(f"w = {w} coincides with sigma = {sigma}")


def _split_pairing(spec, eta, w, quad, tol=None):
    a = w - 0.5
    t = quad.nodes
    s = 0.5 + 1j * t
    gw = _g_at(spec, eta, w)
    den = -(t * t + a * a)

    def integrand(tt):
        ss = 0.5 + 1j * tt
        return (np.abs(hcatalog.theta_eval(spec, eta, ss)) ** 2 - gw) / (-(tt * tt + a * a))

    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (np.abs(np.asarray(hcatalog.theta_eval(spec, eta, s))) ** 2 - gw) / den
    vals = _fill_removable(integrand, t, vals, np.abs(den) < FILL_RADIUS)
    line = np.sum(vals * quad.weights) / (4 * math.pi)
    closed = -gw / (2.0 * (2.0 * w - 1.0))
    tail = line_tail(spec, eta, w, quad.T) - gw * _tail_factor(a, quad.T)
    points = point_terms(spec, eta, w)
    target = complex(hcatalog.theta_eval(spec, eta, w)) / (1.0 - 2.0 * w)
    est = abs(tail)
    if tol is not None and est > tol:
        warnings.warn(f"tail estimate {est:.3g} exceeds tolerance {tol:.3g}", RuntimeWarning)
    value = line + closed + tail + points
    return PairingResult(complex(value), complex(line + closed + tail), complex(points),
                         complex(tail), float(est), target, quad.T)


def theta_pairing(spec, eta, w, quad, tol=None, method="split"):
    """theta~_eta(u_w) for Re w > 1/2.

    ``method="direct"`` integrates |theta|^2/(lambda_s - lambda_w) as it
    stands (plus the same analytic tail); ``"split"`` uses the subtracted form.
    """
    eta = EtaSign(eta)
    w = complex(w)
    if not w.real > 0.5:
        raise PreconditionError("theta_pairing needs Re w > 1/2")
    _check_w(spec, w)
    if method == "split":
        return _split_pairing(spec, eta, w, quad, tol)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")
    a = w - 0.5
    t = quad.nodes
    th2 = np.abs(np.asarray(hcatalog.theta_eval(spec, eta, 0.5 + 1j * t))) ** 2
    line = np.sum(th2 / (-(t * t + a * a)) * quad.weights) / (4 * math.pi)
    tail = line_tail(spec, eta, w, quad.T)
    points = point_terms(spec, eta, w)
    target = complex(hcatalog.theta_eval(spec, eta, w)) / (1.0 - 2.0 * w)
    return PairingResult(complex(line + tail + points), complex(line + tail), complex(points),
                         complex(tail), float(abs(tail)), target, quad.T)


def theta_pairing_regularized(spec, eta, w, quad):
    """Continuation of theta~_eta(u_w) to a point w on the critical line."""
    eta = EtaSign(eta)
    w = complex(w)
    if abs(w.real - 0.5) > ONLINE_TOL:
        raise PreconditionError("w must lie on the critical line")
    if abs(w - 0.5) < 1e-4:
        raise PreconditionError("w is too close to 1/2")
    _check_w(spec, w)
    return _split_pairing(spec, eta, complex(0.5, w.imag), quad)


def _fit_exponent(xs, ys):
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    ok = ys > 0
    if ok.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(xs[ok]), np.log(ys[ok]), 1)[0])


ACCURACY_FLOOR = 1e-10


def verify_identity(spec, eta, w, T_schedule=(50.0, 100.0, 200.0, 400.0), N=32, rel_tol=1e-6,
                    method="split"):
    """Pairing against theta_eta(w)/(1 - 2w) over a schedule of heights.

    Two error series are kept.  ``raw_err`` drops the tail correction and
    must shrink strictly with T.  ``rel_err`` is the corrected value; it must
    end below ``rel_tol`` and may not grow unless it sits under
    ``ACCURACY_FLOOR``.
    """
    eta = EtaSign(eta)
    w = complex(w)
    if not w.real > 0.5:
        raise PreconditionError("verify_identity needs Re w > 1/2")
    _check_w(spec, w)
    rows = []
    for T in T_schedule:
        res = theta_pairing(spec, eta, w, LineQuadrature(T, N), method=method)
        rows.append(res)
    errs = [r.rel_error for r in rows]
    raw = [abs(r.value - r.tail_correction - r.target) / max(abs(r.target), 1e-300) for r in rows]
    decreasing = all(b < a for a, b in zip(raw, raw[1:]))
    stable = all(b <= max(a, ACCURACY_FLOOR) for a, b in zip(errs, errs[1:]))
    final = errs[-1]
    rep = VerificationReport(f"identity {spec.label} eta={eta:+d} w={w}")
    rep.add("identity", "pass" if final <= rel_tol and decreasing and stable else "fail",
            {"w": [w.real, w.imag], "T": list(T_schedule), "rel_err": errs, "raw_err": raw,
             "lhs": [[r.value.real, r.value.imag] for r in rows],
             "rhs": [rows[-1].target.real, rows[-1].target.imag],
             "order": _fit_exponent(T_schedule, raw), "decreasing": decreasing,
             "stable": stable},
            {"rel_tol": rel_tol, "accuracy_floor": ACCURACY_FLOOR, "N": N})
    rep.rows = rows
    return rep


def _u_abs2(spec, eta, w, t):
    """|u_w(1/2 + it)|^2 with the removable points at lambda_s = lambda_w filled."""
    a = w - 0.5

    def f(tt):
        th = np.asarray(hcatalog.theta_eval(spec, eta, 0.5 + 1j * tt))
        return np.abs(th / (-(tt * tt + a * a))) ** 2

    den = -(t * t + a * a)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = f(t)
    return _fill_removable(f, t, vals, np.abs(den) < FILL_RADIUS)


def u_norm_squared(spec, eta, w, quad):
    """H^0 norm of u_w: (1/4pi) int |u_w|^2 dt + sum |u_w(tau_i)|^2."""
    t = quad.nodes
    line = float(np.sum(_u_abs2(spec, eta, w, t) * quad.weights)) / (4 * math.pi)
    # |u|^2 ~ m / t^4 beyond T.
    line += mean_square_theta(spec, eta) * 2.0 / (3.0 * quad.T ** 3) / (4 * math.pi)
    pts = 0.0
    lam_w = w * (w - 1.0)
    for i, sigma in enumerate(spec.declared_sigmas):
        th = hcatalog.theta_eval(spec, eta, i)
        pts += abs(th / (sigma * (sigma - 1.0) - lam_w)) ** 2
    return line + pts, line, pts


def derivative_identity(spec, eta, w0, quad, step=1e-3, rel_tol=1e-4):
    """d/dw of the continued pairing at an on-line zero against the norm formula.

    Side (a) is a 4th-order central difference of theta_pairing_regularized's
    continuation in Re w.  Side (b) is (2 w0 - 1) ||u_w0||^2 with the pairing's
    normalization of the norm.  The same statement along the line parameter
    (w = 1/2 + it, d/dt = i d/dw) reads -(2 w0 - 1)/(4 pi i) * ||u||^2 with
    ||u||^2 = int |u|^2 dt + 4 pi sum |u(tau)|^2; both forms are in the witness.
    """
    eta = EtaSign(eta)
    w0 = complex(0.5, complex(w0).imag) if abs(complex(w0).real - 0.5) <= ONLINE_TOL else complex(w0)
    if abs(w0.real - 0.5) > ONLINE_TOL:
        raise PreconditionError("w0 must lie on the critical line")
    if abs(w0 - 0.5) < 1e-4:
        raise PreconditionError("w0 = 1/2 is excluded")
    vals = [_split_pairing(spec, eta, w0 + k * step, quad).value for k in (-2, -1, 1, 2)]
    lhs = (vals[0] - 8 * vals[1] + 8 * vals[2] - vals[3]) / (12 * step)
    norm2, line, pts = u_norm_squared(spec, eta, w0, quad)
    # Stability of the truncated norm: compare against half the height.
    half = LineQuadrature(quad.T / 2, quad.N)
    norm_half, _, _ = u_norm_squared(spec, eta, w0, half)
    drift = abs(norm2 - norm_half) / norm2 if norm2 > 0 else float("inf")
    if not drift <= 1e-3:
        raise NonConvergenceError(
            f"truncated ||u_w0||^2 not stable (relative drift {drift:.3g}); theta(w0) is likely non-zero")
    rhs = (2 * w0 - 1) * norm2
    mismatch = abs(lhs - rhs) / abs(rhs)
    dt_lhs = 1j * lhs
    dt_rhs = -(2 * w0 - 1) / (4j * math.pi) * (4 * math.pi * norm2)
    rep = VerificationReport(f"derivative identity {spec.label} eta={eta:+d} w0={w0}")
    rep.add("derivative_identity", "pass" if mismatch <= rel_tol and norm2 > 0 else "fail",
            {"w0": [w0.real, w0.imag], "lhs": [lhs.real, lhs.imag], "rhs": [rhs.real, rhs.imag],
             "lhs_along_t": [dt_lhs.real, dt_lhs.imag], "rhs_along_t": [dt_rhs.real, dt_rhs.imag],
             "norm_squared": norm2, "norm_line_part": line, "norm_point_part": pts,
             "rel_mismatch": mismatch, "rel_mismatch_along_t": abs(dt_lhs - dt_rhs) / abs(dt_rhs),
             "rel_mismatch_opposite_sign": abs(lhs + rhs) / abs(rhs), "norm_drift": drift},
            {"rel_tol": rel_tol})
    return rep


# ------------------------------------------------------ H^1 membership

def _graded_edges(a, b, h0, hmax=1.0):
    """Panel edges from a to b, widths h0, 2 h0, 4 h0, ... capped at hmax."""
    edges = [a]
    h = h0
    while edges[-1] + h < b:
        edges.append(edges[-1] + h)
        h = min(2 * h, hmax)
    edges.append(b)
    return np.array(edges)


def _log_window(center, d_lo, d_hi):
    """Nodes/weights for d_lo <= |t - center| <= d_hi via t = center +- e^x."""
    x0, x1 = math.log(d_lo), math.log(d_hi)
    n = max(1, int(math.ceil((x1 - x0) / 0.5)))
    x, wx = _panels(np.linspace(x0, x1, n + 1))
    ex = np.exp(x)
    return (np.concatenate([center + ex, center - ex]),
            np.concatenate([wx * ex, wx * ex]))


def _h1_integrand(spec, eta, w, c_shift):
    a = w - 0.5

    def f(t):
        th = np.asarray(hcatalog.theta_eval(spec, eta, 0.5 + 1j * t))
        lam = -0.25 - t * t
        return (c_shift - lam) * np.abs(th / (-(t * t + a * a))) ** 2
    return f


def default_c_shift(spec):
    lam = [s * (s - 1.0) for s in spec.declared_sigmas]
    return max(1.0, max(lam, default=-math.inf) + 1.0)


H1_DELTAS = (1e-1, 1e-2, 1e-3, 1e-4)
H1_HEIGHTS = (50.0, 100.0, 200.0, 400.0)


def h1_membership_diagnostic(spec, eta, w, deltas=H1_DELTAS, heights=H1_HEIGHTS, c_shift=None):
    """Does u_w lie in the discrete H^1 (weight c - lambda)?  Diagnostic only.

    For w = 1/2 + i beta on the line, u_w is singular at t = +-beta unless
    theta_eta(w) = 0.  The weighted integral is computed with the windows
    |t -+ beta| < delta removed; growth like 1/delta as delta shrinks means
    divergence, shrinking increments mean convergence.  The tail is checked
    over the height schedule.
    """
    eta = EtaSign(eta)
    w = complex(w)
    if abs(w.real - 0.5) > ONLINE_TOL:
        raise PreconditionError("w must lie on the critical line")
    if abs(w - 0.5) < 1e-4:
        raise PreconditionError("w = 1/2 is excluded")
    beta = abs(w.imag)
    w = complex(0.5, w.imag)
    c_shift = default_c_shift(spec) if c_shift is None else c_shift
    f = _h1_integrand(spec, eta, w, c_shift)
    rho = min(1.0, 0.5 * beta)

    # Everything outside the rho-windows, for each height.
    def outer(T):
        pieces = []
        right = _graded_edges(beta + rho, T, rho / 4)
        pieces.append(right)
        mid_n = max(1, int(math.ceil((2 * (beta - rho)) / (rho / 2))))
        mid = np.linspace(-beta + rho, beta - rho, mid_n + 1)
        nodes, weights = [], []
        for e in (right, mid):
            x, q = _panels(e)
            nodes.append(x)
            weights.append(q)
        x = np.concatenate(nodes)
        q = np.concatenate(weights)
        # Mirror the right piece to t < -beta - rho.
        xr, qr = _panels(right)
        x = np.concatenate([x, -xr])
        q = np.concatenate([q, qr])
        return float(np.sum(f(x) * q))

    outer_vals = [outer(T) for T in heights]
    near = []
    for d in deltas:
        acc = 0.0
        for centre in (beta, -beta):
            x, q = _log_window(centre, d, rho)
            acc += float(np.sum(f(x) * q))
        near.append(acc)
    total = [(outer_vals[-1] + n) / (4 * math.pi) for n in near]
    incr = np.abs(np.diff(total))
    growth = [float(b / a) if a > 0 else float("inf") for a, b in zip(incr, incr[1:])]
    theta_w = abs(complex(hcatalog.theta_eval(spec, eta, w)))
    divergent = bool(all(g > 3.0 for g in growth))
    convergent = bool(all(g < 0.3 for g in growth))
    classification = "divergent" if divergent else ("convergent" if convergent else "unclear")
    consistent = (classification == "convergent" and theta_w <= 1e-8) or \
                 (classification == "divergent" and theta_w > 1e-8)
    rep = VerificationReport(f"H1 membership {spec.label} eta={eta:+d} w={w}")
    rep.add("h1_membership", "pass" if consistent else ("inconclusive" if classification == "unclear" else "fail"),
            {"w": [w.real, w.imag], "classification": classification, "deltas": list(deltas),
             "excised_norms": total, "increment_growth": growth,
             "heights": list(heights), "tail_norms": [(o + near[-1]) / (4 * math.pi) for o in outer_vals],
             "abs_theta_w": theta_w},
            {"divergent_growth": 3.0, "convergent_growth": 0.3, "theta_zero": 1e-8})
    rep.classification = classification
    return rep
