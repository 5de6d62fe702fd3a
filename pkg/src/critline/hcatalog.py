"""The functions h, the ratio c_s = h(1-s)/h(s) and the targets theta_eta.

Every h in the catalog is stored as a product ``R(s) * H(s)`` where ``R`` is
rational (explicit zeros, poles and scale) and ``H`` is entire and evaluated
in scaled form.  This keeps c_s finite at heights where h itself under- or
overflows, and lets factors centred exactly at s = 1/2 contribute their exact
limit -1 to c_s.
"""

from dataclasses import dataclass, field
from functools import lru_cache
import math
from collections import Counter

import numpy as np

from . import specfun
from .errors import (BoundaryError, IndeterminateError, IsolationError, PoleError,
                     PreconditionError, SignConditionError, CritlineError)

SIMULTANEOUS_TOL = 1e-9


# ------------------------------------------------------------------ variants

@dataclass(frozen=True)
class Rational:
    zeros: tuple = ()
    poles: tuple = ()
    scale: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))
        object.__setattr__(self, "poles", tuple(complex(p) for p in self.poles))
        if self.scale == 0:
            raise PreconditionError("rational scale must be non-zero")
        for name, pts in (("zeros", self.zeros), ("poles", self.poles)):
            if not _conjugate_closed(pts):
                raise PreconditionError(f"{name} must be closed under conjugation")
        if set(self.zeros) & set(self.poles):
            raise PreconditionError("zeros and poles must be disjoint")


@dataclass(frozen=True)
class RiemannXi2s:
    pass


@dataclass(frozen=True)
class RiemannXi2sY:
    y: float = 1.0

    def __post_init__(self):
        if not self.y >= 1.0:
            raise PreconditionError("y must be >= 1")


@dataclass(frozen=True)
class EpsteinCompleted2s:
    q: specfun.QuadraticForm = specfun.QuadraticForm(1, 0, 1)


def _conjugate_closed(pts, tol=1e-12):
    remaining = list(pts)
    while remaining:
        z = remaining.pop()
        if abs(z.imag) <= tol:
            continue
        for k, other in enumerate(remaining):
            if abs(other - z.conjugate()) <= tol * max(1.0, abs(z)):
                del remaining[k]
                break
        else:
            return False
    return True


class EtaSign(int):
    """+1 or -1."""

    def __new__(cls, value):
        if isinstance(value, str):
            value = {"plus": 1, "+": 1, "+1": 1, "minus": -1, "-": -1, "-1": -1}.get(value.strip())
        if value not in (1, -1):
            raise PreconditionError(f"eta must be +1 or -1, got {value!r}")
        return super().__new__(cls, value)

    @property
    def value(self):
        return int(self)

    @property
    def name(self):
        return "plus" if self > 0 else "minus"


@dataclass(frozen=True)
class HFunctionSpec:
    variant: object
    declared_sigmas: tuple = ()
    label: str = ""

    def __post_init__(self):
        sig = tuple(float(x) for x in self.declared_sigmas)
        object.__setattr__(self, "declared_sigmas", sig)
        if any(x <= 0.5 for x in sig):
            raise PreconditionError("declared sigmas must exceed 1/2")
        if any(b <= a for a, b in zip(sig, sig[1:])):
            raise PreconditionError("declared sigmas must be strictly increasing")

    @property
    def sigma_max(self):
        return self.declared_sigmas[-1] if self.declared_sigmas else 0.5


@dataclass(frozen=True)
class ResidueData:
    sigma: float
    R: complex
    eta_R: float
    imag_defect: float


@dataclass
class Check:
    name: str
    status: str
    witness: dict
    tolerance: dict = field(default_factory=dict)

    def to_dict(self):
        return {"name": self.name, "status": self.status,
                "tolerance": self.tolerance, "witness": self.witness}


@dataclass
class VerificationReport:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, status, witness, tolerance=None):
        if not witness:
            raise ValueError("every check needs a witness")
        self.checks.append(Check(name, status, witness, tolerance or {}))

    @property
    def status(self):
        states = {c.status for c in self.checks}
        if "fail" in states:
            return "fail"
        if "inconclusive" in states or not states:
            return "inconclusive"
        return "pass"

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"title": self.title, "status": self.status,
                "checks": [c.to_dict() for c in self.checks]}


# ------------------------------------------------------- rational / entire

def _split(spec):
    """(zeros, poles, scale) of the rational factor R."""
    v = spec.variant
    if isinstance(v, Rational):
        return v.zeros, v.poles, v.scale
    if isinstance(v, EpsteinCompleted2s):
        # Lambda_Q(2s) = E(2s) / (2s (2s - 1)) = E(2s) / (4 s (s - 1/2)).
        return (), (0j, 0.5 + 0j), 0.25
    return (), (), 1.0


def _entire_scaled(spec, s):
    """H(s) as (mantissa, log_scale) arrays; s is a 1-d complex array."""
    v = spec.variant
    if isinstance(v, Rational):
        return np.ones_like(s), np.zeros(s.shape)
    if isinstance(v, RiemannXi2s):
        return specfun.completed_xi_scaled(2.0 * s)
    if isinstance(v, RiemannXi2sY):
        mant, scale = specfun.completed_xi_scaled(2.0 * s)
        ly = math.log(v.y)
        return mant * np.exp(1j * ly * s.imag), scale + ly * s.real
    if isinstance(v, EpsteinCompleted2s):
        return specfun.epstein_entire_scaled(v.q, 2.0 * s)
    raise TypeError(f"unknown variant {v!r}")


def _arr(s):
    a = np.asarray(s, dtype=complex)
    return np.atleast_1d(a), a.ndim == 0


def _rational_value(zeros, poles, scale, s):
    num = np.full_like(s, complex(scale))
    for z in zeros:
        num = num * (s - z)
    den = np.ones_like(s)
    for p in poles:
        den = den * (s - p)
    return num, den


def h_scaled(spec, s):
    """h(s) as (mantissa, log_scale); raises PoleError at poles of h."""
    s, scalar = _arr(s)
    zeros, poles, scale = _split(spec)
    num, den = _rational_value(zeros, poles, scale, s)
    if np.any(den == 0):
        bad = complex(s[den == 0][0])
        raise PoleError(f"h has a pole at {bad}", bad)
    mant, ls = _entire_scaled(spec, s)
    mant = mant * num / den
    if scalar:
        return complex(mant[0]), float(ls[0])
    return mant, ls


def h_eval(spec, s):
    """Value of h at s."""
    s, scalar = _arr(s)
    mant, ls = h_scaled(spec, s)
    out = mant * np.exp(ls)
    return complex(out[0]) if scalar else out


def _log_envelope(spec, s, ls, skip_half=False):
    """Log of a smooth positive size for h near s, used to judge 'h is tiny'.

    ``ls`` is the log scale of H(s) already computed by the caller.  With
    ``skip_half`` factors sitting exactly at 1/2 are left out, matching the
    way c_ratio cancels them.
    """
    zeros, poles, scale = _split(spec)
    env = np.full(s.shape, math.log(abs(scale)))
    for z in zeros:
        if not (skip_half and z == 0.5):
            env += np.log1p(np.abs(s - z))
    for p in poles:
        if not (skip_half and p == 0.5):
            env -= np.log(np.abs(s - p) + 1e-300)
    if isinstance(spec.variant, Rational):
        return env
    z = 2.0 * s
    return env + np.log1p(np.abs(z) * np.abs(z - 1.0)) + ls


def _c_parts(spec, s):
    """c_s as (value, flags) with flags 0 ok, 1 pole of c, 2 indeterminate."""
    zeros, poles, _ = _split(spec)
    t = 1.0 - s
    num = np.ones_like(s)
    den = np.ones_like(s)
    sign = 1.0
    for z in zeros:
        if z == 0.5:
            sign = -sign
        else:
            num = num * (t - z)
            den = den * (s - z)
    for p in poles:
        if p == 0.5:
            sign = -sign
        else:
            num = num * (s - p)
            den = den * (t - p)
    m1, l1 = _entire_scaled(spec, s)
    m2, l2 = _entire_scaled(spec, t)
    top = num * m2
    bot = den * m1
    flags = np.zeros(s.shape, dtype=int)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = sign * (top / bot) * np.exp(l2 - l1)
    zero_bot = bot == 0
    flags[zero_bot] = 1
    if zeros or not isinstance(spec.variant, Rational):
        env1 = _log_envelope(spec, s, l1, skip_half=True)
        env2 = _log_envelope(spec, t, l2, skip_half=True)
        with np.errstate(divide="ignore"):
            r1 = np.log(np.abs(bot) + 1e-320) + l1 - env1
            r2 = np.log(np.abs(top) + 1e-320) + l2 - env2
        tiny = math.log(SIMULTANEOUS_TOL)
        flags[(r1 < tiny) & (r2 < tiny)] = 2
    flags[zero_bot & (top == 0)] = 2
    return val, flags


def c_ratio(spec, s):
    """c_s = h(1-s)/h(s)."""
    s, scalar = _arr(s)
    val, flags = _c_parts(spec, s)
    if np.any(flags == 2):
        bad = complex(s[flags == 2][0])
        raise IndeterminateError(f"h(s) and h(1-s) vanish together near {bad}")
    if np.any(flags == 1):
        bad = complex(s[flags == 1][0])
        raise PoleError(f"c has a pole at {bad} (zero of h)", bad)
    return complex(val[0]) if scalar else val


def simultaneous_zero(spec, s):
    """True where |h(s)| and |h(1-s)| are both below 1e-9 of their envelope.

    Unlike the flag inside c_ratio, zeros of the rational factor at exactly
    1/2 count here even though they cancel from c.
    """
    s, scalar = _arr(s)
    zeros, poles, scale = _split(spec)
    tiny = math.log(SIMULTANEOUS_TOL)
    out = np.ones(s.shape, dtype=bool)
    for x in (s, 1.0 - s):
        num, den = _rational_value(zeros, (), scale, x)
        pole_dist = np.ones(x.shape)
        for p in poles:
            pole_dist = pole_dist * np.abs(x - p)
        mant, ls = _entire_scaled(spec, x)
        env = _log_envelope(spec, x, ls)
        with np.errstate(divide="ignore"):
            r = np.log(np.abs(num * mant) + 1e-320) + ls - np.log(pole_dist + 1e-300) - env
        out &= r < tiny
    return bool(out[0]) if scalar else out


def c_asymptotic(spec, s):
    """c_s with arithmetic factors replaced by their limit as Re s -> infinity.

    Rational h: exact.  xi(2s) y^s: c = (s-1)/s sqrt(pi) Gamma(s-1/2)/Gamma(s)
    y^(1-2s) times zeta(2s-1)/zeta(2s) -> 1.  Lambda_Q(2s): c = (2 pi/sqrt D)
    /(2s - 1) times Z_Q(2s-1)/Z_Q(2s) -> min Q.  The neglected factor is
    1 + O(2^(1-2 Re s)) for the catalog forms.
    """
    s, scalar = _arr(s)
    v = spec.variant
    if isinstance(v, Rational):
        out = np.asarray(c_ratio(spec, s))
    elif isinstance(v, (RiemannXi2s, RiemannXi2sY)):
        lg = specfun.ln_gamma(s - 0.5) - specfun.ln_gamma(s)
        out = (s - 1.0) / s * np.exp(0.5 * specfun.LOG_PI + lg)
        if isinstance(v, RiemannXi2sY):
            out = out * np.exp((1.0 - 2.0 * s) * math.log(v.y))
    elif isinstance(v, EpsteinCompleted2s):
        qmin = float(v.q.lattice_values(min(v.q.a, v.q.c) + 1e-9)[0][0])
        out = (2 * math.pi / math.sqrt(v.q.disc)) * qmin / (2.0 * s - 1.0)
    else:
        raise TypeError(f"unknown variant {v!r}")
    return complex(out[0]) if scalar else out


# ---------------------------------------------------------- cleared N_eta

def _pole_clearing(spec):
    """Multiset of roots of the monic polynomial P clearing poles of h(s), h(1-s)."""
    _, poles, _ = _split(spec)
    a = Counter(poles)
    b = Counter(1.0 - p for p in poles)
    keys = set(a) | set(b)
    return Counter({k: max(a[k], b[k]) for k in keys})


@lru_cache(maxsize=None)
def _n_factors(spec):
    """Root lists and constants so that P(s) h(s) = k1 prod(s - r1) H(s) and
    P(s) h(1-s) = k2 prod(s - r2) H(1-s)."""
    zeros, poles, scale = _split(spec)
    clear = _pole_clearing(spec)
    r1 = list(zeros) + list((clear - Counter(poles)).elements())
    refl = Counter(1.0 - p for p in poles)
    r2 = [1.0 - z for z in zeros] + list((clear - refl).elements())
    k1 = complex(scale)
    k2 = complex(scale) * (-1) ** (len(zeros) + len(poles))
    return tuple(r1), k1, tuple(r2), k2


def n_parts(spec, s):
    """Pieces (mA, lA, mB, lB) with P h(s) = mA e^lA and P h(1-s) = mB e^lB.

    P is the monic polynomial clearing every pole of h(s) and h(1-s), so
    N_eta = P (h(s) + eta h(1-s)) is entire and has the zeros of theta_eta.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    r1, k1, r2, k2 = _n_factors(spec)
    pa = np.full_like(s, k1)
    for r in r1:
        pa = pa * (s - r)
    pb = np.full_like(s, k2)
    for r in r2:
        pb = pb * (s - r)
    ma, la = _entire_scaled(spec, s)
    mb, lb = _entire_scaled(spec, 1.0 - s)
    return pa * ma, la, pb * mb, lb


def n_eta_normalized(spec, eta, s, ref=None):
    """(N, local_scale, log_ref) with N and local_scale both divided by e^log_ref.

    ``ref`` fixes the normalization (for finite differences); by default the
    larger of the two log scales at each point.
    """
    ma, la, mb, lb = n_parts(spec, s)
    if ref is None:
        ref = np.maximum(la, lb)
    ea = np.exp(la - ref)
    eb = np.exp(lb - ref)
    val = ma * ea + eta * mb * eb
    local = np.abs(ma) * ea + np.abs(mb) * eb
    return val, local, ref


# ------------------------------------------------------------------ theta

def theta_eval(spec, eta, point):
    """theta_eta at a complex s, or sqrt(eta R_i) at abstract point index i."""
    eta = EtaSign(eta)
    if isinstance(point, (int, np.integer)) and not isinstance(point, bool):
        sigma = spec.declared_sigmas[point]
        res = residue_for_eta(spec, eta, sigma)
        if res.eta_R < 0:
            raise SignConditionError(
                f"eta*R = {res.eta_R:.6g} < 0 at sigma = {sigma}")
        return complex(math.sqrt(res.eta_R))
    s, scalar = _arr(point)
    out = 1.0 + eta * np.asarray(c_ratio(spec, s))
    return complex(out[0]) if scalar else out


def abstract_thetas(spec, eta):
    """theta at every abstract point, in declared order."""
    return np.array([theta_eval(spec, eta, i) for i in range(len(spec.declared_sigmas))],
                    dtype=complex)


# --------------------------------------------------------------- residues

def _known_singularities(spec):
    zeros, poles, _ = _split(spec)
    pts = list(zeros) + list(poles) + [1.0 - p for p in poles] + [1.0 - z for z in zeros]
    pts += [complex(x) for x in spec.declared_sigmas] + [1.0 - x for x in spec.declared_sigmas]
    return pts


def default_radius(spec, sigma):
    others = [abs(p - sigma) for p in _known_singularities(spec) if abs(p - sigma) > 1e-12]
    r = 0.5 * min(others) if others else 0.1
    return min(r, 0.1)


RESIDUE_POINTS = 128


@lru_cache(maxsize=256)
def residue_at(spec, sigma, radius=None):
    """Residue of c_s at sigma by the trapezoidal rule on a circle."""
    from .zerofinder import winding_on_circle
    if radius is None:
        radius = default_radius(spec, sigma)
    # Isolation: the cleared h must wind exactly once (one simple zero inside)
    # and h(1 - s) must have no zero or pole inside.
    def hfun(s):
        return h_scaled(spec, s)[0]

    def gfun(s):
        return h_scaled(spec, 1.0 - s)[0]
    try:
        n_h = winding_on_circle(hfun, sigma, radius)
        n_g = winding_on_circle(gfun, sigma, radius)
    except CritlineError as exc:
        raise IsolationError(f"cannot isolate sigma = {sigma}: {exc}") from exc
    # c = h(1-s)/h(s) must have one simple pole inside: either a simple zero
    # of h or a simple pole of h(1 - s), and nothing else.
    if (n_h, n_g) not in ((1, 0), (0, -1)):
        raise IsolationError(
            f"circle |s - {sigma}| = {radius} holds winding {n_h} for h and {n_g} for h(1-s); "
            "expected exactly one simple pole of c")
    k = np.arange(RESIDUE_POINTS)
    e = np.exp(2j * math.pi * k / RESIDUE_POINTS)
    vals = np.asarray(c_ratio(spec, sigma + radius * e))
    R = complex(radius * np.mean(vals * e))
    eta_R = R.real
    return ResidueData(float(sigma), R, float(eta_R), abs(R.imag))


def residue_for_eta(spec, eta, sigma):
    r = residue_at(spec, sigma)
    return ResidueData(r.sigma, r.R, float(EtaSign(eta) * r.R.real), r.imag_defect)


# -------------------------------------------------------------- hypotheses

@dataclass(frozen=True)
class Tolerances:
    reality: float = 1e-10
    unit_modulus: float = 1e-10
    residue_imag: float = 1e-9
    growth_margin: float = 1e-3
    theta_zero: float = 1e-12


def _growth_samples(spec, radii, n_samples=64):
    singular = [p for p in _known_singularities(spec)]
    out = []
    for r in radii:
        phi_max = math.acos(min(1.0, 0.5 / r))
        phi = np.linspace(-phi_max, phi_max, n_samples)
        s = r * np.exp(1j * phi)
        keep = np.ones(len(s), dtype=bool)
        for p in singular:
            keep &= np.abs(s - p) > 0.05
        out.append(s[keep])
    return out


def check_hypotheses(spec, eta, box=None, tol=None, t_max=50.0):
    """Empirical verification of the hypotheses on h for the given eta.

    ``box`` is (re_lo, re_hi, im_lo, im_hi) inside Re s >= 1/2.
    """
    from .zerofinder import winding_number
    eta = EtaSign(eta)
    tol = tol or Tolerances()
    if box is None:
        box = (0.5, 3.0, -5.0, 5.0)
    rep = VerificationReport(f"hypotheses {spec.label} eta={eta:+d}")

    # (a) reality on the real axis
    try:
        x = np.linspace(-3.0, 4.0, 701) + 0.0j
        zeros, poles, _ = _split(spec)
        keep = np.ones(len(x), dtype=bool)
        for p in poles:
            keep &= np.abs(x - p) > 1e-6
        m, _ = h_scaled(spec, x[keep])
        rel = np.abs(m.imag) / np.maximum(np.abs(m), 1e-300)
        worst = float(rel.max())
        rep.add("a_reality", "pass" if worst <= tol.reality else "fail",
                {"max_rel_imag": worst, "samples": int(keep.sum())}, {"reality": tol.reality})
    except CritlineError as exc:
        rep.add("a_reality", "inconclusive", {"error": str(exc), "max_rel_imag": float("nan")})

    # (b) zeros of h in the box are exactly the declared sigmas
    def cleared_h(s):
        zeros, poles, scale = _split(spec)
        num, _ = _rational_value(zeros, (), scale, s)
        mant, _ = _entire_scaled(spec, s)
        return num * mant
    try:
        rect = tuple(box)
        n_zero = None
        for attempt in range(4):
            try:
                n_zero = winding_number(cleared_h, rect)
                break
            except BoundaryError:
                # the left edge moves inward: zeros on the line itself are allowed
                d = 1e-6
                rect = (rect[0] + d, rect[1] + d, rect[2] - d, rect[3] + d)
        if n_zero is None:
            raise BoundaryError("zero of h on the box boundary after 3 perturbations")
        _, poles, _ = _split(spec)
        reflected = sum(1 for p in poles
                        if rect[0] < (1 - p).real < rect[1] and rect[2] < (1 - p).imag < rect[3]
                        and (1 - p).real > 0.5 + 1e-12)
        declared = sum(1 for x in spec.declared_sigmas
                       if rect[0] < x < rect[1] and rect[2] < 0 < rect[3])
        found = n_zero + reflected
        rep.add("b_zero_free", "pass" if found == declared else "fail",
                {"winding_h": n_zero, "poles_of_h_reflected": reflected,
                 "declared_inside": declared, "box": list(rect)})
    except CritlineError as exc:
        rep.add("b_zero_free", "inconclusive", {"error": str(exc), "box": list(box)})

    # (c) growth of |c_s| along arcs |s| = 2^k in Re s >= 1/2
    try:
        radii = [2.0 ** k for k in range(2, 9)]
        logmax = []
        for arc in _growth_samples(spec, radii):
            vals = np.abs(c_ratio(spec, arc))
            logmax.append(math.log(float(vals.max())))
        lr = np.log(radii)
        slope = float(np.polyfit(lr, logmax, 1)[0])
        eps = 1.0 - slope
        rep.add("c_growth", "pass" if eps > tol.growth_margin else "fail",
                {"slope": slope, "epsilon": eps, "radii": radii},
                {"growth_margin": tol.growth_margin})
    except CritlineError as exc:
        rep.add("c_growth", "inconclusive", {"error": str(exc), "epsilon": float("nan")})

    # (d) residue signs
    if spec.declared_sigmas:
        try:
            data = [residue_for_eta(spec, eta, sg) for sg in spec.declared_sigmas]
            ok = all(d.eta_R >= 0 for d in data)
            imag_ok = all(d.imag_defect <= tol.residue_imag * max(1.0, abs(d.R)) for d in data)
            rep.add("d_residue_sign", "pass" if ok and imag_ok else "fail",
                    {"sigma": [d.sigma for d in data], "eta_R": [d.eta_R for d in data],
                     "imag_defect": [d.imag_defect for d in data]},
                    {"residue_imag": tol.residue_imag})
        except CritlineError as exc:
            rep.add("d_residue_sign", "inconclusive", {"error": str(exc), "sigma": list(spec.declared_sigmas)})
    else:
        rep.add("d_residue_sign", "pass", {"declared": 0})

    # (e) unit modulus on the line
    try:
        t = np.linspace(0.0, t_max, 2001)
        s = 0.5 + 1j * t
        keep = ~simultaneous_zero(spec, s)
        zeros, poles, _ = _split(spec)
        for p in list(zeros) + list(poles):
            keep &= np.abs(s - p) > 1e-9
        vals = np.abs(c_ratio(spec, s[keep]))
        worst = float(np.max(np.abs(vals - 1.0)))
        rep.add("e_unit_modulus", "pass" if worst <= tol.unit_modulus else "fail",
                {"max_dev": worst, "t_max": t_max}, {"unit_modulus": tol.unit_modulus})
    except CritlineError as exc:
        rep.add("e_unit_modulus", "inconclusive", {"error": str(exc), "max_dev": float("nan")})

    # (f) theta not square-integrable on the line
    try:
        rep.checks.append(_square_integrability(spec, eta, tol))
    except CritlineError as exc:
        rep.add("f_not_square_integrable", "inconclusive", {"error": str(exc), "integrals": []})
    return rep


def _square_integrability(spec, eta, tol):
    from .functional import LineQuadrature
    heights = [50.0, 100.0, 200.0, 400.0]
    quad = LineQuadrature(heights[-1], 8)
    s = 0.5 + 1j * quad.nodes
    th = np.abs(theta_eval(spec, eta, s)) ** 2
    ints = []
    for T in heights:
        m = np.abs(quad.nodes) <= T
        ints.append(float(np.sum(th[m] * quad.weights[m])))
    peak = float(np.sqrt(th.max()))
    ratios = [b / a if a > 0 else float("nan") for a, b in zip(ints, ints[1:])]
    witness = {"heights": heights, "integrals": ints, "ratios": ratios, "max_abs_theta": peak}
    if peak <= tol.theta_zero:
        status = "fail"
    elif all(r >= 1.5 for r in ratios):
        status = "pass"
    else:
        status = "inconclusive"
    return Check("f_not_square_integrable", status, witness,
                 {"theta_zero": tol.theta_zero, "min_doubling_ratio": 1.5})


# ---------------------------------------------------------------- catalog

def _spec(label, variant, sigmas=()):
    return HFunctionSpec(variant, tuple(sigmas), label)


CATALOG = {
    "rational-075": (_spec("rational-075", Rational((0.75,)), (0.75,)), EtaSign(-1)),
    "rational-hb5": (_spec("rational-hb5", Rational((-1, -2, -3, -0.5 + 3j, -0.5 - 3j))), EtaSign(-1)),
    "rational-sigma5": (_spec("rational-sigma5", Rational((0.75, -1 + 2j, -1 - 2j, -3, -4)), (0.75,)),
                        EtaSign(-1)),
    "xi2s": (_spec("xi2s", RiemannXi2s()), EtaSign(1)),
    "xi2sY-1": (_spec("xi2sY-1", RiemannXi2sY(1.0)), EtaSign(1)),
    "xi2sY-2": (_spec("xi2sY-2", RiemannXi2sY(2.0)), EtaSign(1)),
    # c_s has a pole at s = 1 coming from the pole of h(1 - s) at 1 - s = 0.
    "epstein-101": (_spec("epstein-101", EpsteinCompleted2s(specfun.QuadraticForm(1, 0, 1)), (1.0,)),
                    EtaSign(1)),
}

# Inputs that violate a hypothesis on purpose.
DEGENERATE = {
    "degenerate-2s-1": (_spec("degenerate-2s-1", Rational((0.5,), (), 2.0)), EtaSign(1)),
}


def get(label):
    """(spec, default eta) for a catalog or degenerate label."""
    if label in CATALOG:
        return CATALOG[label]
    if label in DEGENERATE:
        return DEGENERATE[label]
    raise KeyError(f"unknown catalog label {label!r}")
