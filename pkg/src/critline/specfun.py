"""Complex special functions in binary64.

Everything accepts a scalar or an array of complex arguments and returns the
same shape.  Functions that can overflow at large height also come in a
``*_scaled`` form returning ``(mantissa, log_scale)`` with
``value = mantissa * exp(log_scale)`` and ``log_scale`` real.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

import numpy as np

from . import kernels
from .errors import AccuracyError, PoleError, PreconditionError

LOG_PI = math.log(math.pi)
LOG_2PI = math.log(2.0 * math.pi)

# Euler-Maclaurin correction order; n_terms is then chosen so consecutive
# correction terms shrink by at least 1/16.
EM_ORDER = 12
EM_ACCEPT = 1e-10


def _bernoulli_even(count):
    """B_2, B_4, ..., B_{2 count} as Fractions (Akiyama-Tanigawa)."""
    n_max = 2 * count
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        if m >= 2 and m % 2 == 0:
            out.append(a[0])
    return out


_B_EVEN = _bernoulli_even(EM_ORDER + 1)
EM_BERN = np.array([float(b / math.factorial(2 * j))
                    for j, b in enumerate(_B_EVEN, start=1)])
# Stirling coefficients B_{2k} / (2k (2k-1)).
_STIRLING = [float(b) / ((2 * k) * (2 * k - 1)) for k, b in enumerate(_B_EVEN[:10], start=1)]

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _as_array(z):
    arr = np.asarray(z, dtype=complex)
    return np.atleast_1d(arr), arr.ndim == 0


def _out(arr, scalar):
    return complex(arr[0]) if scalar else arr


# ---------------------------------------------------------------- log-gamma

def _lngamma_right(z):
    """Principal log-gamma for Re z >= 1/2."""
    out = np.empty_like(z)
    big = np.abs(z.imag) > 30.0
    if big.any():
        zb = z[big]
        inv = 1.0 / zb
        inv2 = inv * inv
        series = np.zeros_like(zb)
        for coef in reversed(_STIRLING):
            series = series * inv2 + coef
        out[big] = (zb - 0.5) * np.log(zb) - zb + 0.5 * LOG_2PI + series * inv
    small = ~big
    if small.any():
        zs = z[small] - 1.0
        acc = np.full_like(zs, _LANCZOS[0])
        for i in range(1, len(_LANCZOS)):
            acc = acc + _LANCZOS[i] / (zs + i)
        t = zs + _LANCZOS_G + 0.5
        out[small] = 0.5 * LOG_2PI + (zs + 0.5) * np.log(t) - t + np.log(acc)
    return out


def ln_gamma(z):
    """Principal branch of log Gamma(z) (cut along the negative real axis)."""
    z, scalar = _as_array(z)
    if np.any((z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))):
        bad = z[(z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))][0]
        raise PoleError(f"Gamma has a pole at {bad.real:g}", bad)
    out = np.empty_like(z)
    right = z.real >= 0.5
    out[right] = _lngamma_right(z[right])
    left = ~right
    if left.any():
        zl = z[left]
        lower = zl.imag < 0
        zu = np.where(lower, zl.conjugate(), zl)
        # log sin(pi z) on the closed upper half plane, continuous branch.
        log_sin = (-math.log(2.0) + 0.5j * math.pi) - 1j * math.pi * zu \
            + np.log1p(-np.exp(2j * math.pi * zu))
        val = LOG_PI - log_sin - _lngamma_right(1.0 - zu)
        out[left] = np.where(lower, val.conjugate(), val)
    return _out(out, scalar)


# ----------------------------------------------------------- Hurwitz / zeta

def em_terms(smax, a=1.0):
    """Number of explicit terms for the Euler-Maclaurin sum."""
    x = 2.0 * (smax + 2 * EM_ORDER) / math.pi
    return max(10, int(math.ceil(x - a)) + 1)


def hurwitz_parts(s, a=1.0):
    """(regular, pole) with zeta(s, a) = regular + pole / (s - 1).

    Raises AccuracyError when the remainder bound exceeds 1e-10.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if s.size == 0:
        return s.copy(), s.copy()
    n = em_terms(float(np.max(np.abs(s))), a)
    reg, pole, bound = kernels.hurwitz_em(s, float(a), n, EM_BERN)
    worst = float(np.max(bound))
    if not worst <= EM_ACCEPT:
        raise AccuracyError(f"Euler-Maclaurin remainder bound {worst:.3g} exceeds {EM_ACCEPT:g}")
    return reg, pole


def hurwitz_zeta(s, a=1.0):
    """Hurwitz zeta(s, a) for 0 < a <= 1 and Re s >= 0."""
    s, scalar = _as_array(s)
    if np.any(s == 1.0):
        raise PoleError("Hurwitz zeta has a pole at s = 1", 1.0)
    reg, pole = hurwitz_parts(s, a)
    return _out(reg + pole / (s - 1.0), scalar)


def zeta_sm1(s):
    """(s - 1) * zeta(s) for Re s >= 0, finite at s = 1."""
    s, scalar = _as_array(s)
    reg, pole = hurwitz_parts(s, 1.0)
    return _out((s - 1.0) * reg + pole, scalar)


def riemann_zeta(s):
    """Riemann zeta; functional equation for Re s < 0."""
    s, scalar = _as_array(s)
    if np.any(s == 1.0):
        raise PoleError("zeta has a pole at s = 1", 1.0)
    out = np.empty_like(s)
    # the reflected branch would put 1 - s on the pole for tiny negative s
    right = s.real >= -0.25
    if right.any():
        sr = s[right]
        reg, pole = hurwitz_parts(sr, 1.0)
        out[right] = reg + pole / (sr - 1.0)
    left = ~right
    if left.any():
        sl = s[left]
        one = 1.0 - sl
        reg, pole = hurwitz_parts(one, 1.0)
        z1 = reg + pole / (one - 1.0)
        fac = np.exp(sl * math.log(2.0) + (sl - 1.0) * LOG_PI + ln_gamma(one))
        out[left] = fac * np.sin(0.5 * math.pi * sl) * z1
    return _out(out, scalar)


# ------------------------------------------------------------------- xi

def completed_xi_scaled(s):
    """xi(s) as (mantissa, log_scale); safe at heights where xi underflows."""
    s, scalar = _as_array(s)
    z = np.where(s.real >= 0.5, s, 1.0 - s)
    log_fac = -0.5 * z * LOG_PI + ln_gamma(0.5 * z)
    mant = 0.5 * z * np.asarray(zeta_sm1(z)) * np.exp(1j * log_fac.imag)
    scale = log_fac.real
    if scalar:
        return complex(mant[0]), float(scale[0])
    return mant, scale


def completed_xi(s):
    """xi(s) = s(s-1)/2 pi^(-s/2) Gamma(s/2) zeta(s); entire, xi(s) = xi(1-s)."""
    s, scalar = _as_array(s)
    mant, scale = completed_xi_scaled(s)
    return _out(mant * np.exp(scale), scalar)


# ---------------------------------------------------------------- rational

def rational_eval(zeros, poles, scale, s):
    """scale * prod(s - z_i) / prod(s - p_j)."""
    if scale == 0:
        raise PreconditionError("scale must be non-zero")
    s, scalar = _as_array(s)
    num = np.full_like(s, complex(scale))
    for z in zeros:
        num = num * (s - z)
    den = np.ones_like(s)
    for p in poles:
        den = den * (s - p)
    if np.any(den == 0):
        raise PoleError("rational function evaluated at a pole", complex(s[den == 0][0]))
    return _out(num / den, scalar)


# ----------------------------------------------------------------- Epstein

_CLASS_ONE = {-3: 6, -4: 4, -7: 2, -8: 2, -11: 2, -19: 2, -43: 2, -67: 2, -163: 2}


@dataclass(frozen=True)
class QuadraticForm:
    """Positive-definite binary form a m^2 + b m n + c n^2."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a > 0 and 4 * self.a * self.c - self.b ** 2 > 0):
            raise PreconditionError(f"form {self} is not positive definite")

    @property
    def disc(self):
        return 4 * self.a * self.c - self.b ** 2

    def __call__(self, m, n):
        return self.a * m * m + self.b * m * n + self.c * n * n

    def class_one_units(self):
        """Unit count w if Q is integral primitive of class-number-one discriminant."""
        coeffs = (self.a, self.b, self.c)
        if any(float(x) != int(x) for x in coeffs):
            return None
        a, b, c = (int(x) for x in coeffs)
        if math.gcd(math.gcd(a, b), c) != 1:
            return None
        return _CLASS_ONE.get(b * b - 4 * a * c)

    def lattice_values(self, qmax):
        """Distinct values Q(m, n) <= qmax over (m, n) != 0 with multiplicities."""
        lam_min = 0.5 * (self.a + self.c - math.hypot(self.a - self.c, self.b))
        r = int(math.floor(math.sqrt(qmax / lam_min))) + 1
        m, n = np.meshgrid(np.arange(-r, r + 1), np.arange(-r, r + 1), indexing="ij")
        vals = self(m.astype(float), n.astype(float)).ravel()
        vals = vals[(vals > 0) & (vals <= qmax)]
        uniq, counts = np.unique(np.round(vals, 12), return_counts=True)
        return uniq, counts


def kronecker(d, n):
    """Kronecker symbol (d / n) for n >= 1."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d / n) for odd n.
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _expm1_ratio(u):
    """(e^u - 1) / u, accurate near u = 0."""
    small = np.abs(u) < 1e-3
    with np.errstate(divide="ignore", invalid="ignore"):
        big = (np.exp(u) - 1.0) / u
    series = 1.0 + u / 2.0 * (1.0 + u / 3.0 * (1.0 + u / 4.0 * (1.0 + u / 5.0)))
    return np.where(small, series, big)


def dirichlet_l(s, d):
    """L(s, chi_d) for the Kronecker character of a fundamental discriminant d."""
    s, scalar = _as_array(s)
    q = abs(d)
    smax = float(np.max(np.abs(s)))
    acc = np.zeros_like(s)
    for r in range(1, q):
        chi = kronecker(d, r)
        if chi:
            a = r / q
            reg, _ = hurwitz_parts(s, a)
            # pole / (s - 1) = x^(1-s) / (s - 1); the constant part cancels
            # in the character sum, leaving -log(x) (e^u - 1)/u, u = (1-s) log x.
            logx = math.log(em_terms(smax, a) + a)
            acc = acc + chi * (reg - logx * _expm1_ratio((1.0 - s) * logx))
    return _out(acc * np.exp(-s * math.log(q)), scalar)


_THETA_XMAX = 45.0
_THETA_IM_MAX = 40.0


@lru_cache(maxsize=None)
def _laguerre_like_rule():
    # Composite Gauss-Legendre on [0, 60] for integrals against exp(-u).
    x, w = np.polynomial.legendre.leggauss(16)
    edges = np.arange(0.0, 60.0 + 1e-12, 0.5)
    nodes = ((edges[:-1, None] + edges[1:, None]) + (edges[1:, None] - edges[:-1, None]) * x) / 2
    weights = (edges[1:, None] - edges[:-1, None]) / 2 * w
    nodes = nodes.ravel()
    return nodes, weights.ravel() * np.exp(-nodes)


def _upper_tail(z, xs):
    """I(z, X) = int_1^inf exp(-X x) x^(z-1) dx for each X in xs (matrix)."""
    u, wu = _laguerre_like_rule()
    logs = np.log1p(u[None, :] / xs[:, None])
    out = np.empty((len(z), len(xs)), dtype=complex)
    pref = np.exp(-xs) / xs
    for i, zi in enumerate(z):
        out[i] = pref * (np.exp((zi - 1.0) * logs) @ wu)
    return out


def _epstein_entire_theta(q, z):
    """E(z) = z (z-1) Lambda_Q(z) from the theta lift.

    Lambda_Q(s) = (sqrt(D)/2pi)^s Gamma(s) Z_Q(s), D = 4ac - b^2, so that
    Lambda_Q(s) = -1/s - 1/(1-s) + sum' [I(s, X) + I(1-s, X)] with
    X = 2 pi Q(m,n)/sqrt(D).  Multiplying by s(s-1) turns the pole part into
    the constant 1.
    """
    if np.any(np.abs(z.imag) > _THETA_IM_MAX) or np.any(np.abs(z.real - 0.5) > 12):
        raise AccuracyError("theta-lift Epstein evaluation limited to |Im s| <= 40, |Re s - 1/2| <= 12")
    root_d = math.sqrt(q.disc)
    qvals, mult = q.lattice_values(_THETA_XMAX * root_d / (2 * math.pi))
    xs = 2 * math.pi * qvals / root_d
    s1 = _upper_tail(z, xs) @ mult
    s2 = _upper_tail(1.0 - z, xs) @ mult
    return 1.0 + z * (z - 1.0) * (s1 + s2)


def epstein_entire_scaled(q, z, method="auto"):
    """E(z) = z(z-1) Lambda_Q(z) as (mantissa, log_scale)."""
    z, scalar = _as_array(z)
    w = q.class_one_units()
    if method == "auto":
        method = "dirichlet" if w else "theta"
    if method == "theta":
        mant = _epstein_entire_theta(q, z)
        scale = np.zeros(len(z))
    elif method == "dirichlet":
        if not w:
            raise PreconditionError(f"{q} is not a class-number-one form")
        d = int(q.b) ** 2 - 4 * int(q.a) * int(q.c)
        zr = np.where(z.real >= 0.5, z, 1.0 - z)
        log_fac = zr * math.log(math.sqrt(q.disc) / (2 * math.pi)) + ln_gamma(zr)
        mant = zr * np.asarray(zeta_sm1(zr)) * w * np.asarray(dirichlet_l(zr, d)) \
            * np.exp(1j * log_fac.imag)
        scale = log_fac.real
    else:
        raise ValueError(f"unknown method {method!r}")
    if scalar:
        return complex(mant[0]), float(scale[0])
    return mant, scale


def epstein_completed(q, s, method="auto"):
    """Completed Epstein zeta Lambda_Q(s); Lambda_Q(s) = Lambda_Q(1 - s)."""
    s, scalar = _as_array(s)
    if np.any((s == 0) | (s == 1)):
        raise PoleError("Lambda_Q has simple poles at s = 0 and s = 1", complex(s[(s == 0) | (s == 1)][0]))
    mant, scale = epstein_entire_scaled(q, s, method)
    return _out(mant * np.exp(scale) / (s * (s - 1.0)), scalar)


def epstein_zeta(q, s, method="auto"):
    """Raw lattice zeta Z_Q(s) = sum' Q(m,n)^(-s), continued analytically."""
    s, scalar = _as_array(s)
    lam = np.asarray(epstein_completed(q, s, method))
    fac = s * math.log(math.sqrt(q.disc) / (2 * math.pi)) + ln_gamma(s)
    return _out(lam * np.exp(-fac), scalar)
