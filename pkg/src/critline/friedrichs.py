"""Finite-dimensional model of the constrained multiplication operator.

The line s = 1/2 + it is folded onto t > 0 (|theta|^2 and lambda_s are even
in t), so a model entry is a half-line node with weight q_j/(2 pi), a tail
closure entry, or an abstract point sigma_i with weight 1.  With H^0 weights w_j, the
multiplication operator M = diag(lambda) and the functional
theta~(u) = sum w_j conj(theta_j) u_j, the eigenvalues of M compressed to
ker theta~ are the roots of

    F(lambda) = sum_j w_j |theta_j|^2 / (lambda_j - lambda).

``secular_roots`` solves F = 0 gap by gap; ``constrained_spectrum`` builds an
H^1-orthonormal basis of the kernel and solves the compressed eigenproblem.

Cutting the line at T drops (1/2pi) int_T^inf |theta|^2 / (lambda_t - lambda) dt
from F, which moves every root by O(1/T).  That tail is the Stieltjes
transform of a positive measure below lambda_T = -(1/4 + T^2), so it is
replaced by a few entries below lambda_T whose weights are fitted (non-negative
least squares) to the contour-deformed tail from ``functional.line_tail``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from scipy.optimize import nnls

from . import functional, hcatalog, kernels
from .errors import (BracketError, IndeterminateError, NonConvergenceError,
                     PreconditionError)
from .functional import LineQuadrature
from .hcatalog import EtaSign, VerificationReport

JACOBI_MAX = 400
EIG_RESIDUAL = 1e-10
PAIR_RESIDUAL = 1e-9
METHOD_AGREEMENT = 1e-10
CLOSURE_POLES = np.geomspace(1e-3, 30.0, 10)
CLOSURE_FIT = 0.6
CLOSURE_SAMPLES = 80


@dataclass
class DiscreteModel:
    """Entries of the discretized H^0 space: half-line nodes, closure, abstract points."""

    lambda_line: np.ndarray
    line_weights: np.ndarray
    lambda_points: np.ndarray
    theta_vec: np.ndarray
    c_shift: float
    eta: int
    T: float = float("nan")
    N: int = 0
    nodes: np.ndarray = field(default_factory=lambda: np.zeros(0))
    label: str = ""
    excluded_nodes: int = 0
    lambda_closure: np.ndarray = field(default_factory=lambda: np.zeros(0))
    closure_fit_error: float = 0.0

    def __post_init__(self):
        self.lambda_closure = np.asarray(self.lambda_closure, dtype=float)
        self.lambda_line = np.asarray(self.lambda_line, dtype=float)
        self.line_weights = np.asarray(self.line_weights, dtype=float)
        self.lambda_points = np.asarray(self.lambda_points, dtype=float)
        self.theta_vec = np.asarray(self.theta_vec, dtype=complex)
        n = self.lambda_line.size + self.lambda_closure.size + self.lambda_points.size
        if self.theta_vec.size != n or self.line_weights.size != self.lambda_line.size:
            raise PreconditionError("entry counts of lambdas, weights and theta disagree")
        if np.any(self.line_weights <= 0):
            raise PreconditionError("quadrature weights must be positive")
        if not self.c_shift > max(0.0, float(self.lambdas.max(initial=0.0))):
            raise PreconditionError("c_shift must exceed max(0, max lambda)")

    @classmethod
    def from_entries(cls, lambdas, weights, theta, c_shift=None, eta=1):
        """A model with only 'line' entries, for toy problems."""
        lambdas = np.asarray(lambdas, dtype=float)
        if c_shift is None:
            c_shift = max(1.0, float(lambdas.max()) + 1.0)
        return cls(lambdas, np.asarray(weights, dtype=float), np.zeros(0),
                   np.asarray(theta, dtype=complex), float(c_shift), int(eta))

    @property
    def lambdas(self):
        return np.concatenate([self.lambda_line, self.lambda_closure, self.lambda_points])

    @property
    def weights(self):
        return np.concatenate([self.line_weights,
                               np.ones(self.lambda_closure.size + self.lambda_points.size)])

    def __len__(self):
        return self.theta_vec.size

    def h0_inner(self, f, g):
        return complex(np.sum(self.weights * f * np.conj(g)))

    def h1_inner(self, f, g):
        return complex(np.sum(self.weights * (self.c_shift - self.lambdas) * f * np.conj(g)))

    def pairing(self, u):
        """theta~(u) = <u, theta>_{H^0}."""
        return self.h0_inner(u, self.theta_vec)


@dataclass
class SpectralResult:
    eigenvalues: np.ndarray
    mapped_w: list
    residuals: list
    method: str
    vectors: np.ndarray = None

    def max_residual(self):
        if not self.residuals:
            return 0.0
        return max(max(r) for r in self.residuals)

    def to_dict(self):
        return {"method": self.method,
                "eigenvalues": [float(x) for x in self.eigenvalues],
                "mapped_w": [[[w.real, w.imag] for w in ws] for ws in self.mapped_w],
                "residuals": [[float(a), float(b)] for a, b in self.residuals]}


def default_c_shift(spec):
    lam = [x * (x - 1.0) for x in spec.declared_sigmas]
    return max(1.0, max(lam, default=-math.inf) + 1.0)


def tail_closure(spec, eta, T, t_fit=None):
    """(lambdas, |theta|^2 weights, max fit error) standing in for the line beyond T."""
    t_fit = CLOSURE_FIT * T if t_fit is None else t_fit
    ts = np.linspace(0.0, t_fit, CLOSURE_SAMPLES)
    lams = -(0.25 + ts * ts)
    tau = np.array([functional.line_tail(spec, eta, complex(0.5, t), T).real for t in ts])
    nu = -(0.25 + T * T) - T * T * CLOSURE_POLES
    a = 1.0 / (nu[None, :] - lams[:, None])
    col = np.abs(a).max(axis=0)
    z, _ = nnls(a / col, tau)
    z = z / col
    err = float(np.abs(a @ z - tau).max())
    keep = z > 0
    return nu[keep], z[keep], err


def build_model(spec, eta, T, N, c_shift=None, check=True, closure=True):
    """Half-line nodes of LineQuadrature(T, N), the tail closure and the abstract points."""
    eta = EtaSign(eta)
    if check:
        rep = hcatalog.check_hypotheses(spec, eta)
        if rep.status != "pass":
            bad = [c.name for c in rep.checks if c.status != "pass"]
            raise PreconditionError(f"hypotheses do not pass for {spec.label}: {bad}")
    quad = LineQuadrature(T, N)
    t, q = quad.positive_half()
    s = 0.5 + 1j * t
    keep = ~np.asarray(hcatalog.simultaneous_zero(spec, s), dtype=bool)
    t, q, s = t[keep], q[keep], s[keep]
    theta_line = np.asarray(hcatalog.theta_eval(spec, eta, s), dtype=complex)
    theta_pts = np.array([hcatalog.theta_eval(spec, eta, i)
                          for i in range(len(spec.declared_sigmas))], dtype=complex)
    lam_pts = np.array([x * (x - 1.0) for x in spec.declared_sigmas], dtype=float)
    c = default_c_shift(spec) if c_shift is None else float(c_shift)
    if closure:
        lam_cl, z_cl, err = tail_closure(spec, eta, float(T))
    else:
        lam_cl, z_cl, err = np.zeros(0), np.zeros(0), float("nan")
    return DiscreteModel(-(0.25 + t * t), q / (2 * math.pi), lam_pts,
                         np.concatenate([theta_line, np.sqrt(z_cl), theta_pts]), c, int(eta),
                         float(T), int(N), t, spec.label, int((~keep).sum()),
                         lam_cl, err)


# ---------------------------------------------------------------- secular

def _secular_data(model):
    d = model.lambdas
    z = model.weights * np.abs(model.theta_vec) ** 2
    if not np.any(z > 0):
        raise IndeterminateError("all theta entries vanish; the constraint is empty")
    keep = z > 0
    d, z = d[keep], z[keep]
    order = np.argsort(d, kind="stable")
    d, z = d[order], z[order]
    # merge equal entries: they carry one pole of F
    uniq, start = np.unique(d, return_index=True)
    zz = np.add.reduceat(z, start)
    return uniq, zz


def secular_function(model, lam):
    d, z = _secular_data(model)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    return (z[None, :] / (d[None, :] - lam[:, None])).sum(axis=1)


def secular_roots(model, window=None, backend=None):
    """Roots of F in the window, one per gap between consecutive entries."""
    d, z = _secular_data(model)
    if d.size < 2:
        return np.zeros(0)
    lo, hi = (-math.inf, math.inf) if window is None else (float(window[0]), float(window[1]))
    if lo > hi:
        raise PreconditionError("empty window")
    if np.any((d == lo) | (d == hi)):
        raise PreconditionError("window endpoint coincides with an entry (a pole of F)")
    gaps = np.nonzero((d[1:] > lo) & (d[:-1] < hi))[0]
    impl = kernels if backend is None else kernels.backend(backend)
    roots = np.asarray(impl.secular_gap_roots(d, z, gaps.astype(np.int64)))
    inside = (roots > d[gaps]) & (roots < d[gaps + 1])
    if not inside.all():
        g = int(gaps[~inside][0])
        raise BracketError(f"secular root escaped the gap ({d[g]!r}, {d[g + 1]!r})")
    return roots[(roots >= lo) & (roots <= hi)]


def secular_spectrum(model, window=None):
    """secular_roots packaged as a SpectralResult, with u = theta/(lambda - mu)."""
    roots = secular_roots(model, window)
    lam = model.lambdas
    scale = max(1.0, float(np.abs(lam).max()))
    th_norm = math.sqrt(abs(model.h0_inner(model.theta_vec, model.theta_vec)))
    res = []
    for mu in roots:
        u = model.theta_vec / (lam - mu)
        nu = math.sqrt(abs(model.h0_inner(u, u)))
        r1 = math.sqrt(abs(model.h0_inner((lam - mu) * u - model.theta_vec,
                                          (lam - mu) * u - model.theta_vec))) / (scale * nu)
        r2 = abs(model.pairing(u)) / (th_norm * nu)
        res.append((r1, r2))
    return SpectralResult(roots, [map_lambda_to_w(x) for x in roots], res, "secular")


# ------------------------------------------------------ generalized eigen

def hermitian_eig(matrix, gram, backend=None):
    """Generalized eigenpairs of (A, B) with B Hermitian positive definite.

    Congruence with the Cholesky factor of B, then cyclic Jacobi (or LAPACK
    above JACOBI_MAX).  Returns (ascending eigenvalues, B-orthonormal vectors).
    """
    a = np.asarray(matrix)
    b = np.asarray(gram)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PreconditionError("matrix and gram must be square and the same size")
    try:
        L = np.linalg.cholesky(b)
    except np.linalg.LinAlgError as exc:
        raise PreconditionError("gram matrix is not positive definite") from exc
    if not np.all(np.isfinite(L)) or np.min(np.abs(np.diag(L))) == 0:
        raise PreconditionError("gram matrix is not positive definite")
    x = np.linalg.solve(L, a)
    c = np.linalg.solve(L, x.conj().T).conj().T
    c = 0.5 * (c + c.conj().T)
    real = not np.iscomplexobj(c) or not np.any(c.imag)
    if real:
        c = c.real
    n = c.shape[0]
    if n <= JACOBI_MAX:
        impl = kernels if backend is None else kernels.backend(backend)
        try:
            vals, vecs, _ = impl.jacobi_hermitian(c)
        except RuntimeError as exc:
            raise NonConvergenceError(str(exc)) from exc
        order = np.argsort(vals, kind="stable")
        vals, vecs = vals[order], vecs[:, order]
    else:
        vals, vecs = np.linalg.eigh(c)
    vecs = np.linalg.solve(L.conj().T, vecs)
    norm_a = max(np.linalg.norm(a, 2) if n <= JACOBI_MAX else np.abs(a).sum(axis=0).max(), 1e-300)
    resid = np.linalg.norm(a @ vecs - (b @ vecs) * vals, axis=0)
    if resid.max(initial=0.0) > EIG_RESIDUAL * norm_a * max(1, math.sqrt(n)):
        raise NonConvergenceError(f"eigen residual {resid.max():.3g} exceeds tolerance")
    return np.asarray(vals, dtype=float), vecs


# ------------------------------------------------------ constrained eigen

def _kernel_frame(model):
    """Scaling, phases and Householder data of an H^1-orthonormal kernel basis.

    In coordinates y_j = p_j sqrt(w_j (c - lambda_j)) u_j, with the phase p_j
    chosen so that the constraint vector is real, the H^1 metric is the
    identity and the constraint is y . z = 0 with z >= 0 (so u = phase * y / scale).
    """
    lam = model.lambdas
    w = model.weights
    gap = model.c_shift - lam
    th = model.theta_vec
    mag = np.abs(th)
    phase = np.where(mag > 0, th / np.where(mag > 0, mag, 1.0), 1.0)
    scale = np.sqrt(w * gap)
    z = mag * np.sqrt(w / gap)
    nz = np.linalg.norm(z)
    if nz == 0:
        raise IndeterminateError("all theta entries vanish; the constraint is empty")
    v = z / nz
    v[0] += 1.0
    beta = 1.0 / v[0]          # P = I - beta v v^T, P z = -|z| e_0
    return lam, gap, phase, scale, v, beta


def _kernel_gram(dvec, v, beta):
    """(P diag(dvec) P)[1:, 1:] for the reflector P = I - beta v v^T."""
    dv = dvec * v
    vdv = float(v @ dv)
    m = np.diag(dvec) - beta * (np.outer(v, dv) + np.outer(dv, v)) + beta * beta * vdv * np.outer(v, v)
    return m[1:, 1:]


def kernel_basis(model):
    """Columns: an H^1-orthonormal basis of ker theta~ in u coordinates."""
    lam, gap, phase, scale, v, beta = _kernel_frame(model)
    n = lam.size
    p = np.eye(n) - beta * np.outer(v, v)
    return (phase[:, None] * p[:, 1:]) / scale[:, None]


def constrained_spectrum(model, backend=None):
    """Spectrum of M compressed to ker theta~ (the discrete Friedrichs extension)."""
    lam, gap, phase, scale, v, beta = _kernel_frame(model)
    gram = _kernel_gram(1.0 / gap, v, beta)        # H^0 gram
    form = _kernel_gram(lam / gap, v, beta)        # multiplication form
    vals, vecs = hermitian_eig(form, gram, backend)
    if np.iscomplexobj(vals) and np.any(np.abs(np.imag(vals)) > 0):
        raise NonConvergenceError("non-real eigenvalue")
    # back to u coordinates for the residual report
    full = np.vstack([np.zeros((1, vecs.shape[1])), vecs])
    y = full - beta * np.outer(v, v @ full)
    u = (phase[:, None] * y) / scale[:, None]
    res = _pair_residuals(model, vals, u)
    return SpectralResult(np.asarray(vals, dtype=float), [map_lambda_to_w(x) for x in vals],
                          res, "constrained-eig", u)


def _pair_residuals(model, vals, u):
    lam = model.lambdas
    w = model.weights
    th = model.theta_vec
    scale = max(1.0, float(np.abs(lam).max()))
    th_norm = math.sqrt(float(np.sum(w * np.abs(th) ** 2)))
    out = []
    for k, mu in enumerate(vals):
        uk = u[:, k]
        nu = math.sqrt(float(np.sum(w * np.abs(uk) ** 2)))
        r = (lam - mu) * uk
        alpha = np.sum(w * r * np.conj(th)) / th_norm ** 2
        d = r - alpha * th
        r1 = math.sqrt(float(np.sum(w * np.abs(d) ** 2))) / (scale * nu)
        r2 = abs(np.sum(w * np.conj(th) * uk)) / (th_norm * nu)
        out.append((r1, r2))
    return out


# ------------------------------------------------------------ Riesz map

def riesz_inverse(model, f, n_checks=8, seed=0):
    """The map A: H^0 -> H^1 with <A f, g>_1 = <f, g>_0, i.e. f / (c - lambda)."""
    f = np.asarray(f, dtype=complex)
    if f.shape != model.theta_vec.shape:
        raise PreconditionError("f has the wrong length")
    u = f / (model.c_shift - model.lambdas)
    rng = np.random.default_rng(seed)
    for _ in range(n_checks):
        g = rng.standard_normal(f.size) + 1j * rng.standard_normal(f.size)
        lhs = model.h1_inner(u, g)
        rhs = model.h0_inner(f, g)
        size = math.sqrt(abs(model.h0_inner(f, f)) * abs(model.h0_inner(g, g)))
        if abs(lhs - rhs) > 1e-12 * max(size, 1e-300):
            raise NonConvergenceError("Riesz identity violated")
    return u


def map_lambda_to_w(lam):
    """Solutions of w (w - 1) = lambda, upper/right one first."""
    lam = float(lam)
    disc = lam + 0.25
    if disc == 0:
        return (complex(0.5, 0.0),)
    if disc < 0:
        r = math.sqrt(-disc)
        return (complex(0.5, r), complex(0.5, -r))
    r = math.sqrt(disc)
    return (complex(0.5 + r, 0.0), complex(0.5 - r, 0.0))


# ------------------------------------------------------- correspondence

def _mapped_points(vals, t_window):
    pts = []
    for mu in vals:
        w = map_lambda_to_w(mu)[0]
        if mu <= -0.25 and not (t_window[0] - 1.0 <= w.imag <= t_window[1] + 1.0):
            continue
        pts.append((float(mu), w))
    return pts


def spectral_zero_correspondence(spec, eta, T, N, window=(0.0, 30.0), c_shift=None,
                                 match_tol=1e-3, doublings=1, check=True, refine_factor=10.0):
    """Match mapped eigenvalues with online_phase_zeros records.

    Runs at (T, N) and at ``doublings`` successive doublings of both.  Level k
    must match every zero within match_tol / refine_factor**k.
    """
    from .zerofinder import online_phase_zeros
    eta = EtaSign(eta)
    zeros = [r for r in online_phase_zeros(spec, eta, window)
             if window[0] <= r.w.imag <= window[1]]
    rep = VerificationReport(f"spectral correspondence {spec.label} eta={eta:+d}")
    levels = []
    for k in range(doublings + 1):
        Tk, Nk = T * 2 ** k, N * 2 ** k
        model = build_model(spec, eta, Tk, Nk, c_shift, check=check and k == 0)
        res = constrained_spectrum(model)
        sec = secular_roots(model)
        if sec.size == res.eigenvalues.size:
            agree = float(np.max(np.abs(sec - res.eigenvalues) / np.maximum(1.0, np.abs(sec)),
                                 initial=0.0))
        else:
            agree = math.inf
        pts = _mapped_points(res.eigenvalues, window)
        pairs = []
        for r in zeros:
            if not pts:
                pairs.append((r.w, None, math.inf))
                continue
            dist = [abs(w - r.w) for _, w in pts]
            j = int(np.argmin(dist))
            pairs.append((r.w, pts[j][1], dist[j]))
        worst = max((p[2] for p in pairs), default=0.0)
        sn = spec.sigma_max
        real_pairs = []
        for mu in res.eigenvalues[res.eigenvalues > -0.25]:
            x = map_lambda_to_w(mu)[0].real
            real_pairs.append({"lambda": float(mu), "w": x,
                               "in_1_minus_sigma_n": bool(1 - sn - 1e-12 <= 1 - x and x <= sn + 1e-12),
                               "in_minus_sigma_n": bool(-sn - 1e-12 <= 1 - x and x <= sn + 1e-12)})
        levels.append({"T": Tk, "N": Nk, "entries": len(model),
                       "t_min": float(model.nodes.min(initial=math.inf)),
                       "kernel_dim": res.eigenvalues.size,
                       "max_pair_distance": worst, "eig_count": int(res.eigenvalues.size),
                       "zero_count": len(zeros), "max_residual": res.max_residual(),
                       "real_pairs": real_pairs, "method_agreement": agree, "result": res,
                       "pairs": pairs})
    first = levels[0]
    unmatched = []
    ok = True
    for k, lv in enumerate(levels):
        tol_k = match_tol / refine_factor ** k
        lv["match_tol"] = tol_k
        # w = 1/2 sits where d w / d lambda is infinite; there the pair can
        # only be as close as the lowest node, t_min.
        end_tol = max(tol_k, 2.0 * lv["t_min"])
        lv["endpoint_tol"] = end_tol
        bad = [p[0] for p in lv["pairs"]
               if not p[2] <= (end_tol if abs(p[0] - 0.5) <= 1e-12 else tol_k)]
        if k == 0:
            unmatched = bad
        ok = ok and not bad and lv["kernel_dim"] == lv["entries"] - 1
    rep.add("correspondence", "pass" if ok else "fail",
            {"levels": [{k: v for k, v in lv.items() if k not in ("pairs", "result")}
                        for lv in levels],
             "pairs": [[[z.real, z.imag], None if w is None else [w.real, w.imag], d]
                       for z, w, d in first["pairs"]],
             "unmatched": [[z.real, z.imag] for z in unmatched]},
            {"match_tol": match_tol})
    worst = max(lv["method_agreement"] for lv in levels)
    rep.add("method_agreement", "pass" if worst <= METHOD_AGREEMENT else "fail",
            {"max_rel_difference": [lv["method_agreement"] for lv in levels]},
            {"rel_tol": METHOD_AGREEMENT})
    resid = max(lv["max_residual"] for lv in levels)
    rep.add("eigen_residuals", "pass" if resid <= PAIR_RESIDUAL else "fail",
            {"max_residual": resid}, {"max_residual": PAIR_RESIDUAL})
    rep.levels = levels
    return rep
