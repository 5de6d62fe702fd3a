"""Pure-Python (numpy) implementations of the hot kernels.

Every function here has a compiled twin in ``_ext.pyx`` with the same
signature and semantics; ``critline.kernels`` picks one at import time.
"""

import numpy as np


def hurwitz_em(s, a, n_terms, bern):
    """Euler-Maclaurin pieces of the Hurwitz zeta function.

    Returns ``(regular, pole, bound)`` so that
    ``zeta(s, a) = regular + pole / (s - 1)`` with
    ``|error| <= bound``.  ``bern[j-1]`` holds ``B_{2j} / (2j)!``; the last
    entry is used only for the remainder bound.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    k = np.arange(n_terms, dtype=float) + a
    logk = np.log(k)
    # (n_terms, len(s)) is fine at the sizes used here.
    head = np.exp(-np.outer(logk, s)).sum(axis=0)
    x = n_terms + a
    logx = np.log(x)
    xs = np.exp(-s * logx)
    reg = head + 0.5 * xs
    pole = x * xs
    poch = s.copy()
    xpow = xs / x
    m = len(bern) - 1
    for j in range(1, m + 1):
        reg = reg + bern[j - 1] * poch * xpow
        poch = poch * (s + 2 * j - 1) * (s + 2 * j)
        xpow = xpow / (x * x)
    nxt = np.abs(bern[m] * poch * xpow)
    sig = s.real + 2 * m + 1
    with np.errstate(divide="ignore", invalid="ignore"):
        bound = np.where(sig > 0, nxt * np.abs(s + 2 * m + 1) / sig, np.inf)
    return reg, pole, bound


def jacobi_hermitian(a, tol=1e-15, max_sweeps=60):
    """Cyclic Jacobi eigen-decomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)``; eigenvalues unsorted.
    Raises ``RuntimeError`` when ``max_sweeps`` is exhausted.
    """
    a = np.array(a, dtype=complex, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return a.diagonal().real.copy(), v, 0
    for sweep in range(1, max_sweeps + 1):
        off = np.sqrt(max(np.linalg.norm(a) ** 2 - np.sum(np.abs(a.diagonal()) ** 2), 0.0))
        if off <= tol * scale:
            return a.diagonal().real.copy(), v, sweep - 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                ph = apq / mag
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * c
                ph_c = ph.conjugate()
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - sn * ph_c * colq
                a[:, q] = sn * colp + c * ph_c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - sn * ph * rowq
                a[q, :] = sn * rowp + c * ph * rowq
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - sn * ph_c * vq
                v[:, q] = sn * vp + c * ph_c * vq
    raise RuntimeError("Jacobi iteration did not converge")


def secular_gap_roots(d, z, gaps, max_iter=200):
    """Roots of F(mu) = sum z_j / (d_j - mu) inside ``(d[g], d[g+1])``.

    ``d`` ascending, ``z > 0``.  Shifted-origin bisection/secant per gap.
    Returns an array with one root per requested gap index.
    """
    d = np.asarray(d, dtype=float)
    z = np.asarray(z, dtype=float)
    gaps = np.asarray(gaps, dtype=np.int64)
    out = np.empty(len(gaps))
    chunk = max(1, int(4_000_000 // max(len(d), 1)))
    for start in range(0, len(gaps), chunk):
        g = gaps[start:start + chunk]
        out[start:start + chunk] = _gap_roots_block(d, z, g, max_iter)
    return out


def _fshift(diff, z, delta):
    return (z[None, :] / (diff - delta[:, None])).sum(axis=1)


def _gap_roots_block(d, z, g, max_iter):
    left = d[g]
    right = d[g + 1]
    width = right - left
    diff_left = d[None, :] - left[:, None]
    f_mid = _fshift(diff_left, z, 0.5 * width)
    use_left = f_mid >= 0.0
    origin = np.where(use_left, left, right)
    diff = np.where(use_left[:, None], diff_left, d[None, :] - right[:, None])
    lo = np.where(use_left, 0.0, -0.5 * width)
    hi = np.where(use_left, 0.5 * width, 0.0)
    # F is increasing on the gap: F(lo) < 0 < F(hi).
    f_lo = np.where(use_left, -np.inf, f_mid)
    f_hi = np.where(use_left, f_mid, np.inf)
    active = np.ones(len(g), dtype=bool)
    for it in range(max_iter):
        span = hi - lo
        done = span <= 4e-16 * np.maximum(np.abs(lo), np.abs(hi)) + 1e-300
        active &= ~done
        if not active.any():
            break
        mid = 0.5 * (lo + hi)
        finite = np.isfinite(f_lo) & np.isfinite(f_hi)
        with np.errstate(invalid="ignore", divide="ignore"):
            sec = lo - f_lo * (hi - lo) / (f_hi - f_lo)
        ok = finite & (sec > lo + 0.05 * span) & (sec < hi - 0.05 * span) & (it % 3 != 2)
        x = np.where(ok, sec, mid)
        fx = _fshift(diff, z, x)
        pos = fx >= 0.0
        hi = np.where(active & pos, x, hi)
        f_hi = np.where(active & pos, fx, f_hi)
        lo = np.where(active & ~pos, x, lo)
        f_lo = np.where(active & ~pos, fx, f_lo)
    return origin + 0.5 * (lo + hi)
