# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; semantics identical to ``_kernels_py``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, log, fabs, INFINITY

cnp.import_array()

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)
    double cabs(double complex)
    double creal(double complex)
    double cimag(double complex)
    double complex conj(double complex)


def hurwitz_em(s, double a, Py_ssize_t n_terms, bern):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] sv = np.atleast_1d(np.asarray(s, dtype=complex))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] b = np.asarray(bern, dtype=float)
    cdef Py_ssize_t n = sv.shape[0]
    cdef Py_ssize_t m = b.shape[0] - 1
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] reg = np.empty(n, dtype=complex)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] pole = np.empty(n, dtype=complex)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] bound = np.empty(n, dtype=float)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] logk = np.log(np.arange(n_terms, dtype=float) + a)
    cdef double x = n_terms + a
    cdef double logx = log(x)
    cdef Py_ssize_t i, k, j
    cdef double complex si, acc, xs, poch, xpow
    cdef double sig
    with nogil:
        for i in range(n):
            si = sv[i]
            acc = 0
            for k in range(n_terms):
                acc = acc + cexp(-si * logk[k])
            xs = cexp(-si * logx)
            acc = acc + 0.5 * xs
            pole[i] = x * xs
            poch = si
            xpow = xs / x
            for j in range(1, m + 1):
                acc = acc + b[j - 1] * poch * xpow
                poch = poch * (si + 2 * j - 1) * (si + 2 * j)
                xpow = xpow / (x * x)
            reg[i] = acc
            sig = creal(si) + 2 * m + 1
            if sig > 0:
                bound[i] = fabs(b[m]) * cabs(poch * xpow) * cabs(si + 2 * m + 1) / sig
            else:
                bound[i] = INFINITY
    return reg, pole, bound


def jacobi_hermitian(a_in, double tol=1e-15, int max_sweeps=60):
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] a = np.array(a_in, dtype=complex, copy=True, order="C")
    cdef Py_ssize_t n = a.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] v = np.eye(n, dtype=complex)
    cdef double scale = np.linalg.norm(a)
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double off, mag, app, aqq, tau, t, c, sn
    cdef double complex apq, ph, phc, xp, xq
    if n < 2 or scale == 0.0:
        return a.diagonal().real.copy(), v, 0
    for sweep in range(1, max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q:
                    off += creal(a[p, q]) * creal(a[p, q]) + cimag(a[p, q]) * cimag(a[p, q])
        if sqrt(off) <= tol * scale:
            return a.diagonal().real.copy(), v, sweep - 1
        with nogil:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    mag = cabs(apq)
                    if mag == 0.0:
                        continue
                    app = creal(a[p, p])
                    aqq = creal(a[q, q])
                    ph = apq / mag
                    phc = conj(ph)
                    tau = (aqq - app) / (2.0 * mag)
                    if tau >= 0:
                        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    sn = t * c
                    for k in range(n):
                        xp = a[k, p]
                        xq = a[k, q]
                        a[k, p] = c * xp - sn * phc * xq
                        a[k, q] = sn * xp + c * phc * xq
                    for k in range(n):
                        xp = a[p, k]
                        xq = a[q, k]
                        a[p, k] = c * xp - sn * ph * xq
                        a[q, k] = sn * xp + c * ph * xq
                    a[p, q] = 0
                    a[q, p] = 0
                    a[p, p] = creal(a[p, p])
                    a[q, q] = creal(a[q, q])
                    for k in range(n):
                        xp = v[k, p]
                        xq = v[k, q]
                        v[k, p] = c * xp - sn * phc * xq
                        v[k, q] = sn * xp + c * phc * xq
    raise RuntimeError("Jacobi iteration did not converge")


cdef inline double _fshift(const double* d, const double* z, Py_ssize_t n,
                           double origin, double delta) nogil:
    cdef double acc = 0.0
    cdef Py_ssize_t j
    for j in range(n):
        acc += z[j] / ((d[j] - origin) - delta)
    return acc


def secular_gap_roots(d_in, z_in, gaps_in, int max_iter=200):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.ascontiguousarray(d_in, dtype=float)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] z = np.ascontiguousarray(z_in, dtype=float)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] gaps = np.ascontiguousarray(gaps_in, dtype=np.int64)
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t ng = gaps.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(ng)
    cdef Py_ssize_t i, g
    cdef int it
    cdef double left, right, width, fmid, origin, lo, hi, flo, fhi, span, x, fx, sec
    cdef const double* dp = &d[0]
    cdef const double* zp = &z[0]
    with nogil:
        for i in range(ng):
            g = gaps[i]
            left = dp[g]
            right = dp[g + 1]
            width = right - left
            fmid = _fshift(dp, zp, n, left, 0.5 * width)
            if fmid >= 0.0:
                origin = left
                lo = 0.0
                hi = 0.5 * width
                flo = -INFINITY
                fhi = fmid
            else:
                origin = right
                lo = -0.5 * width
                hi = 0.0
                flo = fmid
                fhi = INFINITY
            for it in range(max_iter):
                span = hi - lo
                if span <= 4e-16 * (fabs(lo) if fabs(lo) > fabs(hi) else fabs(hi)) + 1e-300:
                    break
                x = 0.5 * (lo + hi)
                if flo != -INFINITY and fhi != INFINITY and it % 3 != 2:
                    sec = lo - flo * (hi - lo) / (fhi - flo)
                    if sec > lo + 0.05 * span and sec < hi - 0.05 * span:
                        x = sec
                fx = _fshift(dp, zp, n, origin, x)
                if fx >= 0.0:
                    hi = x
                    fhi = fx
                else:
                    lo = x
                    flo = fx
            out[i] = origin + 0.5 * (lo + hi)
    return out
