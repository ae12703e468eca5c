# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled evaluation kernels.

Same contracts as `_kernels_py` (the numpy fallback); the parity tests in
tests/test_kernels.py hold the two implementations together.  Everything
here is a flat per-point loop so quadrature batches stay cheap.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport NAN, cos, sin, sqrt

BACKEND_NAME = "cython"
RECORD_WIDTH = 33

cdef Py_ssize_t _WIDTH = 33
cdef int _MAXDEG = 32


cdef inline void _powers(double v, Py_ssize_t deg, double* out) noexcept nogil:
    cdef Py_ssize_t a
    out[0] = 1.0
    for a in range(1, deg + 1):
        out[a] = out[a - 1] * v


cdef inline double _quad(const double* h6, const double* a, const double* b) noexcept nogil:
    # h6 layout: xx yy zz xy xz yz
    return (
        h6[0] * a[0] * b[0] + h6[1] * a[1] * b[1] + h6[2] * a[2] * b[2]
        + h6[3] * (a[0] * b[1] + a[1] * b[0])
        + h6[4] * (a[0] * b[2] + a[2] * b[0])
        + h6[5] * (a[1] * b[2] + a[2] * b[1])
    )


cdef inline void _jet_point(
    const cnp.int64_t[:, ::1] exps, const double[::1] coefs, Py_ssize_t m,
    Py_ssize_t deg, double x, double y, double z,
    double* val, double* grad, double* hess6,
) noexcept nogil:
    cdef double px[33]
    cdef double py_[33]
    cdef double pz[33]
    cdef Py_ssize_t q, i, j, k
    cdef double c
    _powers(x, deg, px)
    _powers(y, deg, py_)
    _powers(z, deg, pz)
    val[0] = 0.0
    grad[0] = grad[1] = grad[2] = 0.0
    hess6[0] = hess6[1] = hess6[2] = hess6[3] = hess6[4] = hess6[5] = 0.0
    for q in range(m):
        i = exps[q, 0]
        j = exps[q, 1]
        k = exps[q, 2]
        c = coefs[q]
        val[0] += c * px[i] * py_[j] * pz[k]
        if i > 0:
            grad[0] += c * i * px[i - 1] * py_[j] * pz[k]
        if j > 0:
            grad[1] += c * j * px[i] * py_[j - 1] * pz[k]
        if k > 0:
            grad[2] += c * k * px[i] * py_[j] * pz[k - 1]
        if i > 1:
            hess6[0] += c * i * (i - 1) * px[i - 2] * py_[j] * pz[k]
        if j > 1:
            hess6[1] += c * j * (j - 1) * px[i] * py_[j - 2] * pz[k]
        if k > 1:
            hess6[2] += c * k * (k - 1) * px[i] * py_[j] * pz[k - 2]
        if i > 0 and j > 0:
            hess6[3] += c * i * j * px[i - 1] * py_[j - 1] * pz[k]
        if i > 0 and k > 0:
            hess6[4] += c * i * k * px[i - 1] * py_[j] * pz[k - 1]
        if j > 0 and k > 0:
            hess6[5] += c * j * k * px[i] * py_[j - 1] * pz[k - 1]


cdef Py_ssize_t _max_degree(const cnp.int64_t[:, ::1] exps) except -1:
    cdef Py_ssize_t q
    cdef Py_ssize_t deg = 0
    cdef Py_ssize_t d
    for q in range(exps.shape[0]):
        d = exps[q, 0] + exps[q, 1] + exps[q, 2]
        if d > deg:
            deg = d
    if deg > _MAXDEG:
        raise ValueError(f"polynomial degree {deg} exceeds kernel limit {_MAXDEG}")
    return deg


def poly_eval_batch(exps, coefs, pts):
    """Values of the polynomial at each row of pts (k, 3)."""
    cdef cnp.int64_t[:, ::1] ev = np.ascontiguousarray(exps, dtype=np.int64)
    cdef double[::1] cv = np.ascontiguousarray(coefs, dtype=np.float64)
    cdef double[:, ::1] p = np.ascontiguousarray(pts, dtype=np.float64)
    cdef Py_ssize_t k = p.shape[0]
    cdef Py_ssize_t m = ev.shape[0]
    cdef Py_ssize_t deg = _max_degree(ev)
    out_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef double val
    cdef double grad[3]
    cdef double hess6[6]
    cdef Py_ssize_t r
    with nogil:
        for r in range(k):
            _jet_point(ev, cv, m, deg, p[r, 0], p[r, 1], p[r, 2], &val, grad, hess6)
            out[r] = val
    return out_arr


def poly_jet_batch(exps, coefs, pts):
    """Value, gradient and symmetric Hessian at each row of pts (k, 3)."""
    cdef cnp.int64_t[:, ::1] ev = np.ascontiguousarray(exps, dtype=np.int64)
    cdef double[::1] cv = np.ascontiguousarray(coefs, dtype=np.float64)
    cdef double[:, ::1] p = np.ascontiguousarray(pts, dtype=np.float64)
    cdef Py_ssize_t k = p.shape[0]
    cdef Py_ssize_t m = ev.shape[0]
    cdef Py_ssize_t deg = _max_degree(ev)
    val_arr = np.empty(k, dtype=np.float64)
    grad_arr = np.empty((k, 3), dtype=np.float64)
    hess_arr = np.empty((k, 3, 3), dtype=np.float64)
    cdef double[::1] val = val_arr
    cdef double[:, ::1] grad = grad_arr
    cdef double[:, :, ::1] hess = hess_arr
    cdef double v
    cdef double g[3]
    cdef double h6[6]
    cdef Py_ssize_t r
    with nogil:
        for r in range(k):
            _jet_point(ev, cv, m, deg, p[r, 0], p[r, 1], p[r, 2], &v, g, h6)
            val[r] = v
            grad[r, 0] = g[0]
            grad[r, 1] = g[1]
            grad[r, 2] = g[2]
            hess[r, 0, 0] = h6[0]
            hess[r, 1, 1] = h6[1]
            hess[r, 2, 2] = h6[2]
            hess[r, 0, 1] = h6[3]
            hess[r, 1, 0] = h6[3]
            hess[r, 0, 2] = h6[4]
            hess[r, 2, 0] = h6[4]
            hess[r, 1, 2] = h6[5]
            hess[r, 2, 1] = h6[5]
    return val_arr, grad_arr, hess_arr


def surface_record_batch(exps, coefs, s, t):
    """Fused geometry record; column layout in `_record`."""
    cdef cnp.int64_t[:, ::1] ev = np.ascontiguousarray(exps, dtype=np.int64)
    cdef double[::1] cv = np.ascontiguousarray(coefs, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(s, dtype=np.float64)
    cdef double[::1] tv = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t k = sv.shape[0]
    cdef Py_ssize_t m = ev.shape[0]
    cdef Py_ssize_t deg = _max_degree(ev)
    out_arr = np.empty((k, RECORD_WIDTH), dtype=np.float64)
    cdef double[:, ::1] out = out_arr

    cdef Py_ssize_t r, a
    cdef double sin_s, cos_s, sin_t, cos_t
    cdef double phi[3]
    cdef double phi_s[3]
    cdef double phi_t[3]
    cdef double phi_ss[3]
    cdef double phi_st[3]
    cdef double phi_tt[3]
    cdef double x[3]
    cdef double xs[3]
    cdef double xt[3]
    cdef double xss[3]
    cdef double xst[3]
    cdef double xtt[3]
    cdef double cr[3]
    cdef double nrm[3]
    cdef double grad[3]
    cdef double h6[6]
    cdef double p, p_s, p_t, p_ss, p_st, p_tt
    cdef double rad, pm54, pm94, r_s, r_t, r_ss, r_st, r_tt
    cdef double e, f, g, cn, ll, mm, nn, metric, msafe
    cdef double gauss, mean, support, dot_xn

    with nogil:
        for r in range(k):
            sin_s = sin(sv[r])
            cos_s = cos(sv[r])
            sin_t = sin(tv[r])
            cos_t = cos(tv[r])
            phi[0] = sin_s * cos_t
            phi[1] = sin_s * sin_t
            phi[2] = cos_s
            phi_s[0] = cos_s * cos_t
            phi_s[1] = cos_s * sin_t
            phi_s[2] = -sin_s
            phi_t[0] = -sin_s * sin_t
            phi_t[1] = sin_s * cos_t
            phi_t[2] = 0.0
            phi_ss[0] = -phi[0]
            phi_ss[1] = -phi[1]
            phi_ss[2] = -phi[2]
            phi_st[0] = -cos_s * sin_t
            phi_st[1] = cos_s * cos_t
            phi_st[2] = 0.0
            phi_tt[0] = -sin_s * cos_t
            phi_tt[1] = -sin_s * sin_t
            phi_tt[2] = 0.0

            _jet_point(ev, cv, m, deg, phi[0], phi[1], phi[2], &p, grad, h6)
            out[r, 0] = p
            if p <= 0.0:
                for a in range(1, _WIDTH):
                    out[r, a] = NAN
                continue

            p_s = grad[0] * phi_s[0] + grad[1] * phi_s[1] + grad[2] * phi_s[2]
            p_t = grad[0] * phi_t[0] + grad[1] * phi_t[1] + grad[2] * phi_t[2]
            p_ss = _quad(h6, phi_s, phi_s) + grad[0] * phi_ss[0] + grad[1] * phi_ss[1] + grad[2] * phi_ss[2]
            p_st = _quad(h6, phi_s, phi_t) + grad[0] * phi_st[0] + grad[1] * phi_st[1] + grad[2] * phi_st[2]
            p_tt = _quad(h6, phi_t, phi_t) + grad[0] * phi_tt[0] + grad[1] * phi_tt[1] + grad[2] * phi_tt[2]

            pm54 = p ** -1.25
            pm94 = p ** -2.25
            rad = p ** -0.25
            r_s = -0.25 * pm54 * p_s
            r_t = -0.25 * pm54 * p_t
            r_ss = 0.3125 * pm94 * p_s * p_s - 0.25 * pm54 * p_ss
            r_st = 0.3125 * pm94 * p_s * p_t - 0.25 * pm54 * p_st
            r_tt = 0.3125 * pm94 * p_t * p_t - 0.25 * pm54 * p_tt

            for a in range(3):
                x[a] = rad * phi[a]
                xs[a] = r_s * phi[a] + rad * phi_s[a]
                xt[a] = r_t * phi[a] + rad * phi_t[a]
                xss[a] = r_ss * phi[a] + 2.0 * r_s * phi_s[a] + rad * phi_ss[a]
                xst[a] = r_st * phi[a] + r_s * phi_t[a] + r_t * phi_s[a] + rad * phi_st[a]
                xtt[a] = r_tt * phi[a] + 2.0 * r_t * phi_t[a] + rad * phi_tt[a]

            e = xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2]
            f = xs[0] * xt[0] + xs[1] * xt[1] + xs[2] * xt[2]
            g = xt[0] * xt[0] + xt[1] * xt[1] + xt[2] * xt[2]
            cr[0] = xs[1] * xt[2] - xs[2] * xt[1]
            cr[1] = xs[2] * xt[0] - xs[0] * xt[2]
            cr[2] = xs[0] * xt[1] - xs[1] * xt[0]
            cn = sqrt(cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2])
            if cn == 0.0:
                cn = 1.0
            nrm[0] = cr[0] / cn
            nrm[1] = cr[1] / cn
            nrm[2] = cr[2] / cn
            dot_xn = x[0] * nrm[0] + x[1] * nrm[1] + x[2] * nrm[2]
            if dot_xn < 0.0:
                nrm[0] = -nrm[0]
                nrm[1] = -nrm[1]
                nrm[2] = -nrm[2]

            ll = xss[0] * nrm[0] + xss[1] * nrm[1] + xss[2] * nrm[2]
            mm = xst[0] * nrm[0] + xst[1] * nrm[1] + xst[2] * nrm[2]
            nn = xtt[0] * nrm[0] + xtt[1] * nrm[1] + xtt[2] * nrm[2]
            metric = e * g - f * f
            msafe = metric if metric != 0.0 else 1.0
            gauss = (ll * nn - mm * mm) / msafe
            mean = (e * nn - 2.0 * f * mm + g * ll) / (2.0 * msafe)
            support = x[0] * nrm[0] + x[1] * nrm[1] + x[2] * nrm[2]

            out[r, 1] = rad
            for a in range(3):
                out[r, 2 + a] = x[a]
                out[r, 5 + a] = xs[a]
                out[r, 8 + a] = xt[a]
                out[r, 11 + a] = xss[a]
                out[r, 14 + a] = xst[a]
                out[r, 17 + a] = xtt[a]
                out[r, 26 + a] = nrm[a]
            out[r, 20] = e
            out[r, 21] = f
            out[r, 22] = g
            out[r, 23] = ll
            out[r, 24] = mm
            out[r, 25] = nn
            out[r, 29] = mean
            out[r, 30] = gauss
            out[r, 31] = support
            out[r, 32] = sqrt(metric) if metric > 0.0 else 0.0
    return out_arr
