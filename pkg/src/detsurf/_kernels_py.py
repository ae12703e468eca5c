"""Pure-numpy implementation of the evaluation kernels.

This is the fallback used when the compiled extension is unavailable (or
explicitly disabled); see `_backend`.  Both implementations must agree to
floating-point noise -- the parity test suite holds them together.
"""

from __future__ import annotations

import numpy as np

from . import _record as rec

BACKEND_NAME = "python"
RECORD_WIDTH = rec.WIDTH


def poly_eval_batch(exps, coefs, pts):
    """Evaluate sum_m coefs[m] * x^i y^j z^k at each row of pts.

    exps is (m, 3) int64, coefs (m,) float64, pts (k, 3) float64.
    """
    pts = np.ascontiguousarray(pts, dtype=float)
    terms = _term_matrix(exps, pts)
    return terms @ coefs


def poly_jet_batch(exps, coefs, pts):
    """Value, gradient and Hessian of the polynomial at each row of pts.

    Returns (val (k,), grad (k, 3), hess (k, 3, 3)); the Hessian is exactly
    symmetric by construction.
    """
    pts = np.ascontiguousarray(pts, dtype=float)
    k = pts.shape[0]
    deg = int(exps.sum(axis=1).max()) if len(exps) else 0
    pw = _power_tables(pts, deg)
    i, j, l = exps[:, 0], exps[:, 1], exps[:, 2]

    def tm(ei, ej, el, factor):
        # term matrix with shifted exponents; `factor` zeroes invalid shifts
        t = pw[0][:, np.maximum(ei, 0)] * pw[1][:, np.maximum(ej, 0)] * pw[2][:, np.maximum(el, 0)]
        return t @ (coefs * factor)

    val = tm(i, j, l, np.ones_like(coefs))
    grad = np.empty((k, 3))
    grad[:, 0] = tm(i - 1, j, l, i.astype(float))
    grad[:, 1] = tm(i, j - 1, l, j.astype(float))
    grad[:, 2] = tm(i, j, l - 1, l.astype(float))
    hess = np.empty((k, 3, 3))
    hess[:, 0, 0] = tm(i - 2, j, l, (i * (i - 1)).astype(float))
    hess[:, 1, 1] = tm(i, j - 2, l, (j * (j - 1)).astype(float))
    hess[:, 2, 2] = tm(i, j, l - 2, (l * (l - 1)).astype(float))
    hess[:, 0, 1] = hess[:, 1, 0] = tm(i - 1, j - 1, l, (i * j).astype(float))
    hess[:, 0, 2] = hess[:, 2, 0] = tm(i - 1, j, l - 1, (i * l).astype(float))
    hess[:, 1, 2] = hess[:, 2, 1] = tm(i, j - 1, l - 1, (j * l).astype(float))
    return val, grad, hess


def surface_record_batch(exps, coefs, s, t):
    """Fill the geometry record (see `_record`) for parameter arrays s, t.

    Rows with a non-positive polynomial value get NaN geometry; the caller
    turns those into a definiteness error.
    """
    s = np.ascontiguousarray(s, dtype=float)
    t = np.ascontiguousarray(t, dtype=float)
    k = s.shape[0]
    sin_s, cos_s = np.sin(s), np.cos(s)
    sin_t, cos_t = np.sin(t), np.cos(t)

    phi = np.stack([sin_s * cos_t, sin_s * sin_t, cos_s], axis=1)
    phi_s = np.stack([cos_s * cos_t, cos_s * sin_t, -sin_s], axis=1)
    phi_t = np.stack([-sin_s * sin_t, sin_s * cos_t, np.zeros(k)], axis=1)
    phi_ss = -phi
    phi_st = np.stack([-cos_s * sin_t, cos_s * cos_t, np.zeros(k)], axis=1)
    phi_tt = np.stack([-sin_s * cos_t, -sin_s * sin_t, np.zeros(k)], axis=1)

    p, grad, hess = poly_jet_batch(exps, coefs, phi)

    def dot(a, b):
        return np.einsum("ij,ij->i", a, b)

    def quad(a, b):
        return np.einsum("ij,ijk,ik->i", a, hess, b)

    p_s = dot(grad, phi_s)
    p_t = dot(grad, phi_t)
    p_ss = quad(phi_s, phi_s) + dot(grad, phi_ss)
    p_st = quad(phi_s, phi_t) + dot(grad, phi_st)
    p_tt = quad(phi_t, phi_t) + dot(grad, phi_tt)

    bad = p <= 0.0
    p_safe = np.where(bad, 1.0, p)

    pm54 = p_safe ** -1.25
    pm94 = p_safe ** -2.25
    r = p_safe ** -0.25
    r_s = -0.25 * pm54 * p_s
    r_t = -0.25 * pm54 * p_t
    r_ss = 0.3125 * pm94 * p_s * p_s - 0.25 * pm54 * p_ss
    r_st = 0.3125 * pm94 * p_s * p_t - 0.25 * pm54 * p_st
    r_tt = 0.3125 * pm94 * p_t * p_t - 0.25 * pm54 * p_tt

    def comb(a, u, b, v):
        return a[:, None] * u + b[:, None] * v

    x = r[:, None] * phi
    xs = comb(r_s, phi, r, phi_s)
    xt = comb(r_t, phi, r, phi_t)
    xss = r_ss[:, None] * phi + 2.0 * r_s[:, None] * phi_s + r[:, None] * phi_ss
    xst = r_st[:, None] * phi + r_s[:, None] * phi_t + r_t[:, None] * phi_s + r[:, None] * phi_st
    xtt = r_tt[:, None] * phi + 2.0 * r_t[:, None] * phi_t + r[:, None] * phi_tt

    e = dot(xs, xs)
    f = dot(xs, xt)
    g = dot(xt, xt)
    cross = np.cross(xs, xt)
    cross_norm = np.linalg.norm(cross, axis=1)
    cross_norm_safe = np.where(cross_norm == 0.0, 1.0, cross_norm)
    normal = cross / cross_norm_safe[:, None]
    flip = dot(x, normal) < 0.0
    normal[flip] *= -1.0

    ll = dot(xss, normal)
    mm = dot(xst, normal)
    nn = dot(xtt, normal)
    metric = e * g - f * f
    metric_safe = np.where(metric == 0.0, 1.0, metric)
    gauss = (ll * nn - mm * mm) / metric_safe
    mean = (e * nn - 2.0 * f * mm + g * ll) / (2.0 * metric_safe)
    support = dot(x, normal)

    out = np.empty((k, rec.WIDTH))
    out[:, rec.P] = p
    out[:, rec.R] = r
    out[:, rec.X : rec.X + 3] = x
    out[:, rec.XS : rec.XS + 3] = xs
    out[:, rec.XT : rec.XT + 3] = xt
    out[:, rec.XSS : rec.XSS + 3] = xss
    out[:, rec.XST : rec.XST + 3] = xst
    out[:, rec.XTT : rec.XTT + 3] = xtt
    out[:, rec.E] = e
    out[:, rec.F] = f
    out[:, rec.G] = g
    out[:, rec.L] = ll
    out[:, rec.M] = mm
    out[:, rec.N] = nn
    out[:, rec.NORMAL : rec.NORMAL + 3] = normal
    out[:, rec.H] = mean
    out[:, rec.K] = gauss
    out[:, rec.SUPPORT] = support
    out[:, rec.SQRT_METRIC] = np.sqrt(np.maximum(metric, 0.0))
    if bad.any():
        out[bad, rec.R :] = np.nan
    return out


def _term_matrix(exps, pts):
    deg = int(exps.sum(axis=1).max()) if len(exps) else 0
    pw = _power_tables(pts, deg)
    return pw[0][:, exps[:, 0]] * pw[1][:, exps[:, 1]] * pw[2][:, exps[:, 2]]


def _power_tables(pts, deg):
    # pw[v][:, a] == pts[:, v] ** a for a = 0 .. deg
    k = pts.shape[0]
    tables = []
    for v in range(3):
        tab = np.empty((k, deg + 1))
        tab[:, 0] = 1.0
        for a in range(1, deg + 1):
            tab[:, a] = tab[:, a - 1] * pts[:, v]
        tables.append(tab)
    return tables
