"""Integration backends over the (s, t) parameter rectangle / unit sphere.

Three interchangeable schemes: globally adaptive bisection with an embedded
tensor-product Gauss-Kronrod 7/15 pair, seeded pseudo-Monte Carlo, and
spherical t-design averaging.  Integrands receive coordinate arrays and
must return a value array (vectorized, pure).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import AccuracyError, InvalidDesignError, ParseError

ADAPTIVE_G5 = "AdaptiveG5"
ADAPTIVE_G7 = "AdaptiveG7"
MONTE_CARLO = "MonteCarlo"
DESIGN_T = "DesignT"

# Gauss-Kronrod 7/15 pair on [-1, 1] (classic QUADPACK constants).  The
# 7-point Gauss nodes are the odd-indexed Kronrod nodes; _WG15 carries the
# Gauss weights at those positions and zeros elsewhere, so both rule values
# come from one 15x15 tensor evaluation.
_XGK_HALF = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
)
_WGK_HALF = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG_HALF = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_NODES = np.array([-x for x in _XGK_HALF[:7]] + [0.0] + [x for x in reversed(_XGK_HALF[:7])])
_WK15 = np.array(list(_WGK_HALF[:7]) + [_WGK_HALF[7]] + list(reversed(_WGK_HALF[:7])))
_WG15 = np.zeros(15)
_WG15[1:14:2] = list(_WG_HALF[:3]) + [_WG_HALF[3]] + list(reversed(_WG_HALF[:3]))

_ABS_FLOOR = 1e-14


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    method_tag: str


def _rule_pair(g, rect):
    """(Kronrod value, |Kronrod - Gauss|) of g on one rectangle."""
    (s0, s1), (t0, t1) = rect
    hs, ht = 0.5 * (s1 - s0), 0.5 * (t1 - t0)
    cs, ct = 0.5 * (s1 + s0), 0.5 * (t1 + t0)
    sn = cs + hs * _NODES
    tn = ct + ht * _NODES
    ss, tt = np.meshgrid(sn, tn, indexing="ij")
    vals = np.asarray(g(ss.ravel(), tt.ravel()), dtype=float).reshape(15, 15)
    scale = hs * ht
    res_k = scale * float(_WK15 @ vals @ _WK15)
    res_g = scale * float(_WG15 @ vals @ _WG15)
    return res_k, abs(res_k - res_g)


def integrate_adaptive(g, rect, rel_tol=1e-7, max_rects=200000) -> QuadratureResult:
    """Globally adaptive cubature of g over rect = ((s0, s1), (t0, t1)).

    The rectangle with the largest error estimate is bisected along its
    longer side until the summed estimate drops below
    max(rel_tol * |value|, 1e-14).  Nodes are strictly interior, so
    integrands may be singular on the boundary.  Deterministic: the
    subdivision order and final summation order are fixed.
    """
    if not (1e-12 <= rel_tol <= 1e-2):
        raise ValueError("rel_tol must lie in [1e-12, 1e-2]")
    (s0, s1), (t0, t1) = rect
    if not (s1 > s0 and t1 > t0):
        raise ValueError("rectangle is empty")

    tag = ADAPTIVE_G7 if rel_tol <= 1e-6 else ADAPTIVE_G5
    seq = 0
    val, err = _rule_pair(g, rect)
    heap = [(-err, seq, rect, val)]
    total_val, total_err = val, err
    count = 1

    while total_err > max(rel_tol * abs(total_val), _ABS_FLOOR):
        if count >= max_rects:
            best = math.fsum(entry[3] for entry in sorted(heap, key=lambda e: e[1]))
            raise AccuracyError(
                f"accuracy {rel_tol:g} not reached within {max_rects} rectangles",
                best_estimate=best,
                error_estimate=total_err,
                evaluations=225 * count,
            )
        neg_err, _, (srange, trange), v = heapq.heappop(heap)
        total_err += neg_err
        total_val -= v
        if srange[1] - srange[0] >= trange[1] - trange[0]:
            mid = 0.5 * (srange[0] + srange[1])
            children = ((srange[0], mid), trange), ((mid, srange[1]), trange)
        else:
            mid = 0.5 * (trange[0] + trange[1])
            children = (srange, (trange[0], mid)), (srange, (mid, trange[1]))
        for child in children:
            cval, cerr = _rule_pair(g, child)
            seq += 1
            heapq.heappush(heap, (-cerr, seq, child, cval))
            total_val += cval
            total_err += cerr
            count += 1

    value = math.fsum(entry[3] for entry in sorted(heap, key=lambda e: e[1]))
    error = math.fsum(-entry[0] for entry in heap)
    return QuadratureResult(value, error, 225 * count, tag)


_MC_CHUNK = 65536


def integrate_mc(g, rect, samples, seed) -> QuadratureResult:
    """Plain Monte Carlo estimate with the sample standard error attached.

    The sample stream depends only on the seed (fixed chunk size), so the
    result is bit-identical across runs and thread counts.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    (s0, s1), (t0, t1) = rect
    area = (s1 - s0) * (t1 - t0)
    rng = np.random.default_rng(seed)
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < samples:
        m = min(_MC_CHUNK, samples - done)
        u = rng.random((m, 2))
        vals = np.asarray(
            g(s0 + (s1 - s0) * u[:, 0], t0 + (t1 - t0) * u[:, 1]), dtype=float
        )
        total += float(vals.sum())
        total_sq += float((vals * vals).sum())
        done += m
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0) * samples / (samples - 1)
    return QuadratureResult(
        value=area * mean,
        error_estimate=area * math.sqrt(var / samples),
        evaluations=samples,
        method_tag=MONTE_CARLO,
    )


@dataclass(frozen=True)
class Design:
    """A spherical t-design: N unit vectors whose average integrates
    polynomials up to the declared strength exactly."""

    points: np.ndarray
    strength: int
    source_name: str = ""

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError("design points must form an (N, 3) array")
        norms = np.linalg.norm(pts, axis=1)
        if np.abs(norms - 1.0).max() > 1e-9:
            raise ValueError("design points must be unit vectors (within 1e-9)")
        pts = pts.copy()
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


def _double_factorial(n):
    return math.prod(range(n, 0, -2)) if n > 0 else 1


def sphere_monomial_average(i, j, k):
    """Exact average of x^i y^j z^k over the unit sphere."""
    if i % 2 or j % 2 or k % 2:
        return 0.0
    num = _double_factorial(i - 1) * _double_factorial(j - 1) * _double_factorial(k - 1)
    return float(Fraction(num, _double_factorial(i + j + k + 1)))


def design_exactness_error(points, strength):
    """Largest deviation of design averages from exact sphere averages.

    The deviation for each monomial of total degree <= strength is scaled
    by max(1, |exact average|), so zero moments are judged absolutely.
    """
    pts = np.asarray(points, dtype=float)
    worst = 0.0
    max_deg = strength
    pows = [[pts[:, v] ** a for a in range(max_deg + 1)] for v in range(3)]
    for i in range(max_deg + 1):
        for j in range(max_deg + 1 - i):
            for k in range(max_deg + 1 - i - j):
                avg = float((pows[0][i] * pows[1][j] * pows[2][k]).mean())
                exact = sphere_monomial_average(i, j, k)
                dev = abs(avg - exact) / max(1.0, abs(exact))
                worst = max(worst, dev)
    return worst


def load_design(raw: str, strength: int, source_name: str = "", validate=True) -> Design:
    """Parse a whitespace-separated coordinate file (three reals per point).

    Points within 1e-6 of unit length are renormalized (published tables
    carry limited digits); anything further off is rejected.  When
    `validate` is set, the monomial-exactness property for the declared
    strength is verified to 1e-10 and failures raise InvalidDesignError.
    """
    values = []
    for lineno, line in enumerate(raw.splitlines(), start=1):
        for token in line.split():
            try:
                values.append(float(token))
            except ValueError:
                raise ParseError(f"bad coordinate {token!r}", line=lineno)
    if not values:
        raise ParseError("design file contains no coordinates")
    if len(values) % 3:
        raise ParseError(
            f"coordinate count {len(values)} is not divisible by 3"
        )
    pts = np.array(values, dtype=float).reshape(-1, 3)
    norms = np.linalg.norm(pts, axis=1)
    if np.abs(norms - 1.0).max() > 1e-6:
        i = int(np.argmax(np.abs(norms - 1.0)))
        raise InvalidDesignError(
            f"point {i} has norm {norms[i]!r}, too far from the unit sphere"
        )
    pts /= norms[:, None]
    if validate:
        dev = design_exactness_error(pts, strength)
        if dev > 1e-10:
            raise InvalidDesignError(
                f"point set misses strength-{strength} exactness by {dev:.3e}"
            )
    return Design(points=pts, strength=strength, source_name=source_name)


def integrate_design(h, d: Design) -> QuadratureResult:
    """Design quadrature over the unit sphere: (4 pi / N) * sum h(point_i).

    There is no internal error estimate; the approximation error is bounded
    by 8 pi times the uniform distance from h to any degree-(strength)
    polynomial, which is documented but not computed here.
    """
    vals = np.asarray(h(d.points), dtype=float)
    if vals.shape != (len(d),):
        raise ValueError("integrand must return one value per design point")
    value = 4.0 * np.pi / len(d) * float(vals.sum())
    return QuadratureResult(value, 0.0, len(d), DESIGN_T)
