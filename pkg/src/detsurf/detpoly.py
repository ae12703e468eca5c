"""The determinant polynomial det(x*A1 + y*A2 + z*A3) and its calculus.

Coefficients are kept exact (int/Fraction) whenever the tensor slices are
exact; tensors with float slices (products of random group elements) yield
float coefficients through the same code paths.  Coefficient arithmetic is
dict-based: an n of 4 gives at most 15 monomials, so there is nothing to
optimize here -- the hot evaluation paths live in the compiled kernels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import _backend
from .errors import DefinitenessError
from .tensor import Tensor3

#: entries smaller than this fraction of the largest coefficient magnitude
#: are treated as zero when deciding definiteness.
DEFINITENESS_FLOOR = 1e-9


@dataclass(frozen=True)
class HomogeneousPolynomial:
    """A homogeneous polynomial in three variables.

    ``coeffs`` maps exponent triples (i, j, k) with i + j + k == degree to
    nonzero coefficients.  ``sign_normalized`` records that the polynomial
    was negated to make it positive on the probe direction.
    """

    degree: int
    coeffs: dict
    sign_normalized: bool = False

    def __post_init__(self):
        for exp, c in self.coeffs.items():
            if len(exp) != 3 or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent triple {exp!r}")
            if sum(exp) != self.degree:
                raise ValueError(f"exponent {exp!r} does not sum to degree {self.degree}")
            if c == 0:
                raise ValueError(f"zero coefficient stored at {exp!r}")

    def evaluate(self, x):
        """Evaluate at a 3-sequence; exact for int/Fraction inputs."""
        x1, x2, x3 = x
        total = 0
        for (i, j, k), c in self.coeffs.items():
            total += c * x1**i * x2**j * x3**k
        return total

    __call__ = evaluate

    @cached_property
    def _float_terms(self):
        # deterministic term order shared by all kernels
        items = sorted(self.coeffs.items(), reverse=True)
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(-1, 3)
        coefs = np.array([float(c) for _, c in items], dtype=float)
        return exps, coefs

    @property
    def max_abs_coeff(self):
        if not self.coeffs:
            return 0.0
        return max(abs(float(c)) for c in self.coeffs.values())

    def negate(self):
        return HomogeneousPolynomial(
            self.degree, {e: -c for e, c in self.coeffs.items()}, self.sign_normalized
        )

    def __str__(self):
        return format_polynomial(self)


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        acc = out.get(e, 0) + c
        if acc == 0:
            out.pop(e, None)
        else:
            out[e] = acc
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2])
            acc = out.get(e, 0) + ca * cb
            if acc == 0:
                out.pop(e, None)
            else:
                out[e] = acc
    return out


def _minor_det(entries, live_rows, live_cols):
    # cofactor expansion along the first live row
    if len(live_rows) == 1:
        return entries[live_rows[0]][live_cols[0]]
    acc: dict = {}
    for pos, col in enumerate(live_cols):
        pivot = entries[live_rows[0]][col]
        if not pivot:
            continue
        sub = _minor_det(entries, live_rows[1:], tuple(c for c in live_cols if c != col))
        term = _poly_mul(pivot, sub)
        if pos % 2:
            term = {e: -c for e, c in term.items()}
        acc = _poly_add(acc, term)
    return acc


def det_poly(t: Tensor3) -> HomogeneousPolynomial:
    """Expand det(x*A1 + y*A2 + z*A3) over the polynomial ring.

    Exact for exact slices.  Requires p == 3 (three combination variables).
    """
    if t.p != 3:
        raise ValueError(f"determinant polynomial needs p == 3 slices, got p={t.p}")
    unit = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    entries = []
    for i in range(t.n):
        row = []
        for j in range(t.n):
            cell = {}
            for v in range(3):
                c = t.slices[v][i][j]
                if c != 0:
                    cell[unit[v]] = c
            row.append(cell)
        entries.append(row)
    det = _minor_det(entries, tuple(range(t.n)), tuple(range(t.n)))
    return HomogeneousPolynomial(degree=t.n, coeffs=det)


def eval_jet(f: HomogeneousPolynomial, x):
    """Value, gradient (3,) and symmetric Hessian (3, 3) at a float point."""
    exps, coefs = f._float_terms
    pts = np.asarray(x, dtype=float).reshape(1, 3)
    val, grad, hess = _backend.poly_jet_batch(exps, coefs, pts)
    return float(val[0]), grad[0], hess[0]


def substitute_linear(f: HomogeneousPolynomial, r) -> HomogeneousPolynomial:
    """The polynomial x -> f(x R), with x a row vector.

    Exact when both f and r are rational.  Mirrors the slice-mixing
    transform: det_poly(r_transform(T, R)) == substitute_linear(det_poly(T), R).
    """
    rows = [list(row) for row in (r.matrix if hasattr(r, "matrix") else r)]
    if len(rows) != 3 or any(len(row) != 3 for row in rows):
        raise ValueError("substitution matrix must be 3x3")
    arr = np.array(rows, dtype=float)
    if abs(np.linalg.det(arr)) < 1e-12:
        raise ValueError("substitution matrix is singular")
    # images of the three variables: y_j = sum_i x_i * R[i][j]
    images = []
    for j in range(3):
        img = {}
        for i in range(3):
            c = rows[i][j]
            if c != 0:
                exp = tuple(1 if v == i else 0 for v in range(3))
                img[exp] = c
        images.append(img)
    out: dict = {}
    for (i, j, k), c in f.coeffs.items():
        term = {(0, 0, 0): c}
        for img, power in zip(images, (i, j, k)):
            for _ in range(power):
                term = _poly_mul(term, img)
        out = _poly_add(out, term)
    return HomogeneousPolynomial(degree=f.degree, coeffs=out, sign_normalized=f.sign_normalized)


def scale(f: HomogeneousPolynomial, c) -> HomogeneousPolynomial:
    """Multiply every coefficient by a nonzero constant."""
    if c == 0:
        raise ValueError("scale factor must be nonzero")
    return HomogeneousPolynomial(
        f.degree, {e: c * v for e, v in f.coeffs.items()}, f.sign_normalized
    )


class Definiteness(enum.Enum):
    POSITIVE_DEFINITE = "positive-definite"
    NEGATIVE_DEFINITE = "negative-definite"
    INDEFINITE = "indefinite"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DefinitenessReport:
    kind: Definiteness
    witness: tuple | None  # direction where the sign flips (indefinite only)
    min_abs: float         # smallest |f| seen on the refined grid
    location: tuple        # unit direction attaining min_abs

    def __bool__(self):
        return self.kind in (Definiteness.POSITIVE_DEFINITE, Definiteness.NEGATIVE_DEFINITE)


def _sphere_grid(resolution):
    s = np.pi * (np.arange(resolution) + 0.5) / resolution
    t = 2.0 * np.pi * np.arange(2 * resolution) / (2 * resolution)
    ss, tt = np.meshgrid(s, t, indexing="ij")
    ss, tt = ss.ravel(), tt.ravel()
    dirs = np.stack(
        [np.sin(ss) * np.cos(tt), np.sin(ss) * np.sin(tt), np.cos(ss)], axis=1
    )
    return dirs


def definiteness(f: HomogeneousPolynomial, resolution=32) -> DefinitenessReport:
    """Decide the sign behaviour of f by sphere sampling with local refinement.

    Definite verdicts require a uniform sign and a refined minimum of |f|
    above DEFINITENESS_FLOOR * max|coefficient|; polynomials that vanish
    somewhere on the sphere (like x^4) come back inconclusive.
    """
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    exps, coefs = f._float_terms
    floor = DEFINITENESS_FLOOR * f.max_abs_coeff

    dirs = np.vstack([[[1.0, 0.0, 0.0]], _sphere_grid(resolution)])
    vals = _backend.poly_eval_batch(exps, coefs, dirs)

    sign = 0.0
    for v in vals:
        if abs(v) > floor:
            sign = np.sign(v)
            break
    imin = int(np.argmin(np.abs(vals)))
    if sign == 0.0:
        return DefinitenessReport(
            Definiteness.INCONCLUSIVE, None, float(abs(vals[imin])), tuple(dirs[imin])
        )

    opposite = vals * sign < -floor
    if opposite.any():
        iw = int(np.argmin(vals * sign))
        return DefinitenessReport(
            Definiteness.INDEFINITE, tuple(dirs[iw]), float(abs(vals[imin])), tuple(dirs[imin])
        )

    min_abs, location, flipped, witness = _refine_minima(
        exps, coefs, resolution, vals, sign, floor
    )
    if flipped:
        return DefinitenessReport(Definiteness.INDEFINITE, witness, min_abs, location)
    if min_abs > floor:
        kind = Definiteness.POSITIVE_DEFINITE if sign > 0 else Definiteness.NEGATIVE_DEFINITE
        return DefinitenessReport(kind, None, min_abs, location)
    return DefinitenessReport(Definiteness.INCONCLUSIVE, None, min_abs, location)


def _refine_minima(exps, coefs, resolution, vals, sign, floor, seeds=5, levels=5):
    # zoom a 9x9 window around the smallest |f| grid directions
    grid_vals = vals[1:]
    order = np.argsort(np.abs(grid_vals))[:seeds]
    s_all = np.pi * (np.arange(resolution) + 0.5) / resolution
    t_all = 2.0 * np.pi * np.arange(2 * resolution) / (2 * resolution)
    ds0, dt0 = np.pi / resolution, np.pi / resolution

    best = (np.inf, (1.0, 0.0, 0.0))
    for flat in order:
        si, tj = divmod(int(flat), 2 * resolution)
        cs, ct = s_all[si], t_all[tj]
        ds, dt = ds0, dt0
        for _ in range(levels):
            s_loc = np.clip(np.linspace(cs - ds, cs + ds, 9), 1e-9, np.pi - 1e-9)
            t_loc = np.linspace(ct - dt, ct + dt, 9)
            ss, tt = np.meshgrid(s_loc, t_loc, indexing="ij")
            dirs = np.stack(
                [
                    np.sin(ss.ravel()) * np.cos(tt.ravel()),
                    np.sin(ss.ravel()) * np.sin(tt.ravel()),
                    np.cos(ss.ravel()),
                ],
                axis=1,
            )
            local = _backend.poly_eval_batch(exps, coefs, dirs)
            if (local * sign < -floor).any():
                iw = int(np.argmin(local * sign))
                return 0.0, tuple(dirs[iw]), True, tuple(dirs[iw])
            ibest = int(np.argmin(np.abs(local)))
            if abs(local[ibest]) < best[0]:
                best = (float(abs(local[ibest])), tuple(dirs[ibest]))
            cs, ct = float(ss.ravel()[ibest]), float(tt.ravel()[ibest])
            ds, dt = ds / 4.0, dt / 4.0
    return best[0], best[1], False, None


def sign_normalize(f: HomogeneousPolynomial) -> HomogeneousPolynomial:
    """Return the representative that is positive on the probe direction.

    The probe is (1, 0, 0), falling back to the first sphere-grid direction
    where f does not vanish.
    """
    exps, coefs = f._float_terms
    floor = DEFINITENESS_FLOOR * f.max_abs_coeff
    dirs = np.vstack([[[1.0, 0.0, 0.0]], _sphere_grid(16)])
    vals = _backend.poly_eval_batch(exps, coefs, dirs)
    for v in vals:
        if abs(v) > floor:
            if v < 0:
                return HomogeneousPolynomial(
                    f.degree, {e: -c for e, c in f.coeffs.items()}, sign_normalized=True
                )
            return f
    raise DefinitenessError("polynomial vanishes on the whole probe grid")


def format_polynomial(f: HomogeneousPolynomial, vars=("x", "y", "z")) -> str:
    """Human-readable form with graded-lexicographic term order."""
    parts = []
    for (i, j, k), c in sorted(f.coeffs.items(), reverse=True):
        factors = []
        for e, v in zip((i, j, k), vars):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        mono = "*".join(factors) or "1"
        if isinstance(c, float):
            cstr = f"{abs(c):.12g}"
        else:
            cstr = str(abs(c))
        body = mono if cstr == "1" and factors else f"{cstr}*{mono}" if factors else cstr
        if not parts:
            parts.append(body if _is_nonneg(c) else f"-{body}")
        else:
            parts.append(f"+ {body}" if _is_nonneg(c) else f"- {body}")
    return " ".join(parts) if parts else "0"


def _is_nonneg(c):
    return (float(c) if isinstance(c, Fraction) else c) >= 0
