"""Spherical parametrization of the constant surface {f = 1} and its geometry.

A sign-normalized definite polynomial f defines a compact star-shaped
surface x(s, t) = p(s, t)^(-1/4) * Phi(s, t) with Phi the unit sphere
parametrization and p(s, t) = f(Phi).  Everything here is an exact chain
rule through the polynomial jet -- finite differences appear only in the
test suite as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend, _parallel
from . import _record as rec
from .detpoly import HomogeneousPolynomial
from .errors import DefinitenessError, DegenerateJetError

_METRIC_FLOOR = 1e-14


@dataclass(frozen=True)
class SurfaceJet:
    """Point data of the constant surface at parameters (s, t)."""

    s: float
    t: float
    radial: float              # r = p(s,t)^(-1/4)
    point: np.ndarray          # x(s,t)
    d1: tuple                  # (x_s, x_t)
    d2: tuple                  # (x_ss, x_st, x_tt)
    firstform: tuple           # (E, F, G)
    secondform: tuple          # (L, M, N)
    normal: np.ndarray         # outward unit normal
    mean_curv: float
    gauss_curv: float
    support: float             # <x, normal>


def record_batch(f: HomogeneousPolynomial, s, t) -> np.ndarray:
    """Geometry record rows (see `_record`) for parameter arrays s, t.

    Raises DefinitenessError as soon as f fails to be positive somewhere on
    the sampled directions -- the input tensor is then not absolutely
    nonsingular (or f was not sign-normalized).
    """
    exps, coefs = f._float_terms
    s = np.asarray(s, dtype=float).ravel()
    t = np.asarray(t, dtype=float).ravel()
    if s.shape != t.shape:
        raise ValueError("s and t must have matching shapes")

    def run(lo, hi):
        return _backend.surface_record_batch(exps, coefs, s[lo:hi], t[lo:hi])

    out = _parallel.map_blocks(run, len(s))
    pvals = out[:, rec.P]
    if not (pvals > 0.0).all():
        i = int(np.argmin(pvals))
        raise DefinitenessError(
            f"f is not positive on the unit sphere: f(Phi({s[i]:.6f}, {t[i]:.6f}))"
            f" = {pvals[i]:.3e}; not an absolutely nonsingular input"
        )
    return out


def radial_map(f: HomogeneousPolynomial, s, t):
    """Radial coordinate and surface point at (s, t): f(point) == 1."""
    row = record_batch(f, [s], [t])[0]
    return float(row[rec.R]), row[rec.X : rec.X + 3].copy()


def jet(f: HomogeneousPolynomial, s, t) -> SurfaceJet:
    """Full first/second-order surface data at (s, t)."""
    row = record_batch(f, [s], [t])[0]
    metric = row[rec.E] * row[rec.G] - row[rec.F] ** 2
    if metric < _METRIC_FLOOR:
        raise DegenerateJetError(
            f"parametrization degenerate at (s={s!r}, t={t!r}): EG - F^2 = {metric:.3e}"
        )
    vec = lambda base: row[base : base + 3].copy()
    return SurfaceJet(
        s=float(s),
        t=float(t),
        radial=float(row[rec.R]),
        point=vec(rec.X),
        d1=(vec(rec.XS), vec(rec.XT)),
        d2=(vec(rec.XSS), vec(rec.XST), vec(rec.XTT)),
        firstform=(float(row[rec.E]), float(row[rec.F]), float(row[rec.G])),
        secondform=(float(row[rec.L]), float(row[rec.M]), float(row[rec.N])),
        normal=vec(rec.NORMAL),
        mean_curv=float(row[rec.H]),
        gauss_curv=float(row[rec.K]),
        support=float(row[rec.SUPPORT]),
    )


def interior_lattice(mesh_s: int, mesh_t: int):
    """The evaluation lattice: s strictly interior (half-step offsets), t periodic."""
    s = np.pi * (np.arange(mesh_s) + 0.5) / mesh_s
    t = 2.0 * np.pi * np.arange(mesh_t) / mesh_t
    ss, tt = np.meshgrid(s, t, indexing="ij")
    return ss.ravel(), tt.ravel()


def _lattice_record(f, mesh_s, mesh_t):
    if mesh_s < 4 or mesh_t < 4:
        raise ValueError("mesh sizes must be at least 4")
    ss, tt = interior_lattice(mesh_s, mesh_t)
    return ss, tt, record_batch(f, ss, tt)


def curvature_census(f, mesh_s=32, mesh_t=64, zero_tol=None):
    """Counts (K+, K-, K0) of Gaussian-curvature signs on the lattice.

    zero_tol defaults to 1e-8 times the largest |K| on the lattice, so the
    classification is scale-aware.
    """
    _, _, out = _lattice_record(f, mesh_s, mesh_t)
    k = out[:, rec.K]
    if zero_tol is None:
        zero_tol = 1e-8 * float(np.abs(k).max())
    kplus = int((k > zero_tol).sum())
    kminus = int((k < -zero_tol).sum())
    return kplus, kminus, mesh_s * mesh_t - kplus - kminus


@dataclass(frozen=True)
class ConvexityVerdict:
    convex: bool
    witness: tuple | None      # (s, t) with K < -tol, when non-convex
    min_gauss: float

    def __bool__(self):
        return self.convex


def convexity_check(f, mesh_s=64, mesh_t=128, tol=None) -> ConvexityVerdict:
    """Convex iff K >= -tol on the whole lattice (closed surface criterion)."""
    ss, tt, out = _lattice_record(f, mesh_s, mesh_t)
    k = out[:, rec.K]
    if tol is None:
        tol = 1e-8 * float(np.abs(k).max())
    imin = int(np.argmin(k))
    kmin = float(k[imin])
    if kmin < -tol:
        return ConvexityVerdict(False, (float(ss[imin]), float(tt[imin])), kmin)
    return ConvexityVerdict(True, None, kmin)


@dataclass(frozen=True)
class SingularFlag:
    s: float
    t: float
    grad_norm: float
    gauss_curv: float


def singularity_scan(f, mesh_s=32, mesh_t=64, grad_tol=1e-3):
    """Flag lattice points where the surface looks singular or flat.

    Two independent criteria: the gradient of f at the surface point nearly
    vanishes (normal direction undefined), or both curvatures nearly vanish
    (degenerate second fundamental form).  An empty list means "no singular
    point detected at this resolution".
    """
    _, _, out = _lattice_record(f, mesh_s, mesh_t)
    ss, tt = interior_lattice(mesh_s, mesh_t)
    exps, coefs = f._float_terms
    _, grads, _ = _backend.poly_jet_batch(exps, coefs, out[:, rec.X : rec.X + 3])
    gnorm = np.linalg.norm(grads, axis=1)
    k = out[:, rec.K]
    h = out[:, rec.H]
    flagged = (gnorm < grad_tol) | ((np.abs(k) < grad_tol) & (np.abs(h) < grad_tol))
    return [
        SingularFlag(float(ss[i]), float(tt[i]), float(gnorm[i]), float(k[i]))
        for i in np.nonzero(flagged)[0]
    ]


@dataclass(frozen=True)
class SurfaceMesh:
    vertices: np.ndarray       # (V, 3)
    faces: np.ndarray          # (F, 3) int, zero-based, outward orientation

    @property
    def edge_count(self):
        edges = set()
        for a, b, c in self.faces:
            for u, v in ((a, b), (b, c), (c, a)):
                edges.add((min(u, v), max(u, v)))
        return len(edges)

    def euler_characteristic(self):
        return len(self.vertices) - self.edge_count + len(self.faces)


def surface_mesh(f, mesh_s=32, mesh_t=64) -> SurfaceMesh:
    """Closed triangulation of the constant surface.

    mesh_s interior latitude rows by mesh_t longitudes, plus the two pole
    vertices: mesh_s * mesh_t + 2 vertices and 2 * mesh_s * mesh_t faces.
    """
    if mesh_s < 4 or mesh_t < 4:
        raise ValueError("mesh sizes must be at least 4")
    s = np.pi * (np.arange(1, mesh_s + 1)) / (mesh_s + 1)
    t = 2.0 * np.pi * np.arange(mesh_t) / mesh_t
    ss, tt = np.meshgrid(s, t, indexing="ij")
    out = record_batch(f, ss.ravel(), tt.ravel())
    ring_pts = out[:, rec.X : rec.X + 3].reshape(mesh_s, mesh_t, 3)

    # poles: p(0, t) = f(0, 0, 1) and p(pi, t) = f(0, 0, -1), t-independent
    pole_val_n = float(f.evaluate((0.0, 0.0, 1.0)))
    pole_val_s = float(f.evaluate((0.0, 0.0, -1.0)))
    if pole_val_n <= 0.0 or pole_val_s <= 0.0:
        raise DefinitenessError("f is not positive at the poles")
    north = np.array([0.0, 0.0, pole_val_n ** -0.25])
    south = np.array([0.0, 0.0, -(pole_val_s ** -0.25)])

    vertices = np.vstack([ring_pts.reshape(-1, 3), north, south])
    i_north = mesh_s * mesh_t
    i_south = i_north + 1

    faces = []
    ring = lambda i, j: i * mesh_t + (j % mesh_t)
    for j in range(mesh_t):
        faces.append((i_north, ring(0, j), ring(0, j + 1)))
    for i in range(mesh_s - 1):
        for j in range(mesh_t):
            a, b = ring(i, j), ring(i, j + 1)
            c, d = ring(i + 1, j), ring(i + 1, j + 1)
            faces.append((a, c, b))
            faces.append((b, c, d))
    for j in range(mesh_t):
        faces.append((i_south, ring(mesh_s - 1, j + 1), ring(mesh_s - 1, j)))
    return SurfaceMesh(vertices=vertices, faces=np.array(faces, dtype=np.int64))
