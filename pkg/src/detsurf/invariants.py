"""Integral invariants of the body enclosed by the constant surface.

Volume (divergence formula), affine surface area and centro-affine surface
area, each computable with any quadrature backend, plus the fingerprint
bundle used by the non-equivalence tester.  The parametrized integrands:

    volume        <x, x_s cross x_t> / 3      = support * sqrt(EG - F^2) / 3
    affine        max(K, 0)^(1/4) * sqrt(EG - F^2)
    centro-affine max(K, 0)^(1/2) / <x, n> * sqrt(EG - F^2)

For the design backend the same integrands are divided by sin(s) and fed
as functions of the sphere point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _record as rec
from .detpoly import (
    Definiteness,
    HomogeneousPolynomial,
    definiteness,
    sign_normalize,
)
from .errors import DefinitenessError
from .quadrature import (
    ADAPTIVE_G5,
    ADAPTIVE_G7,
    Design,
    QuadratureResult,
    integrate_adaptive,
    integrate_design,
    integrate_mc,
)
from .surface import convexity_check, curvature_census, record_batch

_PARAM_RECT = ((0.0, np.pi), (0.0, 2.0 * np.pi))
_POLE_CLEARANCE = 1e-8


def _require_positive_definite(f: HomogeneousPolynomial):
    rep = definiteness(f)
    if rep.kind is Definiteness.NEGATIVE_DEFINITE:
        raise DefinitenessError(
            "polynomial is negative definite; sign_normalize it first"
        )
    if rep.kind is not Definiteness.POSITIVE_DEFINITE:
        raise DefinitenessError(
            f"polynomial is {rep.kind.value} (min |f| = {rep.min_abs:.3e} near "
            f"{tuple(round(c, 6) for c in rep.location)}); "
            "the tensor is not absolutely nonsingular"
        )


def _volume_rows(out):
    return out[:, rec.SUPPORT] * out[:, rec.SQRT_METRIC] / 3.0


def _affine_rows(out):
    return np.maximum(out[:, rec.K], 0.0) ** 0.25 * out[:, rec.SQRT_METRIC]


def _centro_rows(out):
    kk = np.maximum(out[:, rec.K], 0.0)
    return np.sqrt(kk) / out[:, rec.SUPPORT] * out[:, rec.SQRT_METRIC]


def _integrate(f, rows_fn, backend, tol_or_budget, seed, design, check=True):
    if check:
        _require_positive_definite(f)

    def g(s, t):
        return rows_fn(record_batch(f, s, t))

    if backend == "adaptive":
        return integrate_adaptive(g, _PARAM_RECT, rel_tol=tol_or_budget)
    if backend == "mc":
        return integrate_mc(g, _PARAM_RECT, samples=int(tol_or_budget), seed=seed)
    if backend == "design":
        if not isinstance(design, Design):
            raise ValueError("design backend needs a Design instance")

        def h(points):
            z = np.clip(points[:, 2], -1.0, 1.0)
            s = np.clip(np.arccos(z), _POLE_CLEARANCE, np.pi - _POLE_CLEARANCE)
            t = np.mod(np.arctan2(points[:, 1], points[:, 0]), 2.0 * np.pi)
            return rows_fn(record_batch(f, s, t)) / np.sin(s)

        return integrate_design(h, design)
    raise ValueError(f"unknown backend {backend!r}")


def volume(f, backend="adaptive", tol_or_budget=1e-7, seed=0, design=None) -> QuadratureResult:
    """Enclosed volume via the pulled-back divergence form (1/3) <x, x_s x x_t>."""
    return _integrate(f, _volume_rows, backend, tol_or_budget, seed, design)


def affine_area(f, backend="adaptive", tol_or_budget=1e-7, seed=0, design=None) -> QuadratureResult:
    """Affine surface area: the curvature-quarter-power boundary integral.

    Negative Gaussian curvature is clamped to zero, extending the convex-body
    definition to the non-convex fixtures.
    """
    return _integrate(f, _affine_rows, backend, tol_or_budget, seed, design)


def centro_affine_area(f, backend="adaptive", tol_or_budget=1e-7, seed=0, design=None) -> QuadratureResult:
    """Centro-affine surface area: sqrt of the support-normalized curvature
    against the cone measure.  Invariant under all invertible linear maps."""
    return _integrate(f, _centro_rows, backend, tol_or_budget, seed, design)


@dataclass(frozen=True)
class InvariantConfig:
    backend: str = "adaptive"
    rel_tol: float = 1e-7
    mc_samples: int = 1_000_000
    seed: int = 0
    design: Design | None = None
    census_mesh: tuple = (32, 64)
    census_zero_tol: float | None = None

    @property
    def tol_or_budget(self):
        return self.mc_samples if self.backend == "mc" else self.rel_tol

    @property
    def method_tag(self):
        if self.backend == "adaptive":
            return ADAPTIVE_G7 if self.rel_tol <= 1e-6 else ADAPTIVE_G5
        return {"mc": "MonteCarlo", "design": "DesignT"}[self.backend]


@dataclass(frozen=True)
class InvariantFingerprint:
    """The bundle of computed invariants for one tensor/polynomial."""

    volume: float
    affine_area: float
    centro_affine_area: float
    census: tuple                # (K+, K-, K0)
    convex: bool
    method_tag: str
    rel_tol: float               # quadrature accuracy the values carry
    label: str | None = None
    quadrature_error: tuple = (0.0, 0.0, 0.0)

    def relabel(self, label):
        return InvariantFingerprint(
            self.volume, self.affine_area, self.centro_affine_area, self.census,
            self.convex, self.method_tag, self.rel_tol, label, self.quadrature_error,
        )


def fingerprint(f: HomogeneousPolynomial, config: InvariantConfig = InvariantConfig(),
                label=None) -> InvariantFingerprint:
    """Compute all invariants of f with one backend.

    Accepts either sign of a definite polynomial (normalizes internally);
    raises DefinitenessError for anything else.
    """
    f = sign_normalize(f)
    _require_positive_definite(f)
    args = dict(
        backend=config.backend,
        tol_or_budget=config.tol_or_budget,
        seed=config.seed,
        design=config.design,
    )
    vol = _integrate(f, _volume_rows, check=False, **args)
    aff = _integrate(f, _affine_rows, check=False, **args)
    cen = _integrate(f, _centro_rows, check=False, **args)
    census = curvature_census(
        f, *config.census_mesh, zero_tol=config.census_zero_tol
    )
    convex = convexity_check(f)
    return InvariantFingerprint(
        volume=vol.value,
        affine_area=aff.value,
        centro_affine_area=cen.value,
        census=census,
        convex=convex.convex,
        method_tag=config.method_tag,
        rel_tol=config.rel_tol,
        label=label,
        quadrature_error=(vol.error_estimate, aff.error_estimate, cen.error_estimate),
    )
