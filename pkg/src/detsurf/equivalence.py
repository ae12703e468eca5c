"""Non-equivalence decisions over invariant fingerprints and orbit runs.

Disagreement of an invariant beyond tolerance certifies non-equivalence
under the matching group; agreement certifies nothing (the tester never
asserts equivalence).  Resolution-dependent quantities (convexity flag,
curvature census) are demoted to supporting evidence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .detpoly import det_poly, sign_normalize
from .invariants import InvariantConfig, InvariantFingerprint, fingerprint
from .tensor import Tensor3, p_transform, q_transform, r_transform, random_invertible, random_unimodular

#: default verdict tolerance; quadrature runs orders of magnitude tighter,
#: so the decision margin stays wide.
VERDICT_REL_TOL = 1e-3

GROUP_SL3 = "sl3"
GROUP_GL3 = "gl3"
GROUP_SL443 = "sl443"


class VerdictKind(enum.Enum):
    NOT_SL_EQUIVALENT = "not-sl-equivalent"
    NOT_GL_EQUIVALENT = "not-gl-equivalent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Evidence:
    invariant: str
    value1: float
    value2: float
    tolerance: float


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    evidence: tuple = ()
    rough_evidence: tuple = ()

    def __str__(self):
        lines = [self.kind.value]
        for e in self.evidence:
            lines.append(
                f"  {e.invariant}: {e.value1:.10g} vs {e.value2:.10g} (tol {e.tolerance:g})"
            )
        for note in self.rough_evidence:
            lines.append(f"  supporting: {note}")
        return "\n".join(lines)


def estimate_scale_c(v1, v2):
    """The constant relating two determinant polynomials from their volumes.

    If f2 = c * (f1 after a volume-preserving substitution), the enclosed
    volumes satisfy c = (v1 / v2)^(4/3).
    """
    if v1 <= 0 or v2 <= 0:
        raise ValueError("volumes must be positive")
    return (v1 / v2) ** (4.0 / 3.0)


def _rel_diff(a, b):
    denom = max(abs(a), abs(b))
    if denom == 0.0:
        return 0.0
    return abs(a - b) / denom


def compare(fp1: InvariantFingerprint, fp2: InvariantFingerprint,
            rel_tol=VERDICT_REL_TOL) -> Verdict:
    """Decide non-equivalence from two fingerprints.

    Volume or affine-area disagreement rules out equivalence with all three
    factors unimodular; centro-affine disagreement, or failure of the
    dilation relation a2 = (V2/V1)^(1/2) * a1, rules out full linear
    equivalence.  Anything else is inconclusive.
    """
    if fp1.method_tag != fp2.method_tag:
        raise ValueError(
            f"fingerprints carry incompatible method tags "
            f"{fp1.method_tag!r} vs {fp2.method_tag!r}"
        )
    sl_evidence = []
    gl_evidence = []
    if _rel_diff(fp1.volume, fp2.volume) > rel_tol:
        sl_evidence.append(Evidence("volume", fp1.volume, fp2.volume, rel_tol))
    if _rel_diff(fp1.affine_area, fp2.affine_area) > rel_tol:
        sl_evidence.append(Evidence("affine_area", fp1.affine_area, fp2.affine_area, rel_tol))
    if _rel_diff(fp1.centro_affine_area, fp2.centro_affine_area) > rel_tol:
        gl_evidence.append(
            Evidence("centro_affine_area", fp1.centro_affine_area, fp2.centro_affine_area, rel_tol)
        )
    # dilation-compatibility of affine areas at the volume-implied scale
    predicted = (fp2.volume / fp1.volume) ** 0.5 * fp1.affine_area
    if _rel_diff(fp2.affine_area, predicted) > rel_tol:
        gl_evidence.append(
            Evidence("affine_area_volume_relation", fp2.affine_area, predicted, rel_tol)
        )

    rough = []
    if fp1.convex != fp2.convex:
        rough.append(
            f"convexity mismatch: {fp1.convex} vs {fp2.convex}"
        )
    if _census_mismatch(fp1.census, fp2.census):
        rough.append(f"census sign pattern differs: {fp1.census} vs {fp2.census}")

    if gl_evidence:
        kind = VerdictKind.NOT_GL_EQUIVALENT
    elif sl_evidence:
        kind = VerdictKind.NOT_SL_EQUIVALENT
    else:
        kind = VerdictKind.INCONCLUSIVE
    return Verdict(kind, tuple(sl_evidence + gl_evidence), tuple(rough))


def _census_mismatch(c1, c2, frac_tol=0.05):
    n1, n2 = sum(c1), sum(c2)
    if n1 == 0 or n2 == 0:
        return False
    return any(abs(a / n1 - b / n2) > frac_tol for a, b in zip(c1, c2))


@dataclass(frozen=True)
class OrbitTable:
    """Fingerprints of one tensor and `count` random transforms of it."""

    tensor_label: str
    group: str
    seed: int
    fingerprints: tuple

    def column(self, name):
        return tuple(getattr(fp, name) for fp in self.fingerprints)


def orbit_table(t: Tensor3, group: str, count: int, seed: int,
                config: InvariantConfig = InvariantConfig()) -> OrbitTable:
    """Row 0 = fingerprint of t; rows 1..count = after independent random
    transforms drawn from the chosen group.

    sl3/gl3 mix slices with a random 3x3 matrix; sl443 additionally applies
    random unimodular left/right slice multiplications.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if group not in (GROUP_SL3, GROUP_GL3, GROUP_SL443):
        raise ValueError(f"unknown group {group!r}")
    base = t.label or "T"
    master = np.random.default_rng(seed)
    rows = [_tensor_fingerprint(t, config, f"{base}-0")]
    for i in range(1, count + 1):
        moved = _random_orbit_move(t, group, master)
        rows.append(_tensor_fingerprint(moved, config, f"{base}-{i}"))
    return OrbitTable(base, group, seed, tuple(rows))


def _random_orbit_move(t, group, master):
    draw = lambda: int(master.integers(0, 2**63 - 1))
    if group == GROUP_SL3:
        return r_transform(t, random_unimodular(t.p, seed=draw()))
    if group == GROUP_GL3:
        return r_transform(t, random_invertible(t.p, seed=draw()))
    moved = p_transform(t, random_unimodular(t.n, seed=draw()))
    moved = q_transform(moved, random_unimodular(t.n, seed=draw()))
    return r_transform(moved, random_unimodular(t.p, seed=draw()))


def _tensor_fingerprint(t, config, label):
    f = sign_normalize(det_poly(t))
    return fingerprint(f, config, label=label)
