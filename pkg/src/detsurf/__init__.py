"""detsurf: non-equivalence tests for absolutely nonsingular tensors.

The determinant polynomial f(x, y, z) = det(x*A1 + y*A2 + z*A3) of an
absolutely nonsingular 4x4x3 tensor is definite, so its constant surface
{f = 1} encloses a compact star-shaped body.  Volume, affine surface area
and centro-affine surface area of that body are invariant under the
rank-preserving tensor transformations; computing them numerically yields
a practical non-equivalence tester.
"""

from ._backend import backend_name
from .detpoly import (
    Definiteness,
    DefinitenessReport,
    HomogeneousPolynomial,
    definiteness,
    det_poly,
    eval_jet,
    format_polynomial,
    scale,
    sign_normalize,
    substitute_linear,
)
from .equivalence import (
    GROUP_GL3,
    GROUP_SL3,
    GROUP_SL443,
    Verdict,
    VerdictKind,
    compare,
    estimate_scale_c,
    orbit_table,
)
from .errors import (
    AccuracyError,
    DefinitenessError,
    DegenerateJetError,
    DetsurfError,
    InvalidDesignError,
    ParseError,
)
from .fixtures import CATALOGUE_LABELS, FIXTURE_LABELS, fixture
from .invariants import (
    InvariantConfig,
    InvariantFingerprint,
    affine_area,
    centro_affine_area,
    fingerprint,
    volume,
)
from .io import Report, export_obj, parse_report, parse_tensor, serialize_tensor, write_report
from .quadrature import (
    Design,
    QuadratureResult,
    integrate_adaptive,
    integrate_design,
    integrate_mc,
    load_design,
)
from .surface import (
    SurfaceJet,
    SurfaceMesh,
    convexity_check,
    curvature_census,
    jet,
    radial_map,
    singularity_scan,
    surface_mesh,
)
from .tensor import (
    GroupElement,
    Tensor3,
    identity_element,
    p_transform,
    q_transform,
    r_transform,
    random_invertible,
    random_unimodular,
)

__version__ = "0.1.0"
