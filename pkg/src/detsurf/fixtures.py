"""Embedded reference tensors.

Seven 4x4x3 tensors with entries in {-1, 0, 1}, labelled by their number in
the external catalogue of absolutely nonsingular tensors, plus the
quaternion-type pair Q1/Q2 (Q1's constant surface is the unit sphere, Q2's
is the flat-pointed body (x^2+y^2)^2 + z^4 = 1).
"""

from .tensor import Tensor3

_I4 = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))

_SLICES = {
    "T001": (
        _I4,
        ((-1, 0, 1, 1), (1, -1, 1, -1), (-1, -1, -1, -1), (0, 1, 1, 0)),
        ((0, 1, -1, 1), (0, -1, 1, 1), (0, -1, 0, -1), (-1, -1, 1, 1)),
    ),
    "T010": (
        _I4,
        ((0, 1, 0, 0), (0, -1, 0, 1), (1, 0, 1, 0), (0, 0, -1, -1)),
        ((1, 1, 1, 1), (-1, 0, 0, -1), (0, -1, 0, 0), (-1, 1, -1, 1)),
    ),
    "T020": (
        _I4,
        ((-1, 0, 1, -1), (0, 0, 0, 1), (1, -1, 0, 0), (1, 0, 0, 0)),
        # third-slice entry [1][3] is 0, not the circulated -1: the -1 variant
        # yields an indefinite determinant polynomial (see fixture notes).
        ((1, 0, 1, 1), (1, 1, 1, 0), (0, 0, 0, 1), (1, -1, -1, -1)),
    ),
    "T099": (
        _I4,
        ((0, -1, -1, -1), (1, 1, 1, -1), (1, -1, 1, 0), (-1, 1, -1, 1)),
        ((0, 1, 0, 0), (0, -1, 1, 1), (1, 0, 1, -1), (1, 0, 1, 1)),
    ),
    "T119": (
        _I4,
        ((0, 0, 0, -1), (-1, 1, 1, -1), (0, -1, 0, 0), (1, 0, 0, 0)),
        ((1, -1, -1, 1), (1, -1, 1, 0), (0, 1, 1, 1), (1, 1, 0, -1)),
    ),
    "T207": (
        _I4,
        ((-1, -1, -1, 1), (0, 1, 1, 0), (-1, 0, 0, -1), (-1, 1, 0, -1)),
        ((-1, 1, -1, 1), (-1, 0, 1, 1), (-1, 0, -1, 1), (0, 0, -1, -1)),
    ),
    "T237": (
        _I4,
        ((0, -1, 1, -1), (0, -1, -1, 0), (0, 1, -1, 0), (1, 1, 0, 1)),
        # third-slice entry [2][1] is 1, not the circulated -1 (same reason
        # as T020; both fixes are the unique single-entry reconciliations).
        ((0, -1, -1, -1), (-1, -1, -1, 0), (0, 1, 0, 1), (1, -1, 1, 1)),
    ),
    "Q1": (
        ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)),
        ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0)),
        ((0, 0, 0, 1), (0, 0, -1, 0), (0, 1, 0, 0), (-1, 0, 0, 0)),
    ),
    "Q2": (
        ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
        ((0, 0, 0, -1), (0, 0, 1, 0), (1, 0, 0, 0), (0, 1, 0, 0)),
        ((0, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 1), (1, 0, 0, 0)),
    ),
}

FIXTURE_LABELS = tuple(_SLICES)

#: the seven catalogued tensors (exclude the quaternion pair)
CATALOGUE_LABELS = tuple(l for l in FIXTURE_LABELS if l.startswith("T"))


def fixture(label: str) -> Tensor3:
    """Look up an embedded tensor by label (e.g. "T001")."""
    try:
        slices = _SLICES[label]
    except KeyError:
        raise KeyError(f"unknown fixture {label!r}; available: {', '.join(FIXTURE_LABELS)}")
    return Tensor3(n=4, p=3, slices=slices, label=label)


def all_fixtures():
    return tuple(fixture(l) for l in FIXTURE_LABELS)
