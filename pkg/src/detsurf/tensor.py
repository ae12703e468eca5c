"""Slice-based n x n x p tensors and their rank-preserving transformations.

A tensor is stored as p square slices.  Entries are exact Python numbers
(int or Fraction) for the bundled reference tensors; slices become floats
after transforming by a randomly sampled group element.  All slice algebra
is done in plain Python so that integer inputs stay exactly integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_EXACT_TYPES = (int, Fraction)
_NUMBER_TYPES = (int, float, Fraction)


def _freeze_matrix(rows, what="matrix"):
    """Validate a rectangular numeric matrix and return it as nested tuples."""
    frozen = []
    width = None
    for row in rows:
        row = tuple(row)
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValueError(f"{what} has ragged rows")
        for v in row:
            if isinstance(v, (bool, np.bool_)) or not isinstance(
                v, _NUMBER_TYPES + (np.integer, np.floating)
            ):
                raise ValueError(f"{what} entry {v!r} is not numeric")
        frozen.append(tuple(_canonical_number(v) for v in row))
    if not frozen or width == 0:
        raise ValueError(f"{what} is empty")
    return tuple(frozen)


def _canonical_number(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    return v


def _mat_mul(a, b):
    """Exact matrix product of nested-tuple matrices."""
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise ValueError("matrix dimensions do not match")
    return tuple(
        tuple(sum(a[i][l] * b[l][j] for l in range(k)) for j in range(m))
        for i in range(n)
    )


def _mat_add(a, b):
    return tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def _mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


@dataclass(frozen=True)
class Tensor3:
    """An n x n x p tensor given by its p square slices.

    ``slices[i]`` is the i-th n x n slice as nested tuples.  The default
    slice count is p = 3, the case every downstream operation targets.
    """

    n: int
    p: int
    slices: tuple
    label: str | None = None

    def __post_init__(self):
        if self.n < 1 or self.p < 1:
            raise ValueError("n and p must be positive")
        if len(self.slices) != self.p:
            raise ValueError(f"expected {self.p} slices, got {len(self.slices)}")
        frozen = tuple(_freeze_matrix(s, "slice") for s in self.slices)
        for s in frozen:
            if len(s) != self.n or len(s[0]) != self.n:
                raise ValueError(f"slices must be {self.n}x{self.n}")
        object.__setattr__(self, "slices", frozen)

    @classmethod
    def from_slices(cls, slices, label=None):
        slices = tuple(_freeze_matrix(s, "slice") for s in slices)
        return cls(n=len(slices[0]), p=len(slices), slices=slices, label=label)

    def slice_arrays(self):
        """The slices as a (p, n, n) float array."""
        return np.array(self.slices, dtype=float)

    @property
    def is_exact(self):
        """True when every entry is an int or Fraction."""
        return all(
            isinstance(v, _EXACT_TYPES) for s in self.slices for row in s for v in row
        )

    def relabel(self, label):
        return Tensor3(self.n, self.p, self.slices, label)


@dataclass(frozen=True)
class GroupElement:
    """An invertible matrix tagged with the group it was drawn from."""

    matrix: tuple
    group_tag: str
    det_value: float

    def __post_init__(self):
        matrix = _freeze_matrix(self.matrix, "group element")
        if len(matrix) != len(matrix[0]):
            raise ValueError("group element must be square")
        object.__setattr__(self, "matrix", matrix)
        if self.group_tag == "SL":
            if abs(self.det_value - 1.0) > 1e-12:
                raise ValueError(f"SL element has det {self.det_value!r}")
        elif self.group_tag == "GL":
            if abs(self.det_value) < 1e-6:
                raise ValueError(f"GL element is numerically singular (det {self.det_value!r})")
        else:
            raise ValueError(f"unknown group tag {self.group_tag!r}")

    @classmethod
    def from_matrix(cls, matrix, group_tag="GL"):
        matrix = _freeze_matrix(matrix, "group element")
        det = float(np.linalg.det(np.array(matrix, dtype=float)))
        return cls(matrix=matrix, group_tag=group_tag, det_value=det)

    @property
    def dim(self):
        return len(self.matrix)

    def as_array(self):
        return np.array(self.matrix, dtype=float)


def identity_element(dim, group_tag="SL"):
    rows = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
    return GroupElement(matrix=rows, group_tag=group_tag, det_value=1.0)


def p_transform(t: Tensor3, m: GroupElement) -> Tensor3:
    """Left-multiply every slice: slice_i -> M @ slice_i."""
    if m.dim != t.n:
        raise ValueError(f"group element is {m.dim}x{m.dim}, slices are {t.n}x{t.n}")
    return Tensor3(t.n, t.p, tuple(_mat_mul(m.matrix, s) for s in t.slices), t.label)


def q_transform(t: Tensor3, m: GroupElement) -> Tensor3:
    """Right-multiply every slice: slice_i -> slice_i @ M."""
    if m.dim != t.n:
        raise ValueError(f"group element is {m.dim}x{m.dim}, slices are {t.n}x{t.n}")
    return Tensor3(t.n, t.p, tuple(_mat_mul(s, m.matrix) for s in t.slices), t.label)


def r_transform(t: Tensor3, m: GroupElement) -> Tensor3:
    """Mix slices: slice_i -> sum_j M[i][j] * slice_j.

    Integer mixing matrices produce integer slices exactly.
    """
    if m.dim != t.p:
        raise ValueError(f"mixing matrix is {m.dim}x{m.dim}, tensor has p={t.p}")
    rows = m.matrix
    new_slices = []
    for i in range(t.p):
        acc = _mat_scale(rows[i][0], t.slices[0])
        for j in range(1, t.p):
            acc = _mat_add(acc, _mat_scale(rows[i][j], t.slices[j]))
        new_slices.append(acc)
    return Tensor3(t.n, t.p, tuple(new_slices), t.label)


def random_unimodular(dim, seed, cond_cap=20.0) -> GroupElement:
    """Draw a random determinant-one matrix with bounded condition number.

    Entries are sampled uniformly in [-1, 1]; draws with |det| < 0.1 are
    rejected and the accepted matrix is rescaled by sign(det)*|det|^(-1/dim)
    so its determinant lands on exactly one (within float roundoff).
    """
    if dim < 2:
        raise ValueError("dim must be at least 2")
    if cond_cap <= 1.0:
        raise ValueError("cond_cap must exceed 1")
    rng = np.random.default_rng(seed)
    while True:
        m = rng.uniform(-1.0, 1.0, size=(dim, dim))
        det = float(np.linalg.det(m))
        if abs(det) < 0.1:
            continue
        m = m * (np.sign(det) * abs(det) ** (-1.0 / dim))
        if np.linalg.cond(m, 2) > cond_cap:
            continue
        det = float(np.linalg.det(m))
        if abs(det - 1.0) > 1e-12:
            continue
        return GroupElement(
            matrix=tuple(tuple(float(v) for v in row) for row in m),
            group_tag="SL",
            det_value=det,
        )


def random_invertible(dim, seed, det_min=0.1, cond_cap=20.0) -> GroupElement:
    """Draw a random invertible matrix with |det| >= det_min and bounded condition."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    if det_min <= 0.0:
        raise ValueError("det_min must be positive")
    if cond_cap <= 1.0:
        raise ValueError("cond_cap must exceed 1")
    rng = np.random.default_rng(seed)
    while True:
        m = rng.uniform(-1.0, 1.0, size=(dim, dim))
        det = float(np.linalg.det(m))
        if abs(det) < det_min:
            continue
        if np.linalg.cond(m, 2) > cond_cap:
            continue
        return GroupElement(
            matrix=tuple(tuple(float(v) for v in row) for row in m),
            group_tag="GL",
            det_value=det,
        )
