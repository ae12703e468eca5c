"""Shared oracles for the test suite.

Everything here is deliberately independent of the production code paths it
checks: exact determinants come from fraction-free elimination on scalar
matrices, derivatives from central differences, sphere moments from the
closed-form double-factorial expression.
"""

import math
from fractions import Fraction

import numpy as np


def bareiss_det(rows):
    """Fraction-free Gaussian elimination determinant, exact over Fraction."""
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def pencil_matrix(t, point):
    """The scalar matrix x*A1 + y*A2 + z*A3 of tensor t at a point."""
    x, y, z = point
    return [
        [
            x * t.slices[0][i][j] + y * t.slices[1][i][j] + z * t.slices[2][i][j]
            for j in range(t.n)
        ]
        for i in range(t.n)
    ]


def numeric_pencil_det(t, point):
    """Float determinant of the slice pencil via LAPACK."""
    arrays = t.slice_arrays()
    m = point[0] * arrays[0] + point[1] * arrays[1] + point[2] * arrays[2]
    return float(np.linalg.det(m))


def random_rational_point(rng, span=9, max_den=7):
    return tuple(
        Fraction(int(rng.integers(-span, span + 1)), int(rng.integers(1, max_den + 1)))
        for _ in range(3)
    )


def fd_gradient(func, x, h=1e-5):
    """Central-difference gradient of a scalar function of a 3-vector."""
    x = np.asarray(x, dtype=float)
    out = np.empty(3)
    for i in range(3):
        dx = np.zeros(3)
        dx[i] = h
        out[i] = (func(x + dx) - func(x - dx)) / (2 * h)
    return out


def fd_first_partials(func, s, t, h=1e-5):
    """Central differences of a vector-valued map of (s, t)."""
    d_s = (np.asarray(func(s + h, t)) - np.asarray(func(s - h, t))) / (2 * h)
    d_t = (np.asarray(func(s, t + h)) - np.asarray(func(s, t - h))) / (2 * h)
    return d_s, d_t


def fd_second_partials(func, s, t, h=1e-5):
    f0 = np.asarray(func(s, t))
    d_ss = (np.asarray(func(s + h, t)) - 2 * f0 + np.asarray(func(s - h, t))) / h**2
    d_tt = (np.asarray(func(s, t + h)) - 2 * f0 + np.asarray(func(s, t - h))) / h**2
    d_st = (
        np.asarray(func(s + h, t + h))
        - np.asarray(func(s + h, t - h))
        - np.asarray(func(s - h, t + h))
        + np.asarray(func(s - h, t - h))
    ) / (4 * h**2)
    return d_ss, d_st, d_tt


def exact_sphere_moment(i, j, k):
    """Closed-form average of x^i y^j z^k over the unit sphere."""
    if i % 2 or j % 2 or k % 2:
        return 0.0

    def df(n):
        return math.prod(range(n, 0, -2)) if n > 0 else 1

    return df(i - 1) * df(j - 1) * df(k - 1) / df(i + j + k + 1)


def ellipsoid_gauss_curvature(point, a, b, c):
    """Closed-form K of the ellipsoid x^2/a^2 + y^2/b^2 + z^2/c^2 = 1."""
    x, y, z = point
    w = x**2 / a**4 + y**2 / b**4 + z**2 / c**4
    return 1.0 / (a**2 * b**2 * c**2 * w**2)


def octahedron_text():
    pts = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    return "\n".join(" ".join(str(c) for c in p) for p in pts)


def icosahedron_text():
    phi = (1 + math.sqrt(5)) / 2
    norm = math.sqrt(1 + phi**2)
    pts = []
    for a in (1, -1):
        for b in (phi, -phi):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return "\n".join(" ".join(f"{c / norm:.17g}" for c in p) for p in pts)


def rel_diff(a, b):
    return abs(a - b) / max(abs(a), abs(b))
