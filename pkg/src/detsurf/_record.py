"""Column layout of the per-point surface-geometry record.

Both compute backends fill a (k, WIDTH) float64 array with one row per
evaluated (s, t) parameter pair.  Vector quantities occupy three
consecutive columns starting at the named index.
"""

P = 0             # polynomial value at the unit direction
R = 1             # radial coordinate p^(-1/4)
X = 2             # surface point (3)
XS = 5            # d x / d s (3)
XT = 8            # d x / d t (3)
XSS = 11          # second partials (3 each)
XST = 14
XTT = 17
E = 20            # first fundamental coefficients
F = 21
G = 22
L = 23            # second fundamental coefficients
M = 24
N = 25
NORMAL = 26       # outward unit normal (3)
H = 29            # mean curvature
K = 30            # Gaussian curvature
SUPPORT = 31      # <x, normal>
SQRT_METRIC = 32  # sqrt(E*G - F^2)

WIDTH = 33
