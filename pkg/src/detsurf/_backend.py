"""Selects the compiled kernels when available, the numpy fallback otherwise.

Set DETSURF_FORCE_PY=1 to force the pure-Python backend (useful for the
parity tests and the benchmark).
"""

import os

if os.environ.get("DETSURF_FORCE_PY", "") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

poly_eval_batch = _impl.poly_eval_batch
poly_jet_batch = _impl.poly_jet_batch
surface_record_batch = _impl.surface_record_batch


def backend_name():
    """Which kernel implementation is active: "cython" or "python"."""
    return _impl.BACKEND_NAME
