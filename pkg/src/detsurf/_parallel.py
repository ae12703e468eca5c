"""Optional thread fan-out for large batch evaluations.

DETSURF_THREADS controls the worker count (default 1 = sequential).  Work
is split into fixed index blocks and the per-block outputs are concatenated
in block order, so results are bit-identical for every thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

_BLOCK = 16384


def thread_count():
    raw = os.environ.get("DETSURF_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def map_blocks(fn, n, block=_BLOCK):
    """Concatenate fn(lo, hi) over [0, n) split into `block`-sized ranges."""
    if n <= block or thread_count() == 1:
        return fn(0, n)
    ranges = [(lo, min(lo + block, n)) for lo in range(0, n, block)]
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        parts = list(pool.map(lambda r: fn(*r), ranges))
    return np.concatenate(parts, axis=0)
