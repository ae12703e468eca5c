"""Benchmark: compiled kernels vs the pure-numpy fallback.

Times the polynomial jet and the fused surface-geometry record on batch
sizes the quadrature actually uses (225 = one adaptive rectangle), then an
end-to-end volume integral with each backend.

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

import detsurf._backend as backend
import detsurf._kernels_py as kpy
from detsurf.detpoly import det_poly
from detsurf.fixtures import fixture
from detsurf.invariants import volume

try:
    import detsurf._kernels as kcy
except ImportError:
    kcy = None


def timeit(fn, *args, repeat=5, min_time=0.2):
    fn(*args)  # warm up
    best = float("inf")
    for _ in range(repeat):
        n = 0
        start = time.perf_counter()
        while True:
            fn(*args)
            n += 1
            elapsed = time.perf_counter() - start
            if elapsed > min_time:
                break
        best = min(best, elapsed / n)
    return best


def main():
    f = det_poly(fixture("T001"))
    exps, coefs = f._float_terms
    rng = np.random.default_rng(0)

    impls = [("python", kpy)] + ([("cython", kcy)] if kcy else [])
    if kcy is None:
        print("compiled kernels not available; benchmarking the fallback only")

    print(f"{'kernel':<28}{'batch':>8}" + "".join(f"{name:>14}" for name, _ in impls)
          + ("       speedup" if kcy else ""))
    for k in (225, 4096, 65536):
        pts = rng.uniform(-1, 1, (k, 3))
        s = rng.uniform(0.05, np.pi - 0.05, k)
        t = rng.uniform(0, 2 * np.pi, k)
        for label, args_of in (
            ("poly_jet_batch", lambda impl: (impl.poly_jet_batch, exps, coefs, pts)),
            ("surface_record_batch", lambda impl: (impl.surface_record_batch, exps, coefs, s, t)),
        ):
            times = []
            for _, impl in impls:
                fn, *args = args_of(impl)
                times.append(timeit(fn, *args))
            row = f"{label:<28}{k:>8}" + "".join(f"{t_ * 1e6:>11.0f} us" for t_ in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:>12.1f}x"
            print(row)

    print()
    restore = backend.surface_record_batch
    try:
        for name, impl in impls:
            backend.surface_record_batch = impl.surface_record_batch
            start = time.perf_counter()
            res = volume(f, tol_or_budget=1e-7)
            elapsed = time.perf_counter() - start
            print(f"volume(T001) @1e-7 with {name:<7}: {res.value:.12f} "
                  f"in {elapsed * 1e3:7.1f} ms ({res.evaluations} evaluations)")
    finally:
        backend.surface_record_batch = restore


if __name__ == "__main__":
    main()
