#!/usr/bin/env python3
"""Benchmark the compiled special-function core against the numpy fallback.

Times the even Bessel evaluator on large arrays, scalar-heavy zero-table
construction, and a kernel-matrix assembly, and checks that both backends
agree to within the evaluation noise floor.

Run:  python benchmarks/bench_core.py
"""

import time

import numpy as np

from fourier_dunkl._core import available_backends


def time_call(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_arrays(backends):
    z = np.linspace(0.01, 120.0, 1_000_000)
    print(f"jn_even_array over {z.size:,} points")
    results = {}
    for name, mod in backends.items():
        for nu in (-0.6, 0.0, 1.5):
            dt = time_call(lambda: mod.jn_even_array(nu, z))
            results[(name, nu)] = (dt, mod.jn_even_array(nu, z))
            print(f"  {name:7s} nu={nu:+.1f}: {dt * 1e3:8.1f} ms")
    if len(backends) == 2:
        for nu in (-0.6, 0.0, 1.5):
            vals = [results[(name, nu)][1] for name in backends]
            print(f"  max |cython - pure| at nu={nu:+.1f}: {np.max(np.abs(vals[0] - vals[1])):.2e}")


def bench_scalar(backends):
    print("scalar jn_even, 200k mixed calls")
    zs = np.linspace(0.05, 60.0, 200_000)
    for name, mod in backends.items():
        fn = mod.jn_even

        def loop():
            for z in zs:
                fn(0.7, z)

        print(f"  {name:7s}: {time_call(loop, repeats=2) * 1e3:8.1f} ms")


def bench_zero_table():
    from fourier_dunkl._core import BACKEND
    from fourier_dunkl.specfun import build_zero_table

    print(f"zero table (alpha=0.3, 200 zeros) on active backend [{BACKEND}]")
    dt = time_call(lambda: build_zero_table(0.3, 200), repeats=3)
    print(f"  {dt * 1e3:8.1f} ms   (set FOURIER_DUNKL_PURE=1 and rerun to compare)")


def bench_kernel():
    from fourier_dunkl import dunkl
    from fourier_dunkl._core import BACKEND

    system = dunkl.DunklSystem.build(0.0, 64)
    xs = np.linspace(-0.9, 0.9, 400)
    print(f"kernel matrix K_64 on a 400-point grid [{BACKEND}]")
    dt = time_call(lambda: dunkl.kernel_matrix(system, 64, xs), repeats=3)
    print(f"  {dt * 1e3:8.1f} ms")


def main():
    backends = available_backends()
    print("backends found:", ", ".join(sorted(backends)))
    bench_arrays(backends)
    bench_scalar(backends)
    bench_zero_table()
    bench_kernel()


if __name__ == "__main__":
    main()
