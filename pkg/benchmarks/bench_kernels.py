#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Also sanity-checks that the two backends agree bit-for-bit on every
workload, which is the contract that lets them be swapped at import time.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from tweenlines import kernels


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_raster(impl, segs, shape):
    out = np.zeros(shape, dtype=np.uint8)
    impl.raster_accumulate(out, segs, 256, True)
    return out


def bench_band(impl, segs, shape):
    mask = np.zeros(shape, dtype=np.uint8)
    impl.band_accumulate(mask, segs, 5 * kernels.QUANT)
    return mask


def bench_solver(impl, cost):
    return impl.solve_assignment_square(cost)


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = np.random.RandomState(7)
    shape = (512, 512)
    segs = (rng.uniform(0, 511, size=(200, 4)) * kernels.QUANT).astype(np.int64)
    cost = rng.uniform(0, 10, size=(200, 200))

    workloads = [
        ("raster 200 segs @512^2", lambda impl: bench_raster(impl, segs, shape)),
        ("band   200 segs @512^2", lambda impl: bench_band(impl, segs, shape)),
        ("assign 200x200", lambda impl: bench_solver(impl, cost)),
    ]

    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (active: {kernels.BACKEND})\n")
    print(f"{'workload':<26}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in workloads:
        times = {}
        results = {}
        for b in backends:
            impl = kernels.get_impl(b)
            results[b] = fn(impl)
            times[b] = _time(lambda: fn(impl), args.repeat)
        if len(backends) == 2:
            a, b = results["python"], results["compiled"]
            assert np.array_equal(a, b), f"backend mismatch on {name}"
            speedup = times["python"] / times["compiled"]
        else:
            speedup = float("nan")
        row = f"{name:<26}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
        print(row + f"{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
