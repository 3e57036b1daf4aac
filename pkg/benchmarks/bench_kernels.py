#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

The two backends compute bit-identical results; this script measures the
speed difference on the hot kernels at several sizes.

Usage: python benchmarks/bench_kernels.py [--sizes 16,1024,1000000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from rcbs import _kernels_py

try:
    from rcbs import _kernels_cy
except ImportError:
    _kernels_cy = None


def _time_call(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        dt = time.perf_counter() - t0
        if dt < best:
            best = dt
    return best


def _cases(n, rng):
    p = rng.uniform(0.0, 1.0, n) + 1e-6
    ar, ai, br, bi = (rng.uniform(-10, 10, n) for _ in range(4))
    out = np.empty(n)
    return {
        "vec_sum": (p,),
        "aggregate_sums": (p, ar, ai, br, bi),
        "offset_sum": (p, ar, ai, br, bi),
        "disk_margins": (ar, ai, 0.3, -0.2, 5.0, out),
        "transformed_sums": (p, ar, ai, br, bi, 0.1, 0.2, 1.5, -0.4, out),
        "enclosing_disk": (ar, ai),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="16,1024,1000000")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _kernels_cy is None:
        print("compiled kernels not available; timing the pure backend only")

    rng = np.random.default_rng(0)
    header = f"{'kernel':<18} {'n':>9} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        cases = _cases(n, rng)
        for name, call_args in cases.items():
            if name == "enclosing_disk" and n > 200_000:
                continue  # quadratic-ish worst cases get slow in pure Python
            t_py = _time_call(getattr(_kernels_py, name), call_args, args.repeats)
            if _kernels_cy is not None:
                t_cy = _time_call(getattr(_kernels_cy, name), call_args, args.repeats)
                print(
                    f"{name:<18} {n:>9} {t_py * 1e3:>12.4f} {t_cy * 1e3:>14.4f} "
                    f"{t_py / t_cy:>8.1f}x"
                )
            else:
                print(f"{name:<18} {n:>9} {t_py * 1e3:>12.4f} {'-':>14} {'-':>9}")


if __name__ == "__main__":
    main()
