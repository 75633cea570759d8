"""Timing comparison of the compiled and numpy kernel backends.

Run with:  python3 benchmarks/bench_kernels.py [--size N] [--repeats R]
"""

import argparse
import time

import numpy as np

from spinsurf import _kernels_py

try:
    from spinsurf import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1024, help="grid points per axis")
    parser.add_argument("--repeats", type=int, default=7, help="timing repetitions (best kept)")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    v = np.ascontiguousarray(
        rng.normal(size=(args.size, args.size)) + 1j * rng.normal(size=(args.size, args.size))
    )
    h = 0.01

    cases = [
        ("fd_diff axis=0 periodic", lambda k: k.fd_diff_2d(v, h, 0, True)),
        ("fd_diff axis=1 periodic", lambda k: k.fd_diff_2d(v, h, 1, True)),
        ("fd_diff axis=0 bounded ", lambda k: k.fd_diff_2d(v, h, 0, False)),
        ("cumtrapz axis=0        ", lambda k: k.cumtrapz_2d(v, h, 0)),
        ("cumtrapz axis=1        ", lambda k: k.cumtrapz_2d(v, h, 1)),
    ]

    print(f"grid {args.size}x{args.size}, best of {args.repeats}")
    header = f"{'kernel':<26} {'numpy [ms]':>12}"
    if _kernels is not None:
        header += f" {'cython [ms]':>12} {'speedup':>8}"
    print(header)
    for name, call in cases:
        t_py = best_of(lambda: call(_kernels_py), args.repeats)
        line = f"{name:<26} {1e3 * t_py:>12.3f}"
        if _kernels is not None:
            t_cy = best_of(lambda: np.asarray(call(_kernels)), args.repeats)
            line += f" {1e3 * t_cy:>12.3f} {t_py / t_cy:>7.2f}x"
            a = np.asarray(call(_kernels))
            b = call(_kernels_py)
            assert np.max(np.abs(a - b)) <= 1e-12 * (1 + np.max(np.abs(b))), name
        print(line)
    if _kernels is None:
        print("compiled extension not available; showing numpy backend only")


if __name__ == "__main__":
    main()
