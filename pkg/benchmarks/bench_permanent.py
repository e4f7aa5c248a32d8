#!/usr/bin/env python3
"""Benchmark the compiled Ryser permanent kernel against the pure-Python
fallback on random unitaries.

Usage:
    python benchmarks/bench_permanent.py [--sizes 6,10,14,18] [--repeats 3]
"""

import argparse
import time

import numpy as np

from multiphoton import _ryser_py

try:
    from multiphoton import _ryser
except ImportError:
    _ryser = None


def random_unitary(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return np.ascontiguousarray(q * (np.diagonal(r) / np.abs(np.diagonal(r))))


def time_kernel(kernel, matrices, repeats):
    best = float("inf")
    value = None
    for _ in range(repeats):
        start = time.perf_counter()
        for m in matrices:
            value = kernel(m)
        best = min(best, (time.perf_counter() - start) / len(matrices))
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="6,10,14,18")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    if _ryser is None:
        print("compiled kernel not available; timing the fallback only\n")

    header = f"{'n':>4} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        matrices = [random_unitary(n, rng) for _ in range(3 if n <= 14 else 1)]
        t_py, v_py = time_kernel(_ryser_py.ryser_permanent, matrices, args.repeats)
        if _ryser is None:
            print(f"{n:>4} {t_py:>12.6f} {'-':>13} {'-':>9}")
            continue
        t_c, v_c = time_kernel(_ryser.ryser_permanent, matrices, args.repeats)
        assert abs(v_py - v_c) <= 1e-9 * max(1.0, abs(v_py)), "kernels disagree"
        print(f"{n:>4} {t_py:>12.6f} {t_c:>13.6f} {t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
