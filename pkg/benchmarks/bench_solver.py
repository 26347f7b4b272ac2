#!/usr/bin/env python3
"""Benchmark the Newton scaling kernel: numba JIT vs pure-numpy fallback.

The pure-numpy path is the exact same function without compilation, so
the comparison isolates the JIT speedup.  Run from the repo root:

    python benchmarks/bench_solver.py [--sizes 50,100,200] [--reps 20]
"""

import argparse
import time

import numpy as np

from diagscale import _kernels
from diagscale.covmodel import haar_rotation


def random_spd(p, rng):
    U = haar_rotation(p, rng)
    evals = rng.uniform(0.2, 5.0, size=p)
    return (U * evals) @ U.T


def time_kernel(kernel, matrices, reps):
    best = np.inf
    for _ in range(reps):
        t0 = time.perf_counter()
        for S in matrices:
            w0 = 1.0 / np.sqrt(np.diag(S))
            w, res, it, obj, status = kernel(S, w0, 1e-10, 200, 1e8)
            assert status == _kernels.CONVERGED
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="50,100,200")
    ap.add_argument("--reps", type=int, default=10)
    ap.add_argument("--matrices", type=int, default=20)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    jit = _kernels.newton_scaling if _kernels.USE_NUMBA else None
    if jit is None:
        from numba import njit
        jit = njit(cache=True)(_kernels._newton_scaling_impl)
    plain = _kernels._newton_scaling_impl

    rng = np.random.default_rng(0)
    print(f"{'p':>6} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for p in sizes:
        matrices = [random_spd(p, rng) for _ in range(args.matrices)]
        # trigger compilation outside the timed region
        jit(matrices[0], 1.0 / np.sqrt(np.diag(matrices[0])), 1e-10, 200, 1e8)
        t_plain = time_kernel(plain, matrices, args.reps) * 1e3
        t_jit = time_kernel(jit, matrices, args.reps) * 1e3
        print(f"{p:>6} {t_plain:>12.2f} {t_jit:>12.2f} {t_plain / t_jit:>8.2f}x")


if __name__ == "__main__":
    main()
