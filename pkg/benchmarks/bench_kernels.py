#!/usr/bin/env python3
"""Compare the numba and numpy mod-p sweep kernels on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--prime-max N] [--k K ...]

Both backends are imported directly (the FDL_BACKEND dispatch is bypassed)
and their outputs are checked for equality before timings are reported.
"""

import argparse
import time

import numpy as np

from fdl import _kernels
from fdl.modular import _primes_array


def _time(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--prime-max", type=int, default=50000)
    parser.add_argument("--k", type=int, action="append", default=None)
    args = parser.parse_args()
    ks = args.k or [2, 3, 6]

    print(f"active backend: {_kernels.backend_name()}")
    print(f"primes up to {args.prime_max}; timings are best-of-3 (seconds)")
    header = f"{'k':>3}  {'primes':>7}  {'numpy':>9}  {'numba':>9}  {'speedup':>8}"
    print(header)
    print("-" * len(header))

    for k in ks:
        primes = _primes_array(args.prime_max)
        primes = primes[primes > k]
        t_np, flags_np = _time(_kernels.screen_flags_np, primes, k)
        if _kernels._NUMBA_OK:
            _kernels.screen_flags_nb(primes[:16], k)  # warm the JIT cache
            t_nb, flags_nb = _time(_kernels.screen_flags_nb, primes, k)
            if not np.array_equal(flags_np, flags_nb):
                raise SystemExit(f"backend outputs disagree for k={k}")
            print(
                f"{k:>3}  {len(primes):>7}  {t_np:>9.3f}  {t_nb:>9.3f}"
                f"  {t_np / t_nb:>7.1f}x"
            )
        else:
            print(f"{k:>3}  {len(primes):>7}  {t_np:>9.3f}  {'n/a':>9}  {'n/a':>8}")


if __name__ == "__main__":
    main()
