"""Hot mod-p sweep kernels.

Two interchangeable backends compute the same results:

  * "numba" - @njit kernels (default when numba imports cleanly)
  * "numpy" - vectorized pure-numpy fallbacks

Selection is via the FDL_BACKEND environment variable, read at import time.
Both implementations are always importable (``*_np`` / ``*_nb``) so tests
and the benchmark can compare them directly.

All kernels work on int64 and require p < 2^31 so intermediate products
p * p stay in range.
"""

from __future__ import annotations

import os

import numpy as np

P_LIMIT = 1 << 31

_requested = os.environ.get("FDL_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(f"FDL_BACKEND must be 'numba' or 'numpy', got {_requested!r}")


# -- pure-numpy implementations ---------------------------------------------


def falling_roots_np(k: int, t_mod: int, p: int) -> np.ndarray:
    """Residues x in [0, p) with x(x-1)...(x-k+1) == t_mod (mod p)."""
    if k >= p:
        # every window of k consecutive integers contains a multiple of p
        if t_mod == 0:
            return np.arange(p, dtype=np.int64)
        return np.empty(0, dtype=np.int64)
    x = np.arange(p, dtype=np.int64)
    prod = np.ones(p, dtype=np.int64)
    for j in range(k):
        prod = prod * ((x - j) % p) % p
    return np.flatnonzero(prod == t_mod).astype(np.int64)


def screen_flags_np(primes: np.ndarray, k: int) -> np.ndarray:
    """flags[i] == 1 iff x(x-1)...(x-k+1) == -1 (mod primes[i]) has no root.

    Caller guarantees primes[i] > k."""
    flags = np.zeros(len(primes), dtype=np.uint8)
    for i, p in enumerate(primes):
        p = int(p)
        x = np.arange(k, p, dtype=np.int64)
        prod = x.copy()
        for j in range(1, k):
            prod = prod * (x - j) % p
        if not np.any(prod == p - 1):
            flags[i] = 1
    return flags


# -- numba implementations ---------------------------------------------------

_NUMBA_OK = False
if _requested != "numpy":
    try:
        from numba import njit

        _NUMBA_OK = True
    except ImportError:
        if _requested == "numba":
            raise


def _falling_roots_loop(k, t_mod, p, inv, out):
    # inv and out are preallocated scratch; returns the root count.
    # For x < k the product has a zero factor; for x >= k it is slid along
    # with one modular multiply and one modular divide per step.
    cnt = 0
    if t_mod == 0:
        for x in range(min(k, p)):
            out[cnt] = x
            cnt += 1
        if k >= p:
            return cnt
    elif k >= p:
        return 0
    inv[1] = 1
    for i in range(2, p):
        inv[i] = (p - (p // i) * inv[p % i] % p) % p
    f = 1
    for j in range(2, k + 1):
        f = f * j % p
    x = k
    if f == t_mod:
        out[cnt] = x
        cnt += 1
    while x + 1 < p:
        x += 1
        f = f * x % p * inv[x - k] % p
        if f == t_mod:
            out[cnt] = x
            cnt += 1
    return cnt


def _screen_flags_loop(primes, k, flags):
    # direct k-term window product per candidate x: no modular inverses are
    # needed and the scan stops at the first root found
    for i in range(primes.shape[0]):
        p = primes[i]
        t = p - 1
        found = False
        for x in range(k, p):
            f = x
            for j in range(1, k):
                f = f * (x - j) % p
            if f == t:
                found = True
                break
        if not found:
            flags[i] = 1
    return flags


if _NUMBA_OK:
    _falling_roots_jit = njit(cache=True, nogil=True)(_falling_roots_loop)
    _screen_flags_jit = njit(cache=True, nogil=True)(_screen_flags_loop)


def falling_roots_nb(k: int, t_mod: int, p: int) -> np.ndarray:
    if not _NUMBA_OK:
        raise RuntimeError("numba backend unavailable")
    inv = np.empty(max(p, 2), dtype=np.int64)
    out = np.empty(max(2 * k, 1), dtype=np.int64) if k < p else np.empty(p, dtype=np.int64)
    cnt = _falling_roots_jit(k, t_mod, p, inv, out)
    return out[:cnt].copy()


def screen_flags_nb(primes: np.ndarray, k: int) -> np.ndarray:
    if not _NUMBA_OK:
        raise RuntimeError("numba backend unavailable")
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    flags = np.zeros(primes.shape[0], dtype=np.uint8)
    return _screen_flags_jit(primes, k, flags)


# -- dispatch ----------------------------------------------------------------

BACKEND = "numba" if _NUMBA_OK else "numpy"

if BACKEND == "numba":
    falling_roots = falling_roots_nb
    screen_flags = screen_flags_nb
else:
    falling_roots = falling_roots_np
    screen_flags = screen_flags_np


def backend_name() -> str:
    return BACKEND
