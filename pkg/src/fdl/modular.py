"""Modular screening of candidate a = p - 1 values.

For a class-k solution with a = p - 1, Wilson's theorem forces
x(x-1)...(x-k+1) == -1 (mod p) to have a root.  Primes where that
congruence has no root therefore certify that a = p - 1 participates in no
class-k solution; this module finds those primes, measures their density,
and implements the residue-class shortcuts for classes 2 and 4.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels


class Verdict(enum.Enum):
    IMPOSSIBLE = "impossible"
    POSSIBLE = "possible"


@dataclass(frozen=True)
class ScreenOutcome:
    p: int
    k: int
    verdict: Verdict
    roots: tuple[int, ...]  # residues x with x(x-1)...(x-k+1) == -1 (mod p)

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "verdict": self.verdict.value,
            "roots": list(self.roots),
        }


@dataclass(frozen=True)
class DensityReport:
    k: int
    N: int
    primes_tested: int
    no_root_count: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.no_root_count, self.primes_tested)

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "primes_tested": self.primes_tested,
            "no_root_count": self.no_root_count,
            "fraction_num": self.fraction.numerator,
            "fraction_den": self.fraction.denominator,
        }


@dataclass(frozen=True)
class CountBoundReport:
    p: int
    k: int
    n: int
    roots: tuple[int, ...]  # A_k: residues b with F_k(b) == 0 (mod p)
    actual: int

    @property
    def bound(self) -> Fraction:
        return Fraction(self.n * self.k, self.p) + 1

    @property
    def bound_ceiling(self) -> int:
        return -(-(self.n * len(self.roots)) // self.p) if self.roots else 0

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "roots": list(self.roots),
            "actual": self.actual,
            "bound_num": self.bound.numerator,
            "bound_den": self.bound.denominator,
        }


def primes_up_to(N: int) -> list[int]:
    """All primes <= N, ascending, by a sieve of Eratosthenes."""
    if N < 2:
        raise ValueError("need N >= 2")
    return [int(p) for p in _primes_array(N)]


def _primes_array(N: int) -> np.ndarray:
    sieve = np.ones(N + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(N**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def legendre_symbol(a: int, p: int) -> int:
    """(a | p) in {-1, 0, +1} via Euler's criterion (p an odd prime)."""
    if p < 3 or p % 2 == 0:
        raise ValueError("Legendre symbol needs an odd prime modulus")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def wilson_check(n: int) -> bool:
    """(n-1)! == -1 (mod n), true exactly when n is prime."""
    if n < 2:
        raise ValueError("Wilson check needs n >= 2")
    prod = 1
    for i in range(2, n - 1):
        prod = prod * i % n
    prod = prod * (n - 1) % n
    return prod == n - 1


def falling_roots_mod_p(k: int, t: int, p: int) -> set[int]:
    """All x in [0, p) with x(x-1)...(x-k+1) == t (mod p)."""
    if k < 1:
        raise ValueError("need k >= 1")
    if p < 2:
        raise ValueError("need a prime modulus p >= 2")
    if p >= _kernels.P_LIMIT:
        raise ValueError("modulus too large for the int64 sweep kernels")
    return set(int(x) for x in _kernels.falling_roots(k, t % p, p))


def screen_class_k(p: int, k: int) -> ScreenOutcome:
    """Impossible iff x(x-1)...(x-k+1) == -1 (mod p) has no root, which
    certifies that a = p - 1 appears in no class-k solution."""
    if k < 2:
        raise ValueError("screening applies to classes k >= 2")
    if p <= k:
        raise ValueError("screening needs p > k")
    roots = tuple(sorted(falling_roots_mod_p(k, -1, p)))
    verdict = Verdict.IMPOSSIBLE if not roots else Verdict.POSSIBLE
    return ScreenOutcome(p=p, k=k, verdict=verdict, roots=roots)


def class2_residue_test(p: int) -> bool:
    """True iff p == 5 (mod 6); such primes screen out class 2."""
    return p % 6 == 5


def class4_residue_test(p: int) -> bool:
    """True iff p mod 5 in {2, 3}; such primes (p != 5) screen out class 4."""
    if p == 5:
        raise ValueError("p = 5 is excluded from the class-4 residue test")
    return p % 5 in (2, 3)


def no_root_density(k: int, N: int) -> DensityReport:
    """Fraction of primes p with k < p <= N whose class-k screen is
    Impossible, as an exact rational."""
    if k < 2:
        raise ValueError("need k >= 2")
    if N <= k:
        raise ValueError("need N > k")
    primes = _primes_array(N)
    primes = primes[primes > k]
    flags = _kernels.screen_flags(primes, k)
    return DensityReport(
        k=k,
        N=N,
        primes_tested=int(len(primes)),
        no_root_count=int(flags.sum()),
    )


def count_bound_report(p: int, k: int, n: int) -> CountBoundReport:
    """Count b in [1, n] whose residue lies in A_k = {b : F_k(b) == 0 mod p}
    and compare against the nk/p + 1 bound."""
    if k < 1:
        raise ValueError("need k >= 1")
    if p <= k:
        raise ValueError("need p > k")
    if n < 0:
        raise ValueError("need n >= 0")
    roots = tuple(sorted(falling_roots_mod_p(k, -1, p)))
    actual = 0
    for r in roots:
        if r == 0:
            actual += n // p
        elif r <= n:
            actual += (n - r) // p + 1
    return CountBoundReport(p=p, k=k, n=n, roots=roots, actual=actual)
