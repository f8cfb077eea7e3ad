"""Finding and classifying solutions of a!b! = c!.

Two routes are provided and tested against each other: an exhaustive
big-integer sweep over (c, k), and the fast per-(a, k) interval solver that
checks the handful of integers c near a!^(1/k) + (k-1)/2 where a root of
x(x-1)...(x-k+1) - a! can live.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import digit_sum, factorial, falling_factorial, integer_kth_root


class NotASolutionError(ValueError):
    """Raised when a triple (a, b, c) does not satisfy a!b! = c!."""


@dataclass(frozen=True)
class Solution:
    """A validated triple with a <= b < c; k = c - b; trivial iff k <= 1."""

    a: int
    b: int
    c: int
    k: int
    trivial: bool

    def to_json_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "k": self.k, "trivial": self.trivial}


@dataclass(frozen=True)
class RootHit:
    """c with c(c-1)...(c-k+1) = a!.  valid_solution iff b = c - k >= a,
    i.e. the hit respects the a <= b ordering convention."""

    a: int
    k: int
    c: int
    valid_solution: bool

    def to_json_dict(self) -> dict:
        return {"a": self.a, "k": self.k, "c": self.c, "valid_solution": self.valid_solution}


def classify(a: int, b: int, c: int) -> Solution:
    """Validate a!b! = c! exactly and return the normalized Solution."""
    if min(a, b, c) < 0:
        raise NotASolutionError("negative entries")
    if a > b:
        a, b = b, a
    if factorial(a) * factorial(b) != factorial(c):
        raise NotASolutionError(f"{a}!*{b}! != {c}!")
    k = c - b
    return Solution(a=a, b=b, c=c, k=k, trivial=k <= 1)


def brute_force_search(c_max: int, a_min: int = 2) -> list[Solution]:
    """Every Solution with a_min <= a <= b < c <= c_max, sorted by (c, a).

    Sweeps (c, k), growing the product c(c-1)...(c-k+1) incrementally and
    testing membership in a factorial lookup table; terminates a row once
    the product exceeds c_max!."""
    if c_max < 2:
        raise ValueError("c_max must be at least 2")
    fact_of = {factorial(a): a for a in range(max(a_min, 2), c_max + 1)}
    limit = factorial(c_max)
    sols = []
    for c in range(2, c_max + 1):
        prod = 1
        for k in range(1, c):
            prod *= c - k + 1
            if prod > limit:
                break
            a = fact_of.get(prod)
            if a is not None and a <= c - k:
                sols.append(Solution(a=a, b=c - k, c=c, k=k, trivial=k <= 1))
    sols.sort(key=lambda s: (s.c, s.a))
    return sols


def root_hits_up_to(c_max: int, a_max: int) -> list[RootHit]:
    """Exhaustive oracle for roots of x(x-1)...(x-k+1) = a! with c <= c_max
    and a <= a_max, including hits that violate the a <= b ordering."""
    if c_max < 2 or a_max < 2:
        raise ValueError("bounds must be at least 2")
    fact_of = {factorial(a): a for a in range(2, a_max + 1)}
    limit = factorial(a_max)
    hits = []
    for c in range(2, c_max + 1):
        prod = 1
        for k in range(1, c):
            prod *= c - k + 1
            if prod > limit:
                break
            a = fact_of.get(prod)
            if a is not None:
                hits.append(RootHit(a=a, k=k, c=c, valid_solution=c - k >= a))
    hits.sort(key=lambda h: (h.c, h.k))
    return hits


def interval_search(a: int, k: int) -> RootHit | None:
    """The unique c > k with c(c-1)...(c-k+1) = a!, if any.

    Candidates come from a window around r = floor(a!^(1/k)): every integer
    in [r + ceil((k-1)/2) - 1, r + ceil((k-1)/2) + 2 + ceil(k^2/max(1, r-k))]
    is checked exactly.  The +-1 and +2 guards keep the window a strict
    superset of the true localization interval under root truncation; the
    falling product is increasing in c for c > k, so the scan stops at the
    first overshoot."""
    if a < 2 or k < 2:
        raise ValueError("interval search needs a >= 2 and k >= 2")
    n = factorial(a)
    r, _ = integer_kth_root(n, k)
    half = -(-(k - 1) // 2)
    lo = r + half - 1
    hi = r + half + 2 + -(-(k * k) // max(1, r - k))
    c = max(lo, k + 1)
    while c <= hi:
        ff = falling_factorial(c, k)
        if ff == n:
            return RootHit(a=a, k=k, c=c, valid_solution=c - k >= a)
        if ff > n:
            break
        c += 1
    return None


def bound_check(sol: Solution) -> bool:
    """k < a < k + 2*ceil(log2 c), defined for nontrivial solutions only."""
    if sol.k < 2:
        raise ValueError("bound check applies to nontrivial (k >= 2) solutions")
    ceil_log2_c = (sol.c - 1).bit_length()
    return sol.k < sol.a < sol.k + 2 * ceil_log2_c


def digit_sum_identity_check(sol: Solution, p: int) -> bool:
    """a - k == s_p(a) + s_p(b) - s_p(c), which holds for every prime p."""
    return sol.a - sol.k == digit_sum(sol.a, p) + digit_sum(sol.b, p) - digit_sum(sol.c, p)
