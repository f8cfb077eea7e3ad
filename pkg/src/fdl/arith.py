"""Exact big-integer and binary fixed-point arithmetic primitives.

Everything here is pure and deterministic: factorials (session-memoized),
falling factorials, exact integer k-th roots, truncating fixed-point k-th
roots, base-q digit sums, p-adic valuations of factorials, and a
high-precision numeric check of the two analytic inequalities used by the
interval localization of c.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath

try:
    import gmpy2

    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    _HAVE_GMPY2 = False


# ---------------------------------------------------------------------------
# factorials and falling factorials

_fact_table = [1, 1]
_fact_lock = threading.Lock()


def factorial(n: int) -> int:
    """n!, exactly.  The memo table persists for the session and is grown
    incrementally so sweeps that touch every factorial up to a bound pay
    each multiplication once."""
    if n < 0:
        raise ValueError("factorial of a negative integer")
    if n < len(_fact_table):
        return _fact_table[n]
    with _fact_lock:
        while len(_fact_table) <= n:
            _fact_table.append(_fact_table[-1] * len(_fact_table))
    return _fact_table[n]


def falling_factorial(x: int, k: int) -> int:
    """x(x-1)...(x-k+1); the empty product (k = 0) is 1."""
    if k < 0:
        raise ValueError("negative length for a falling factorial")
    if x >= 0 and k > x:
        return 0  # a zero factor appears
    prod = 1
    for j in range(k):
        prod *= x - j
    return prod


def rising_factorial(x: int, k: int) -> int:
    """x(x+1)...(x+k-1)."""
    if k < 0:
        raise ValueError("negative length for a rising factorial")
    prod = 1
    for j in range(k):
        prod *= x + j
    return prod


# ---------------------------------------------------------------------------
# integer and fixed-point k-th roots


def _iroot_newton(n: int, k: int) -> tuple[int, bool]:
    # Pure-int Newton iteration with a bit-length seed; used when gmpy2 is
    # absent and kept around as an independent implementation for tests.
    if n < 2 or k == 1:
        return n, True
    if k == 2:
        r = math.isqrt(n)
        return r, r * r == n
    bits = n.bit_length()
    if k >= bits:
        return 1, False  # n >= 2 and 2^k > n, so the root is 1
    x = 1 << -(-bits // k)  # 2^ceil(bits/k) >= n^(1/k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:  # the loop above lands at the floor; this is a guard
        x -= 1
    return x, x**k == n


def integer_kth_root(n: int, k: int) -> tuple[int, bool]:
    """(floor(n^(1/k)), exact).  Exact arithmetic throughout: the returned
    root r satisfies r^k <= n < (r+1)^k."""
    if k < 1:
        raise ValueError("k-th root needs k >= 1")
    if n < 0:
        raise ValueError("k-th root of a negative integer")
    if _HAVE_GMPY2:
        r, exact = gmpy2.iroot(gmpy2.mpz(n), k)
        return int(r), bool(exact)
    return _iroot_newton(n, k)


@dataclass(frozen=True)
class FixedFrac:
    """A nonnegative real as int_part + frac_num / 2**precision_bits."""

    int_part: int
    frac_num: int
    precision_bits: int

    def __post_init__(self):
        if not 0 <= self.frac_num < (1 << self.precision_bits):
            raise ValueError("fractional numerator out of range")

    @property
    def value(self) -> Fraction:
        return self.int_part + Fraction(self.frac_num, 1 << self.precision_bits)

    @property
    def frac(self) -> Fraction:
        return Fraction(self.frac_num, 1 << self.precision_bits)

    def to_json_dict(self) -> dict:
        return {
            "int_part": str(self.int_part),
            "frac_num": str(self.frac_num),
            "precision_bits": self.precision_bits,
        }


def kth_root_fixed(n: int, k: int, precision_bits: int) -> FixedFrac:
    """n^(1/k) truncated toward zero at `precision_bits` binary digits.

    The scaled integer root floor((n * 2^(k*P))^(1/k)) is exact, so the
    result is deterministic and within 2^-P of the true root."""
    if k < 1:
        raise ValueError("k-th root needs k >= 1")
    if precision_bits < 1:
        raise ValueError("precision must be positive")
    scaled, _ = integer_kth_root(n << (k * precision_bits), k)
    return FixedFrac(
        scaled >> precision_bits,
        scaled & ((1 << precision_bits) - 1),
        precision_bits,
    )


# ---------------------------------------------------------------------------
# digit sums and p-adic valuations


def digit_sum(n: int, q: int) -> int:
    """Sum of the base-q digits of n."""
    if q < 2:
        raise ValueError("digit sum needs base >= 2")
    if n < 0:
        raise ValueError("digit sum of a negative integer")
    s = 0
    while n:
        n, d = divmod(n, q)
        s += d
    return s


def nu_p_factorial(n: int, p: int) -> int:
    """p-adic valuation of n! via the digit-sum form (n - s_p(n)) / (p - 1)."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (n - digit_sum(n, p)) // (p - 1)


# ---------------------------------------------------------------------------
# numeric verification of the two analytic inequalities


@dataclass(frozen=True)
class BoundMargin:
    check: str  # "power_lower" | "root_gap_lower" | "root_gap_upper"
    point: tuple
    margin: float
    ok: bool


@dataclass(frozen=True)
class BoundReport:
    precision_bits: int
    guard_bits: int
    margins: tuple[BoundMargin, ...]
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "precision_bits": self.precision_bits,
            "guard_bits": self.guard_bits,
            "passed": self.passed,
            "checks": len(self.margins),
            "min_margin": min((m.margin for m in self.margins), default=None),
        }


def default_x_grid() -> list[Fraction]:
    """x = j/1000 for j = 1..1000."""
    return [Fraction(j, 1000) for j in range(1, 1001)]


def default_root_grid() -> list[tuple[int, int]]:
    """(k, r) for k = 2..50 and r in {k+1, ..., k+100} union {10^3, 10^6}."""
    grid = []
    for k in range(2, 51):
        rs = list(range(k + 1, k + 101))
        for extra in (1000, 10**6):
            if extra > k + 100:
                rs.append(extra)
        grid.extend((k, r) for r in rs)
    return grid


def verify_analytic_bounds(
    x_grid=None,
    root_grid=None,
    precision_bits: int = 128,
    guard_bits: int = 8,
) -> BoundReport:
    """Evaluate both inequalities on a grid at the requested binary precision.

    Checked pointwise:
      * (1-x)^(-1/x) >= e*(1 + x/2) for x in (0, 1]
      * 0 <= (r - (k-1)/2) - (r(r-1)...(r-k+1))^(1/k) <= k^2/(r-k)
        for integer k >= 2 and real r > k
    A point passes when its signed margin is >= -2 * 2^-(P - guard), which
    absorbs accumulated rounding of the high-precision evaluation."""
    if precision_bits < 64:
        raise ValueError("evaluation precision must be at least 64 bits")
    if x_grid is None:
        x_grid = default_x_grid()
    if root_grid is None:
        root_grid = default_root_grid()

    margins = []
    with mpmath.workprec(precision_bits + guard_bits):
        tol = -(mpmath.mpf(2) ** (-(precision_bits - guard_bits) + 1))

        for x in x_grid:
            x = Fraction(x)
            if not 0 < x <= 1:
                raise ValueError("power inequality grid needs x in (0, 1]")
            if x == 1:
                margin = mpmath.inf  # left side diverges; trivially true
            else:
                xm = mpmath.mpf(x.numerator) / x.denominator
                lhs = (1 - xm) ** (-1 / xm)
                rhs = mpmath.e * (1 + xm / 2)
                margin = lhs - rhs
            margins.append(
                BoundMargin("power_lower", (float(x),), float(margin), margin >= tol)
            )

        for k, r in root_grid:
            if k < 2:
                raise ValueError("root-gap inequality needs k >= 2")
            rq = Fraction(r)
            if rq <= k:
                # the upper bound k^2/(r-k) is undefined at r = k
                raise ValueError("root-gap inequality grid needs r > k")
            rm = mpmath.mpf(rq.numerator) / rq.denominator
            prod = mpmath.mpf(1)
            for j in range(k):
                prod *= rm - j
            root = prod ** (mpmath.mpf(1) / k)
            lower = (rm - mpmath.mpf(k - 1) / 2) - root
            upper = mpmath.mpf(k * k) / (rm - k) - lower
            margins.append(
                BoundMargin("root_gap_lower", (k, float(rq)), float(lower), lower >= tol)
            )
            margins.append(
                BoundMargin("root_gap_upper", (k, float(rq)), float(upper), upper >= tol)
            )

    return BoundReport(
        precision_bits=precision_bits,
        guard_bits=guard_bits,
        margins=tuple(margins),
        passed=all(m.ok for m in margins),
    )
