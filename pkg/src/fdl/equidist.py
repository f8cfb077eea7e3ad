"""Fractional parts of a!^(1/k): sample sets, interval counts, exact star
discrepancy, the parity-split critical intervals, and the deviation table
for the equidistribution conjecture.

All interval arithmetic is exact: sample values are fixed-point fractions
frac_num / 2^P and interval endpoints are rationals, so endpoint membership
is deterministic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .arith import kth_root_fixed


class Sample(NamedTuple):
    a: int
    k: int
    frac_num: int  # value = frac_num / 2^precision_bits, in [0, 1)


@dataclass(frozen=True)
class SampleSet:
    samples: tuple[Sample, ...]
    a_max: int
    k_max: int
    precision_bits: int

    def __len__(self) -> int:
        return len(self.samples)

    def values(self) -> list[Fraction]:
        scale = 1 << self.precision_bits
        return [Fraction(s.frac_num, scale) for s in self.samples]


def default_k_max(a_max: int) -> int:
    """max(2, floor(5 * ln(ln(a_max)))); natural logarithms."""
    return max(2, math.floor(5 * math.log(math.log(a_max))))


def generate_samples(a_max: int, precision_bits: int = 96, k_max: int | None = None) -> SampleSet:
    """frac(a!^(1/k)) for 2 <= a <= a_max and 2 <= k <= k_max.

    Factorials are built incrementally in a; each value is the truncating
    fixed-point k-th root at the requested precision, so regeneration is
    bit-for-bit reproducible."""
    if a_max < 3:
        raise ValueError("need a_max >= 3")
    if precision_bits < 64:
        raise ValueError("need at least 64 bits of precision")
    if k_max is None:
        k_max = default_k_max(a_max)
    if k_max < 2:
        raise ValueError("need k_max >= 2")
    samples = []
    f = 1
    for a in range(2, a_max + 1):
        f *= a
        for k in range(2, k_max + 1):
            ff = kth_root_fixed(f, k, precision_bits)
            samples.append(Sample(a=a, k=k, frac_num=ff.frac_num))
    return SampleSet(
        samples=tuple(samples), a_max=a_max, k_max=k_max, precision_bits=precision_bits
    )


def interval_count(sample_set: SampleSet, lo, hi) -> int:
    """Exact count of samples with lo <= value <= hi (closed interval)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not 0 <= lo <= hi <= 1:
        raise ValueError("need 0 <= lo <= hi <= 1")
    scale = 1 << sample_set.precision_bits
    lo_num, lo_den = lo.numerator * scale, lo.denominator
    hi_num, hi_den = hi.numerator * scale, hi.denominator
    count = 0
    for s in sample_set.samples:
        if s.frac_num * lo_den >= lo_num and s.frac_num * hi_den <= hi_num:
            count += 1
    return count


def star_discrepancy_values(values) -> Fraction:
    """Exact one-dimensional star discrepancy of a list of rationals in
    [0, 1): max over the sorted points x_i of max(i/n - x_i, x_i - (i-1)/n)."""
    xs = sorted(Fraction(v) for v in values)
    n = len(xs)
    if n == 0:
        raise ValueError("empty sample set")
    best = Fraction(0)
    for i, xv in enumerate(xs, start=1):
        best = max(best, Fraction(i, n) - xv, xv - Fraction(i - 1, n))
    return best


def star_discrepancy(sample_set: SampleSet) -> Fraction:
    """Exact one-dimensional star discrepancy of the sample values."""
    if not sample_set.samples:
        raise ValueError("empty sample set")
    return star_discrepancy_values(sample_set.values())


@dataclass(frozen=True)
class CriticalInterval:
    k: int  # class parameter used for the width
    c_floor: int
    lo: Fraction
    hi: Fraction
    wraps_to_zero: bool  # [1-w, 1] mod 1 counts the value 0 as a member

    def contains(self, value: Fraction) -> bool:
        if self.wraps_to_zero and value == 0:
            return True
        return self.lo <= value <= self.hi

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "c_floor": self.c_floor,
            "lo": str(self.lo),
            "hi": str(self.hi),
            "wraps_to_zero": self.wraps_to_zero,
        }


@dataclass(frozen=True)
class CriticalHitsReport:
    odd_interval: CriticalInterval
    even_interval: CriticalInterval
    odd_hits: int
    odd_total: int
    even_hits: int
    even_total: int

    def to_json_dict(self) -> dict:
        return {
            "odd_interval": self.odd_interval.to_json_dict(),
            "even_interval": self.even_interval.to_json_dict(),
            "odd_hits": self.odd_hits,
            "odd_total": self.odd_total,
            "even_hits": self.even_hits,
            "even_total": self.even_total,
        }


def critical_intervals(k: int, c_floor: int) -> tuple[CriticalInterval, CriticalInterval]:
    """The two parity windows of width k^2/(c_floor - k): [1-w, 1] mod 1 for
    odd classes and [1/2-w, 1/2] for even classes."""
    if c_floor <= k:
        raise ValueError("need c_floor > k")
    w = Fraction(k * k, c_floor - k)
    odd = CriticalInterval(
        k=k, c_floor=c_floor, lo=max(Fraction(0), 1 - w), hi=Fraction(1), wraps_to_zero=True
    )
    even = CriticalInterval(
        k=k,
        c_floor=c_floor,
        lo=max(Fraction(0), Fraction(1, 2) - w),
        hi=Fraction(1, 2),
        wraps_to_zero=False,
    )
    return odd, even


def critical_hits(sample_set: SampleSet, c_floor: int | None = None) -> CriticalHitsReport:
    """Count samples inside the parity-matched critical interval built with
    the widest class k = k_max at the cutoff c_floor (default ceil(sqrt(A))).

    A sample outside its parity interval is certified not to participate in
    any class-k solution with c >= c_floor for its parity."""
    if c_floor is None:
        c_floor = math.isqrt(sample_set.a_max)
        if c_floor * c_floor < sample_set.a_max:
            c_floor += 1
    if c_floor <= sample_set.k_max:
        raise ValueError("need c_floor > k_max of the sample set")
    odd, even = critical_intervals(sample_set.k_max, c_floor)
    scale = 1 << sample_set.precision_bits
    odd_hits = odd_total = even_hits = even_total = 0
    for s in sample_set.samples:
        value = Fraction(s.frac_num, scale)
        if s.k % 2:
            odd_total += 1
            odd_hits += odd.contains(value)
        else:
            even_total += 1
            even_hits += even.contains(value)
    return CriticalHitsReport(
        odd_interval=odd,
        even_interval=even,
        odd_hits=odd_hits,
        odd_total=odd_total,
        even_hits=even_hits,
        even_total=even_total,
    )


@dataclass(frozen=True)
class ConjectureRow:
    a_max: int
    size: int
    lo: Fraction
    hi: Fraction
    count: int
    deviation: Fraction  # count - |S| * |I|, exact
    thresholds: tuple[tuple[float, float], ...]  # (epsilon, |S|^(1-epsilon))

    def to_json_dict(self) -> dict:
        return {
            "a_max": self.a_max,
            "size": self.size,
            "lo": str(self.lo),
            "hi": str(self.hi),
            "count": self.count,
            "deviation_num": self.deviation.numerator,
            "deviation_den": self.deviation.denominator,
            "thresholds": [[e, t] for e, t in self.thresholds],
        }


def conjecture_report(
    a_list,
    epsilon_list,
    intervals,
    precision_bits: int = 96,
) -> list[ConjectureRow]:
    """Deviation table |S cap I| - |S|*|I| with |S|^(1-eps) reference
    columns.  Purely empirical: no pass/fail is attached."""
    if not a_list or not epsilon_list or not intervals:
        raise ValueError("need nonempty A, epsilon and interval lists")
    rows = []
    for a_max in a_list:
        ss = generate_samples(a_max, precision_bits)
        n = len(ss)
        for lo, hi in intervals:
            lo, hi = Fraction(lo), Fraction(hi)
            cnt = interval_count(ss, lo, hi)
            deviation = cnt - n * (hi - lo)
            thresholds = tuple((float(e), float(n ** (1 - e))) for e in epsilon_list)
            rows.append(
                ConjectureRow(
                    a_max=a_max,
                    size=n,
                    lo=lo,
                    hi=hi,
                    count=cnt,
                    deviation=deviation,
                    thresholds=thresholds,
                )
            )
    return rows


# ---------------------------------------------------------------------------
# JSON-lines persistence: one record per sample


def save_samples(sample_set: SampleSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in sample_set.samples:
            fh.write(
                json.dumps(
                    {
                        "a": s.a,
                        "k": s.k,
                        "frac_num": str(s.frac_num),
                        "precision_bits": sample_set.precision_bits,
                    },
                    sort_keys=True,
                )
                + "\n"
            )


def load_samples(path) -> SampleSet:
    samples = []
    precision = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            if precision is None:
                precision = int(rec["precision_bits"])
            elif precision != int(rec["precision_bits"]):
                raise ValueError("mixed precisions in sample file")
            samples.append(Sample(int(rec["a"]), int(rec["k"]), int(rec["frac_num"])))
    if not samples:
        raise ValueError("empty sample file")
    return SampleSet(
        samples=tuple(samples),
        a_max=max(s.a for s in samples),
        k_max=max(s.k for s in samples),
        precision_bits=precision,
    )
