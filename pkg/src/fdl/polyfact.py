"""Integer polynomials in the monomial basis and irreducibility certificates.

The polynomials of interest are the falling-factorial expansions
x(x-1)...(x-k+1) + shift.  Irreducibility over Z is decided by a staged
pipeline: integer-root detection, repeated-factor detection, mod-p
certificate primes, a partition sieve over mod-p factor degree multisets,
and finally full factorization over Z (with every witness re-verified by
exact multiplication).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .arith import factorial, falling_factorial, integer_kth_root, rising_factorial
from .modular import primes_up_to


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; coeffs ascending, () is the zero polynomial."""

    coeffs: tuple[int, ...]

    @staticmethod
    def of(seq) -> "IntPoly":
        cs = list(seq)
        while cs and cs[-1] == 0:
            cs.pop()
        return IntPoly(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero or other.is_zero:
            return IntPoly(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly.of(out)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, b in enumerate(other.coeffs):
            a[i] -= b
        return IntPoly.of(a)

    def scale(self, s: int) -> "IntPoly":
        return IntPoly.of(c * s for c in self.coeffs)

    def evaluate(self, x: int) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def derivative(self) -> "IntPoly":
        return IntPoly.of(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for c in self.coeffs), 0)

    def divexact(self, g: "IntPoly") -> "IntPoly":
        """Exact quotient self / g; raises if g does not divide self."""
        if g.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(g.coeffs)
        if dq < 0:
            raise ValueError("does not divide (degree)")
        q = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            top = rem[i + g.degree]
            if top % g.lead:
                raise ValueError("does not divide (leading coefficient)")
            q[i] = top // g.lead
            if q[i]:
                for j, b in enumerate(g.coeffs):
                    rem[i + j] -= q[i] * b
        if any(rem):
            raise ValueError("does not divide (remainder)")
        return IntPoly.of(q)

    def to_json_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            term = f"x^{i}" if i > 1 else ("x" if i == 1 else "")
            mag = "" if (abs(c) == 1 and i) else str(abs(c))
            s = ("-" if c < 0 else ("+" if parts else "")) + mag + term
            parts.append(s)
        return "".join(parts)


X_POLY = IntPoly((0, 1))


def falling_to_monomial(k: int, shift: int) -> IntPoly:
    """x(x-1)...(x-k+1) + shift, expanded into the monomial basis."""
    if k < 0:
        raise ValueError("need k >= 0")
    coeffs = [1]
    for j in range(k):
        # multiply by (x - j)
        coeffs = [0] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= j * coeffs[i + 1]
    coeffs[0] += shift
    return IntPoly.of(coeffs)


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over GF(p); coefficient lists ascending


def _ptrim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _ptrim([c % p for c in out])


def _pmonic(f, p):
    inv = pow(f[-1], p - 2, p)
    return [c * inv % p for c in f]


def _pdivmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        if c:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] = (a[i + j] - c * y) % p
    return _ptrim(q), _ptrim(a[: len(b) - 1])


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return _pmonic(a, p) if a else []


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _pderiv(f, p):
    return _ptrim([i * c % p for i, c in enumerate(f)][1:])


def _squarefree_parts(f, p):
    """Monic f -> list of (monic squarefree factor, multiplicity)."""
    out = []
    e = 1
    while len(f) > 1:
        d = _pderiv(f, p)
        if not d:
            f = f[::p]  # f = u(x^p); in GF(p) the p-th root keeps coefficients
            e *= p
            continue
        c = _pgcd(f, d, p)
        w = _pdivmod(f, c, p)[0] if len(c) > 1 else list(f)
        i = 1
        while len(w) > 1:
            y = _pgcd(w, c, p)
            if len(y) > 1:
                z = _pdivmod(w, y, p)[0]
                c = _pdivmod(c, y, p)[0]
            else:
                z, y = w, [1]
            if len(z) > 1:
                out.append((z, i * e))
            w = y
            i += 1
        f = c
    return out


def _ddf_degree_counts(f, p):
    """Squarefree monic f -> list of (degree d, number of degree-d factors)."""
    out = []
    if len(f) == 2:
        return [(1, 1)]
    w = [0, 1]
    fs = list(f)
    d = 0
    while len(fs) - 1 >= 2 * (d + 1):
        d += 1
        w = _ppowmod(w, p, fs, p)
        g = _pgcd(_psub(w, [0, 1], p), fs, p)
        if len(g) > 1:
            out.append((d, (len(g) - 1) // d))
            fs = _pdivmod(fs, g, p)[0]
            if len(fs) == 1:
                return out
            w = _pmod(w, fs, p)
    out.append((len(fs) - 1, 1))
    return out


def factor_degrees_mod_p(poly: IntPoly, p: int) -> tuple[int, ...]:
    """Multiset (sorted tuple) of irreducible-factor degrees of poly mod p,
    with multiplicity; via squarefree decomposition + distinct-degree
    factorization over GF(p)."""
    if poly.is_zero or poly.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if poly.lead % p == 0:
        raise ValueError("p divides the leading coefficient")
    f = _ptrim([c % p for c in poly.coeffs])
    f = _pmonic(f, p)
    degrees = []
    for g, mult in _squarefree_parts(f, p):
        for d, cnt in _ddf_degree_counts(g, p):
            degrees.extend([d] * (cnt * mult))
    return tuple(sorted(degrees))


# ---------------------------------------------------------------------------
# integer-side helpers


def _zgcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Z (positive leading coefficient), via monic
    Euclid with rational coefficients; degrees here are tiny."""
    fa = [Fraction(c) for c in a.coeffs]
    fb = [Fraction(c) for c in b.coeffs]

    def trim(f):
        while f and not f[-1]:
            f.pop()
        return f

    def rmod(u, v):
        u = list(u)
        inv = 1 / v[-1]
        for i in range(len(u) - len(v), -1, -1):
            c = u[i + len(v) - 1] * inv
            if c:
                for j, y in enumerate(v):
                    u[i + j] -= c * y
        return trim(u[: len(v) - 1])

    fa, fb = trim(fa), trim(fb)
    while fb:
        fa, fb = fb, rmod(fa, fb)
    if not fa:
        return IntPoly(())
    lcm_den = reduce(math.lcm, (c.denominator for c in fa), 1)
    ints = [int(c * lcm_den) for c in fa]
    g = reduce(math.gcd, (abs(c) for c in ints), 0)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return IntPoly.of(ints)


def _falling_equals(k: int, target: int) -> int | None:
    """Integer x with x(x-1)...(x-k+1) == target, for k >= 1, or None.

    The falling product is increasing for x > k and (-1)^k times an
    increasing rising product for x <= -1, so both branches are found by
    a k-th-root-seeded binary search rather than divisor enumeration."""
    if target == 0:
        return 0
    if target > 0:
        r0, _ = integer_kth_root(target, k)
        lo, hi = k + 1, r0 + k + 1  # falling(r0 + k, k) >= (r0+1)^k > target
        while lo <= hi:
            mid = (lo + hi) // 2
            v = falling_factorial(mid, k)
            if v == target:
                return mid
            if v < target:
                lo = mid + 1
            else:
                hi = mid - 1
    # negative branch: x = -m gives (-1)^k * m(m+1)...(m+k-1)
    want = target if k % 2 == 0 else -target
    if want > 0:
        r0, _ = integer_kth_root(want, k)
        lo, hi = 1, r0 + 1  # rising(m, k) >= m^k
        while lo <= hi:
            mid = (lo + hi) // 2
            v = rising_factorial(mid, k)
            if v == want:
                return -mid
            if v < want:
                lo = mid + 1
            else:
                hi = mid - 1
    return None


DIVISOR_SEARCH_CAP = 10**6


def rational_root(poly: IntPoly) -> int | None:
    """An integer root of poly, if one is found.

    Falling-factorial-shaped inputs x(x-1)...(x-k+1) + s are solved by
    monotone bracketing (exact k-th-root seed plus binary search), so the
    astronomically many divisors of a factorial constant term are never
    enumerated.  Other inputs fall back to a divisor search capped at
    DIVISOR_SEARCH_CAP trial divisors; past the cap the caller's
    recombination stage is the backstop."""
    if poly.is_zero:
        raise ValueError("the zero polynomial has every root")
    if poly.degree < 1:
        return None
    if poly.coeffs[0] == 0:
        return 0
    k = poly.degree
    shift = poly.coeffs[0]
    if poly == falling_to_monomial(k, shift):
        return _falling_equals(k, -shift)
    if poly.degree == 1:
        c0, c1 = poly.coeffs
        return -c0 // c1 if c0 % c1 == 0 else None
    c0 = abs(poly.coeffs[0])
    limit = math.isqrt(c0)
    for d in range(1, min(limit, DIVISOR_SEARCH_CAP) + 1):
        if c0 % d:
            continue
        for cand in (d, -d, c0 // d, -(c0 // d)):
            if poly.evaluate(cand) == 0:
                return cand
    return None


# ---------------------------------------------------------------------------
# irreducibility pipeline


class IrredStatus(enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class IrredVerdict:
    status: IrredStatus
    certificate: dict = field(default_factory=dict)

    @property
    def witness_factors(self) -> list[IntPoly]:
        return list(self.certificate.get("factors", []))

    def to_json_dict(self) -> dict:
        cert = {}
        for key, val in self.certificate.items():
            if key == "factors":
                cert[key] = [f.to_json_list() for f in val]
            else:
                cert[key] = val
        return {"status": self.status.value, "certificate": cert}


def _subset_sums(degs) -> set[int]:
    mask = 1
    for d in degs:
        mask |= mask << d
    total = sum(degs)
    return {i for i in range(total + 1) if (mask >> i) & 1}


def _certificate_primes(lead: int, limit: int = 10000):
    for p in primes_up_to(limit):
        if p == 2 or lead % p == 0:
            continue
        yield p


def _factor_over_z(poly: IntPoly) -> list[IntPoly]:
    """Full factorization of a primitive polynomial over Z (sympy-backed),
    re-verified here by exact multiplication before being returned."""
    import sympy

    x = sympy.Symbol("x")
    sp = sympy.Poly(list(reversed(poly.coeffs)), x, domain=sympy.ZZ)
    const, parts = sp.factor_list()
    const = int(const)
    factors: list[IntPoly] = []
    for fac, mult in parts:
        cf = [int(v) for v in reversed(fac.all_coeffs())]
        factors.extend([IntPoly.of(cf)] * mult)
    if const == -1:
        factors[0] = factors[0].scale(-1)
    elif const != 1:
        raise ValueError("input was not primitive")
    prod = reduce(lambda u, v: u * v, factors, IntPoly((1,)))
    if prod != poly:
        raise RuntimeError("factorization failed exact verification")
    return factors


def is_irreducible_over_Z(
    poly: IntPoly,
    prime_budget: int = 40,
    recombine_degree_cap: int = 24,
) -> IrredVerdict:
    """Certified irreducibility over Z for a primitive polynomial.

    Stages: integer root; repeated-factor gcd; certificate prime (a single
    irreducible mod-p reduction); partition sieve over mod-p degree
    multisets; full factorization for degrees up to the recombination cap.
    Reducible verdicts always carry witness factors whose exact product is
    the input."""
    if poly.is_zero or poly.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if poly.content() != 1:
        raise ValueError("input must be primitive (divide out the content)")
    n = poly.degree
    if n == 1:
        return IrredVerdict(IrredStatus.IRREDUCIBLE, {"kind": "degree_one"})

    root = rational_root(poly)
    if root is not None:
        linear = IntPoly((-root, 1))
        quotient = poly.divexact(linear)
        return IrredVerdict(
            IrredStatus.REDUCIBLE,
            {"kind": "integer_root", "root": root, "factors": [linear, quotient]},
        )

    rep = _zgcd(poly, poly.derivative())
    if rep.degree >= 1:
        return IrredVerdict(
            IrredStatus.REDUCIBLE,
            {"kind": "repeated_factor", "factors": [rep, poly.divexact(rep)]},
        )

    possible = set(range(n + 1))
    used_primes: list[int] = []
    for p in _certificate_primes(poly.lead):
        if len(used_primes) >= prime_budget:
            break
        f_mod = _ptrim([c % p for c in poly.coeffs])
        if len(_pgcd(f_mod, _pderiv(f_mod, p), p)) > 1:
            continue  # not squarefree mod p; does not count against the budget
        degs = factor_degrees_mod_p(poly, p)
        if degs == (n,):
            return IrredVerdict(
                IrredStatus.IRREDUCIBLE, {"kind": "certificate_prime", "p": p}
            )
        used_primes.append(p)
        possible &= _subset_sums(degs)
        if possible <= {0, n}:
            return IrredVerdict(
                IrredStatus.IRREDUCIBLE,
                {"kind": "partition_sieve", "primes": list(used_primes)},
            )

    if n <= recombine_degree_cap:
        factors = _factor_over_z(poly)
        if len(factors) == 1:
            return IrredVerdict(IrredStatus.IRREDUCIBLE, {"kind": "recombination"})
        return IrredVerdict(
            IrredStatus.REDUCIBLE, {"kind": "recombination", "factors": factors}
        )
    return IrredVerdict(IrredStatus.UNKNOWN, {"kind": "budget_exhausted"})


# ---------------------------------------------------------------------------
# exception scan


@dataclass(frozen=True)
class ScanResult:
    a_max: int
    k_max: int
    reducible: tuple[tuple[int, int], ...]  # (k, a), sorted
    unknown: tuple[tuple[int, int], ...]
    verdicts: dict  # (k, a) -> IrredVerdict for the reducible cells

    def to_json_dict(self) -> dict:
        return {
            "a_max": self.a_max,
            "k_max": self.k_max,
            "reducible": [list(cell) for cell in self.reducible],
            "unknown": [list(cell) for cell in self.unknown],
        }


def exception_scan(a_max: int, k_max: int, prime_budget: int = 40) -> ScanResult:
    """Scan x(x-1)...(x-k+1) - a! for 1 <= k <= k_max, k+3 <= a <= a_max and
    report the reducible cells; Unknown verdicts are surfaced, never
    dropped."""
    if a_max < 5 or k_max < 1:
        raise ValueError("need a_max >= 5 and k_max >= 1")
    reducible = []
    unknown = []
    verdicts = {}
    for k in range(1, k_max + 1):
        for a in range(k + 3, a_max + 1):
            poly = falling_to_monomial(k, -factorial(a))
            v = is_irreducible_over_Z(poly, prime_budget=prime_budget)
            if v.status is IrredStatus.REDUCIBLE:
                reducible.append((k, a))
                verdicts[(k, a)] = v
            elif v.status is IrredStatus.UNKNOWN:
                unknown.append((k, a))
    return ScanResult(
        a_max=a_max,
        k_max=k_max,
        reducible=tuple(sorted(reducible)),
        unknown=tuple(sorted(unknown)),
        verdicts=verdicts,
    )
