"""Exact arithmetic substrate: integer polynomials, rational enclosures,
real algebraic numbers with isolated roots.

Everything feeding an inequality verdict is exact rational arithmetic
(gmpy2 mpz/mpq).  No floating point appears anywhere in this module;
logarithm estimates for reporting use integer power comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import gcd, is_square, isqrt, mpq, mpz

__all__ = [
    "Inconclusive",
    "IntPolynomial",
    "Enclosure",
    "RealAlgebraic",
    "height",
    "primitive_canonical",
    "is_irreducible",
    "isolate_real_roots",
    "refine",
    "refine_enclosure",
    "eval_enclosure",
    "floor_log10",
    "log10_bounds",
    "round_to_grid",
]

# Heights above this skip the (factorization-based) irreducibility
# re-verification after transforms; see transforms.py.
IRREDUCIBILITY_CHECK_HEIGHT_LIMIT = mpz(10) ** 6


class Inconclusive(Exception):
    """Interval refinement hit its iteration cap before the comparison
    became decidable.  Deliberately distinct from a False verdict."""


def _sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial, coefficients in ascending degree
    order with no trailing zeros.  The zero polynomial has coeffs == ()."""

    coeffs: tuple

    @staticmethod
    def from_coeffs(cs: Iterable) -> "IntPolynomial":
        cs = [mpz(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        return IntPolynomial(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def eval_q(self, x: mpq) -> mpq:
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: mpq) -> int:
        return _sign(self.eval_q(x))

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial.from_coeffs(
            i * c for i, c in enumerate(self.coeffs) if i > 0
        )

    def content(self):
        g = mpz(0)
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            parts.append(f"{c}*x^{i}" if i else f"{c}")
        return " + ".join(parts)


def height(p: IntPolynomial):
    """Naive height: max absolute value of the coefficients."""
    if p.is_zero:
        raise ValueError("undefined height: zero polynomial")
    return max(abs(c) for c in p.coeffs)


def primitive_canonical(p: IntPolynomial) -> IntPolynomial:
    """Divide out the content and normalize to a positive leading
    coefficient.  Same roots as p."""
    if p.is_zero:
        raise ValueError("zero polynomial has no primitive part")
    g = p.content()
    if p.leading < 0:
        g = -g
    return IntPolynomial(tuple(c // g for c in p.coeffs))


# ---------------------------------------------------------------------------
# rational-coefficient helpers (Sturm sequences, gcd)


def _qpoly(p: IntPolynomial) -> list:
    return [mpq(c) for c in p.coeffs]


def _qtrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _qeval(a: Sequence, x: mpq) -> mpq:
    acc = mpq(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _qrem(a: list, b: list) -> list:
    """Remainder of a modulo b over Q, coefficients normalized to keep
    sizes tame (positive scaling preserves signs)."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _qtrim(a):
        da = len(a) - 1
        if da < db:
            break
        f = a[-1] / lb
        for i in range(db + 1):
            a[da - db + i] -= f * b[i]
        a.pop()
        _qtrim(a)
    _qtrim(a)
    if a:
        scale = max(abs(c) for c in a)
        a = [c / scale for c in a]
    return a


def sturm_chain(p: IntPolynomial) -> list:
    chain = [_qpoly(p), _qpoly(p.derivative())]
    while len(chain[-1]) > 0:
        r = _qrem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(chain: list, x: mpq) -> int:
    signs = [s for s in (_sign(_qeval(f, x)) for f in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(chain: list, a: mpq, b: mpq) -> int:
    """Number of distinct real roots in (a, b]."""
    return _variations(chain, a) - _variations(chain, b)


def is_squarefree(p: IntPolynomial) -> bool:
    if p.is_zero:
        return False
    if p.degree <= 1:
        return True
    chain = sturm_chain(p)
    return len(chain[-1]) == 1


# ---------------------------------------------------------------------------
# irreducibility (Mignotte-bounded exhaustive factor search)


def _factorize_small(n) -> dict:
    n = abs(mpz(n))
    if n > mpz(10) ** 14:
        raise ValueError(
            "irreducibility check out of supported range: "
            f"cannot enumerate divisors of {n}"
        )
    out = {}
    d = mpz(2)
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n) -> list:
    fac = _factorize_small(n)
    divs = [mpz(1)]
    for prime, mult in fac.items():
        divs = [d * prime**e for d in divs for e in range(mult + 1)]
    return sorted(divs)


def _divides_exactly(g: IntPolynomial, p: IntPolynomial) -> bool:
    """Exact division test over Z."""
    rem = list(p.coeffs)
    dg, lg = g.degree, g.leading
    while len(rem) - 1 >= dg:
        lead = rem[-1]
        if lead == 0:
            rem.pop()
            continue
        if lead % lg != 0:
            return False
        f = lead // lg
        off = len(rem) - 1 - dg
        for i in range(dg + 1):
            rem[off + i] -= f * g.coeffs[i]
        rem.pop()
    return all(c == 0 for c in rem)


def _has_rational_root(p: IntPolynomial) -> bool:
    if p.coeffs[0] == 0:
        return True  # root 0
    lead_divs = _divisors(p.leading)
    const_divs = _divisors(p.coeffs[0])
    for den in lead_divs:
        for num in const_divs:
            if gcd(num, den) != 1:
                continue
            for r in (mpq(num, den), mpq(-num, den)):
                if p.eval_q(r) == 0:
                    return True
    return False


def is_irreducible(p: IntPolynomial, candidate_cap: int = 10**7) -> bool:
    """Irreducibility over Q for a canonical (primitive, positive-leading)
    polynomial.  Squarefree check, rational-root test, then exhaustive
    search for factors of degree d <= deg/2 with coefficients bounded by
    the Mignotte factor bound.  Exponential, adequate at desk scale
    (degree <= 8, height <= 10^6)."""
    if p.is_zero or p.degree == 0:
        raise ValueError("constant polynomial")
    if p.degree == 1:
        return True
    if not is_squarefree(p):
        return False
    if p.degree == 2:
        c0, c1, c2 = p.coeffs
        disc = c1 * c1 - 4 * c2 * c0
        return not (disc >= 0 and is_square(disc))
    if _has_rational_root(p):
        return False
    if p.degree == 3:
        return True
    m = p.degree
    norm2 = sum(c * c for c in p.coeffs)
    p1, pm1 = p.eval_q(mpq(1)), p.eval_q(mpq(-1))
    lead_divs = _divisors(p.leading)
    const_divs = _divisors(p.coeffs[0])
    for d in range(2, m // 2 + 1):
        bound = int(2**d * (isqrt(norm2) + 1))
        n_mid = (2 * bound + 1) ** (d - 1)
        if 2 * len(lead_divs) * len(const_divs) * n_mid > candidate_cap:
            raise ValueError(
                f"irreducibility search for degree-{d} factors exceeds the "
                f"candidate cap {candidate_cap}"
            )
        for bd in lead_divs:
            for b0_abs in const_divs:
                for b0 in (b0_abs, -b0_abs):
                    for mid in itertools.product(
                        range(-bound, bound + 1), repeat=d - 1
                    ):
                        g = IntPolynomial.from_coeffs((b0, *mid, bd))
                        if g.degree != d:
                            continue
                        g1 = g.eval_q(mpq(1))
                        if g1 == 0 or p1 % g1.numerator != 0:
                            continue
                        gm1 = g.eval_q(mpq(-1))
                        if gm1 == 0 or pm1 % gm1.numerator != 0:
                            continue
                        if _divides_exactly(g, p):
                            return False
    return True


# ---------------------------------------------------------------------------
# enclosures


@dataclass(frozen=True)
class Enclosure:
    """Closed interval with exact rational endpoints."""

    lo: mpq
    hi: mpq

    def __post_init__(self):
        object.__setattr__(self, "lo", mpq(self.lo))
        object.__setattr__(self, "hi", mpq(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"inverted enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self) -> mpq:
        return self.hi - self.lo

    @property
    def mid(self) -> mpq:
        return (self.lo + self.hi) / 2

    def contains(self, x: mpq) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "Enclosure") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def __add__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo + other.lo, self.hi + other.hi)
        return Enclosure(self.lo + mpq(other), self.hi + mpq(other))

    def __sub__(self, other):
        if isinstance(other, Enclosure):
            return Enclosure(self.lo - other.hi, self.hi - other.lo)
        return Enclosure(self.lo - mpq(other), self.hi - mpq(other))

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo)

    def __mul__(self, other):
        if isinstance(other, Enclosure):
            prods = [
                self.lo * other.lo,
                self.lo * other.hi,
                self.hi * other.lo,
                self.hi * other.hi,
            ]
            return Enclosure(min(prods), max(prods))
        return self.scale(mpq(other))

    def scale(self, r: mpq) -> "Enclosure":
        r = mpq(r)
        if r >= 0:
            return Enclosure(self.lo * r, self.hi * r)
        return Enclosure(self.hi * r, self.lo * r)

    def abs(self) -> "Enclosure":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Enclosure(mpq(0), max(-self.lo, self.hi))

    def pow_int(self, e: int) -> "Enclosure":
        """x^e for nonnegative intervals (sufficient here)."""
        if e < 0 or self.lo < 0:
            raise ValueError("pow_int requires e >= 0 and a nonnegative interval")
        return Enclosure(self.lo**e, self.hi**e)

    @staticmethod
    def point(x: mpq) -> "Enclosure":
        x = mpq(x)
        return Enclosure(x, x)


def eval_enclosure(p: IntPolynomial, x: Enclosure) -> Enclosure:
    """Interval containing {p(t) : t in x}, by interval Horner."""
    acc = Enclosure.point(0)
    for c in reversed(p.coeffs):
        acc = acc * x + mpq(c)
    return acc


# ---------------------------------------------------------------------------
# real root isolation


def _root_bound(p: IntPolynomial) -> mpq:
    # Cauchy bound: all real roots lie in (-M, M)
    return 1 + max(abs(mpq(c, p.leading)) for c in p.coeffs[:-1])


_SPLIT_FRACTIONS = (mpq(1, 2), mpq(1, 3), mpq(2, 5), mpq(3, 7), mpq(4, 9))


def _nonroot_split(p: IntPolynomial, a: mpq, b: mpq) -> mpq:
    for f in _SPLIT_FRACTIONS:
        m = a + (b - a) * f
        if p.eval_q(m) != 0:
            return m
    raise AssertionError("could not find a non-root split point")


def _isolate_quadratic(p: IntPolynomial) -> list:
    c0, c1, c2 = p.coeffs
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    if is_square(disc):
        s = isqrt(disc)
        roots = sorted({mpq(-c1 - s, 2 * c2), mpq(-c1 + s, 2 * c2)})
        return [Enclosure.point(r) for r in roots]
    prec = mpz(10) ** 12
    while True:
        s = isqrt(disc * prec * prec)  # s <= sqrt(disc)*prec < s+1
        sqrt_lo, sqrt_hi = mpq(s, prec), mpq(s + 1, prec)
        r1 = sorted((-c1 - e) / (2 * c2) for e in (sqrt_lo, sqrt_hi))
        r2 = sorted((-c1 + e) / (2 * c2) for e in (sqrt_lo, sqrt_hi))
        e1, e2 = sorted(
            (Enclosure(r1[0], r1[1]), Enclosure(r2[0], r2[1])),
            key=lambda e: e.lo,
        )
        if e1.hi < e2.lo:
            return [e1, e2]
        prec *= prec


def isolate_real_roots(p: IntPolynomial) -> list:
    """Pairwise-disjoint enclosures, one per real root, sorted ascending.
    Sturm bisection; degree <= 2 handled directly."""
    if p.is_zero or p.degree < 1:
        raise ValueError("need degree >= 1")
    if not is_squarefree(p):
        raise ValueError("polynomial is not squarefree")
    if p.degree == 1:
        return [Enclosure.point(mpq(-p.coeffs[0], p.coeffs[1]))]
    if p.degree == 2:
        return _isolate_quadratic(p)
    chain = sturm_chain(p)
    bound = _root_bound(p) + 1
    stack = [(-bound, bound)]
    out = []
    while stack:
        a, b = stack.pop()
        count = sturm_count(chain, a, b)
        if count == 0:
            continue
        if count == 1:
            out.append(Enclosure(a, b))
            continue
        m = _nonroot_split(p, a, b)
        stack.append((a, m))
        stack.append((m, b))
    out.sort(key=lambda e: e.lo)
    return out


def refine_enclosure(p: IntPolynomial, enc: Enclosure, target_width: mpq) -> Enclosure:
    """Bisect enc down to the target width, driven by the sign of p at the
    midpoint.  Requires a sign change (or a root at an endpoint)."""
    target_width = mpq(target_width)
    if target_width <= 0:
        raise ValueError("target width must be positive")
    lo, hi = enc.lo, enc.hi
    s_lo, s_hi = p.sign_at(lo), p.sign_at(hi)
    if s_lo == 0:
        return Enclosure.point(lo)
    if s_hi == 0:
        return Enclosure.point(hi)
    if s_lo == s_hi:
        raise ValueError("no sign change on the enclosure")
    while hi - lo > target_width:
        m = (lo + hi) / 2
        s_m = p.sign_at(m)
        if s_m == 0:
            return Enclosure.point(m)
        if s_m == s_lo:
            lo = m
        else:
            hi = m
    return Enclosure(lo, hi)


# ---------------------------------------------------------------------------
# real algebraic numbers


@dataclass(frozen=True)
class RealAlgebraic:
    """An exact real algebraic number: irreducible canonical minimal
    polynomial plus an isolating rational interval selecting one real root."""

    minpoly: IntPolynomial
    isolating: Enclosure

    @staticmethod
    def make(
        minpoly: IntPolynomial,
        isolating: Enclosure,
        check: bool = True,
        check_irreducible: bool = True,
    ) -> "RealAlgebraic":
        if minpoly.is_zero or minpoly.degree < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        if check:
            if primitive_canonical(minpoly) != minpoly:
                raise ValueError("minimal polynomial is not canonical")
            if (
                check_irreducible
                and height(minpoly) <= IRREDUCIBILITY_CHECK_HEIGHT_LIMIT
                and not is_irreducible(minpoly)
            ):
                raise ValueError("minimal polynomial is reducible")
            _check_single_root(minpoly, isolating)
        return RealAlgebraic(minpoly, isolating)

    @staticmethod
    def from_rational(r) -> "RealAlgebraic":
        r = mpq(r)
        poly = IntPolynomial.from_coeffs((-r.numerator, r.denominator))
        return RealAlgebraic(primitive_canonical(poly), Enclosure.point(r))

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def height(self):
        return height(self.minpoly)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_rational(self) -> mpq:
        if not self.is_rational:
            raise ValueError("not a rational number")
        return mpq(-self.minpoly.coeffs[0], self.minpoly.coeffs[1])

    @property
    def is_zero(self) -> bool:
        return self.is_rational and self.minpoly.coeffs[0] == 0

    def refined(self, target_width) -> Enclosure:
        return refine(self, target_width)

    def root_index(self) -> int:
        """Index of the selected root in the ascending real-root list."""
        roots = isolate_real_roots(self.minpoly)
        mine = refine(self, _min_gap(roots))
        for i, r in enumerate(roots):
            r_ref = refine_enclosure(self.minpoly, r, _min_gap(roots))
            if r_ref.intersects(mine):
                return i
        raise AssertionError("isolating interval does not match any root")

    def same_number(self, other: "RealAlgebraic") -> bool:
        if self.minpoly != other.minpoly:
            return False
        return self.root_index() == other.root_index()


def _min_gap(roots: list) -> mpq:
    if len(roots) <= 1:
        return mpq(1)
    gaps = [b.lo - a.hi for a, b in zip(roots, roots[1:])]
    g = min(gaps)
    return g / 4 if g > 0 else mpq(1, 10**12)


def _check_single_root(p: IntPolynomial, enc: Enclosure) -> None:
    if p.degree == 1:
        r = mpq(-p.coeffs[0], p.coeffs[1])
        if not enc.contains(r):
            raise ValueError("isolating interval misses the rational root")
        return
    s_lo, s_hi = p.sign_at(enc.lo), p.sign_at(enc.hi)
    if s_lo != 0 and s_hi != 0 and s_lo != s_hi:
        return  # sign change: odd number of roots; irreducible+squarefree => 1
    chain = sturm_chain(p)
    if sturm_count(chain, enc.lo, enc.hi) != 1:
        raise ValueError("isolating interval does not contain exactly one root")


def refine(a: RealAlgebraic, target_width) -> Enclosure:
    """Nested sub-enclosure of a.isolating with width <= target_width."""
    return refine_enclosure(a.minpoly, a.isolating, mpq(target_width))


# ---------------------------------------------------------------------------
# base-10 magnitude estimates (reporting only; exact power comparisons)

_LOG_POW = 1 << 13  # mantissa log resolution 2^-13 in log10 units
_MANT_DIGITS = 25


def floor_log10(x: mpq) -> int:
    """Exact floor(log10(x)) for x > 0."""
    x = mpq(x)
    if x <= 0:
        raise ValueError("floor_log10 needs x > 0")
    num, den = x.numerator, x.denominator
    # digit counts give e up to +-2 (sizeinbase may overcount by one);
    # settle exactly by power comparison
    e = num.num_digits(10) - den.num_digits(10)
    while _cmp_pow10(num, den, e) < 0:
        e -= 1
    while _cmp_pow10(num, den, e + 1) >= 0:
        e += 1
    return e


def _cmp_pow10(num, den, e: int) -> int:
    # sign of num/den - 10^e
    if e >= 0:
        lhs, rhs = num, den * mpz(10) ** e
    else:
        lhs, rhs = num * mpz(10) ** (-e), den
    return _sign(lhs - rhs)


def _log10_mantissa_bounds(m_int, scale_digits: int):
    """Bounds on log10(m_int / 10^scale_digits) for mantissa in [1, 10),
    via binary search on t with 10^t <= mantissa^LOG_POW."""
    big = m_int**_LOG_POW
    shift = scale_digits * _LOG_POW
    lo_t, hi_t = 0, _LOG_POW
    while lo_t < hi_t:
        mid = (lo_t + hi_t + 1) // 2
        if big >= mpz(10) ** (mid + shift):
            lo_t = mid
        else:
            hi_t = mid - 1
    return mpq(lo_t, _LOG_POW), mpq(lo_t + 1, _LOG_POW)


def log10_bounds(x: mpq) -> tuple:
    """Rational (lo, hi) with lo <= log10(x) <= hi, hi - lo <= ~3e-4.
    Float-free: integer powering and comparison only."""
    x = mpq(x)
    e = floor_log10(x)
    num, den = x.numerator, x.denominator
    p = _MANT_DIGITS - 1
    if e >= 0:
        m = (num * mpz(10) ** p) // (den * mpz(10) ** e)
    else:
        m = (num * mpz(10) ** (p - e)) // den
    lo1, _ = _log10_mantissa_bounds(m, p)
    _, hi2 = _log10_mantissa_bounds(m + 1, p)
    return mpq(e) + lo1, mpq(e) + hi2


def round_to_grid(x: mpq, grid: mpq) -> mpq:
    """Nearest multiple of grid (half away from zero)."""
    grid = mpq(grid)
    q = x / grid
    n = q.numerator
    d = q.denominator
    if n >= 0:
        k = (2 * n + d) // (2 * d)
    else:
        k = -((-2 * n + d) // (2 * d))
    return mpq(k) * grid
