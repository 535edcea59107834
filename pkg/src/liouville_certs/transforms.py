"""Polynomial transforms for rational scaling and shifting of algebraic
numbers, height bounds on the transformed polynomials, and the explicit
separation lower bound for distinct algebraic numbers."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from gmpy2 import is_square, isqrt, mpq, mpz

from .exact_core import (
    IRREDUCIBILITY_CHECK_HEIGHT_LIMIT,
    Enclosure,
    Inconclusive,
    IntPolynomial,
    RealAlgebraic,
    height,
    is_irreducible,
    primitive_canonical,
    refine,
)

__all__ = [
    "Lemma1Report",
    "scale_poly",
    "shift_poly",
    "lemma1_check",
    "minpoly_scale",
    "minpoly_shift",
    "separation_lower_bound",
    "lemma2_check",
]

# Half-integer powers in the separation bound are rounded down with this
# many digits of precision (relative error well under 1e-6).
_SQRT_SCALE = mpz(10) ** 9


def scale_poly(p: IntPolynomial, a, b) -> IntPolynomial:
    """Coefficients a_j * b^j * a^(m-j): if rho is a root of p then
    (a/b)*rho is a root of the result."""
    a, b = mpz(a), mpz(b)
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    if p.is_zero:
        raise ValueError("zero polynomial")
    m = p.degree
    return IntPolynomial.from_coeffs(
        c * b**j * a ** (m - j) for j, c in enumerate(p.coeffs)
    )


def shift_poly(p: IntPolynomial, a, b) -> IntPolynomial:
    """b^m * p(x - a/b): if rho is a root of p then rho + a/b is a root.
    Integer coefficients c_i = sum_j a_j * C(j, j-i) * (-a)^(j-i) * b^(m-j+i)."""
    a, b = mpz(a), mpz(b)
    if b == 0:
        raise ValueError("b must be nonzero")
    if p.is_zero:
        raise ValueError("zero polynomial")
    m = p.degree
    out = [mpz(0)] * (m + 1)
    for j, cj in enumerate(p.coeffs):
        if cj == 0:
            continue
        for i in range(j + 1):
            out[i] += cj * comb(j, j - i) * (-a) ** (j - i) * b ** (m - (j - i))
    return IntPolynomial.from_coeffs(out)


@dataclass(frozen=True)
class Lemma1Report:
    q1: IntPolynomial
    q2: IntPolynomial
    h_p: mpz
    h_q1: mpz
    h_q2: mpz
    bound_i: mpz
    bound_ii: mpz

    @property
    def pass_i(self) -> bool:
        return self.h_q1 <= self.bound_i

    @property
    def pass_ii(self) -> bool:
        return self.h_q2 <= self.bound_ii


def lemma1_check(p: IntPolynomial, a, b) -> Lemma1Report:
    """Both transformed polynomials with their height bounds
    max(|a|,|b|)^m * H(p) and 2^(m+1) * max(|a|,|b|)^m * H(p)."""
    a, b = mpz(a), mpz(b)
    q1 = scale_poly(p, a, b)
    q2 = shift_poly(p, a, b)
    m = p.degree
    h_p = height(p)
    base = max(abs(a), abs(b)) ** m * h_p
    return Lemma1Report(
        q1=q1,
        q2=q2,
        h_p=h_p,
        h_q1=height(q1),
        h_q2=height(q2),
        bound_i=base,
        bound_ii=mpz(2) ** (m + 1) * base,
    )


def _rebuilt(poly: IntPolynomial, enc: Enclosure) -> RealAlgebraic:
    mp = primitive_canonical(poly)
    # Rational scaling/shifting preserves degree and irreducibility; the
    # re-check is cheap insurance, skipped where it would need factoring
    # of astronomically large coefficients.
    if height(mp) <= IRREDUCIBILITY_CHECK_HEIGHT_LIMIT and not is_irreducible(mp):
        raise AssertionError("transform produced a reducible polynomial")
    return RealAlgebraic.make(mp, enc, check=True, check_irreducible=False)


def minpoly_scale(alpha: RealAlgebraic, r) -> RealAlgebraic:
    """The real algebraic number r * alpha."""
    r = mpq(r)
    if r == 0:
        raise ValueError("degenerate product: r = 0")
    if r == 1:
        return alpha
    poly = scale_poly(alpha.minpoly, r.numerator, r.denominator)
    return _rebuilt(poly, alpha.isolating.scale(r))


def minpoly_shift(alpha: RealAlgebraic, r) -> RealAlgebraic:
    """The real algebraic number alpha + r."""
    r = mpq(r)
    if r == 0:
        return alpha
    poly = shift_poly(alpha.minpoly, r.numerator, r.denominator)
    return _rebuilt(poly, alpha.isolating + r)


# ---------------------------------------------------------------------------
# separation lower bound


def _term(c: int, a: int, b: int, n: int, m: int):
    """Represent 2^-c * (n+1)^(-a/2) * (m+1)^(-b/2) as (q, s) meaning
    q / sqrt(s) with q rational and s a positive integer."""
    q = mpq(1, mpz(2) ** c) / (mpz(n + 1) ** (a // 2) * mpz(m + 1) ** (b // 2))
    s = mpz(n + 1) ** (a % 2) * mpz(m + 1) ** (b % 2)
    return q, s


def _lower_bound_q_over_sqrt(q: mpq, s) -> mpq:
    if s == 1:
        return q
    if is_square(s):
        return q / isqrt(s)
    # sqrt(s) <= (isqrt(s*S^2)+1)/S, so q/sqrt(s) >= q*S/(isqrt(s*S^2)+1)
    return q * _SQRT_SCALE / (isqrt(s * _SQRT_SCALE * _SQRT_SCALE) + 1)


def separation_lower_bound(n: int, m: int, h_alpha, h_beta) -> mpq:
    """Rational lower bound for the explicit separation constant

        (n+1)^(-m/2) (m+1)^(-n/2)
          * max{2^-n (n+1)^(-(m-1)/2), 2^-m (m+1)^(-(n-1)/2)}
          * h_alpha^-m * h_beta^-n

    for distinct nonzero algebraic numbers of degrees n and m.  Half-integer
    powers are rounded down via integer square roots, so the returned value
    never exceeds the true one."""
    if n < 1 or m < 1:
        raise ValueError("degrees must be >= 1")
    h_alpha, h_beta = mpz(h_alpha), mpz(h_beta)
    if h_alpha < 1 or h_beta < 1:
        raise ValueError("heights must be >= 1")
    # combined exponents: prefix (n+1)^(-m/2) (m+1)^(-n/2) folded into each
    # branch of the max
    q1, s1 = _term(n, 2 * m - 1, n, n, m)
    q2, s2 = _term(m, m, 2 * n - 1, n, m)
    # larger branch: q1/sqrt(s1) >= q2/sqrt(s2) iff q1^2*s2 >= q2^2*s1
    if q1 * q1 * s2 >= q2 * q2 * s1:
        const = _lower_bound_q_over_sqrt(q1, s1)
    else:
        const = _lower_bound_q_over_sqrt(q2, s2)
    return const / (h_alpha**m * h_beta**n)


def _distinct_or_raise(alpha: RealAlgebraic, beta: RealAlgebraic) -> None:
    if alpha.minpoly == beta.minpoly and alpha.root_index() == beta.root_index():
        raise ValueError("identical inputs")


def lemma2_check(
    alpha: RealAlgebraic, beta: RealAlgebraic, max_iter: int = 64
) -> tuple:
    """(bound, distance, pass): the separation bound applied to a concrete
    pair, with the distance enclosure refined until decidable."""
    if alpha.is_zero or beta.is_zero:
        raise ValueError("separation bound requires nonzero numbers")
    _distinct_or_raise(alpha, beta)
    bound = separation_lower_bound(
        alpha.degree, beta.degree, alpha.height, beta.height
    )
    w = mpq(1, 10**6)
    for _ in range(max_iter):
        d = (refine(alpha, w) - refine(beta, w)).abs()
        if d.lo >= bound:
            return bound, d, True
        if d.hi < bound:
            return bound, d, False
        w = w * w
    raise Inconclusive("distance comparison undecided at the refinement cap")
