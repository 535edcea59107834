"""Factorial-gap decimal (and general base) Liouville numbers: exact
truncations with rigorous tail enclosures, the approximation-sequence
membership test, and the growth condition on denominator sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from gmpy2 import mpq, mpz

from .exact_core import Enclosure, Inconclusive

__all__ = [
    "DEFAULT_K_MAX",
    "TruncationRecord",
    "DigitLiouville",
    "liouville_constant",
    "truncation",
    "eq2_check",
    "liouville_enclosure",
    "digit_truncation",
    "s_beta_check",
    "growth_check",
]

# q_8 has 40321 digits; beyond that the factorial blowup needs an explicit
# override.
DEFAULT_K_MAX = 8


def _check_k(k: int, k_max: int, allow_large: bool) -> None:
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > k_max and not allow_large:
        raise ValueError(
            f"k={k} exceeds the configured limit k_max={k_max}; "
            "pass allow_large=True (--allow-large-k) to override"
        )


@dataclass(frozen=True)
class TruncationRecord:
    """k-th factorial truncation p_k / q_k of a digit-Liouville number,
    with an exact rational enclosure [tail_lo, tail_hi] of the tail."""

    k: int
    p: mpz
    q: mpz
    alpha: mpq
    tail_lo: mpq
    tail_hi: mpq

    @property
    def tail(self) -> Enclosure:
        return Enclosure(self.tail_lo, self.tail_hi)

    @property
    def h_alpha(self) -> mpz:
        """Naive height of the (reduced) truncation."""
        a = self.alpha
        return max(abs(a.numerator), a.denominator)


@dataclass(frozen=True)
class DigitLiouville:
    """sum_{j>=1} a_j * base^(-j!) with digits 1 <= a_j <= base-1,
    accessed statelessly by index (replayable)."""

    base: int
    digit_fn: Callable[[int], int]
    name: str = "custom"

    def digit(self, j: int) -> int:
        a = self.digit_fn(j)
        if not 1 <= a <= self.base - 1:
            raise ValueError(
                f"digit a_{j}={a} out of range 1..{self.base - 1}"
            )
        return a

    @staticmethod
    def preset(name: str, base: int = 10) -> "DigitLiouville":
        if name == "ones":
            return DigitLiouville(base, lambda j: 1, "ones")
        if name == "alt12":
            if base < 3:
                raise ValueError("alt12 needs base >= 3")
            return DigitLiouville(base, lambda j: 1 if j % 2 else 2, "alt12")
        raise ValueError(f"unknown digit preset {name!r}")

    @staticmethod
    def from_digits(base: int, digits: Sequence[int], name: str = "file") -> "DigitLiouville":
        digits = tuple(int(d) for d in digits)

        def at(j: int) -> int:
            if j > len(digits):
                raise ValueError(
                    f"digit index {j} beyond the {len(digits)} supplied digits"
                )
            return digits[j - 1]

        return DigitLiouville(base, at, name)

    @staticmethod
    def from_file(path) -> "DigitLiouville":
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read().split()
        if not text or not text[0].startswith("base="):
            raise ValueError("digit file must start with 'base=<int>'")
        base = int(text[0][len("base="):])
        if base < 2:
            raise ValueError("base must be >= 2")
        digits = [int(t) for t in text[1:]]
        if not digits:
            raise ValueError("digit file supplies no digits")
        return DigitLiouville.from_digits(base, digits)

    def enclosure(self, k: int) -> Enclosure:
        """Enclosure of the number from its k-th truncation."""
        _, _, alpha, tail = _digit_truncation_parts(self, k)
        return Enclosure(alpha + tail.lo, alpha + tail.hi)


def liouville_constant() -> DigitLiouville:
    """L = sum 10^(-j!) = 0.110001000...: base 10, all digits 1."""
    return DigitLiouville.preset("ones", 10)


def _digit_truncation_parts(d: DigitLiouville, k: int):
    base = mpz(d.base)
    kfact = math.factorial(k)
    q = base**kfact
    p = mpz(0)
    for j in range(1, k + 1):
        p += d.digit(j) * base ** (kfact - math.factorial(j))
    alpha = mpq(p, q)
    # tail = sum_{j>k} a_j base^(-j!): first omitted term exactly, the rest
    # bounded by a geometric series from position (k+2)!:
    #   sum_{j>=k+2} a_j base^(-j!) <= (base-1) * base^(-(k+2)!) * base/(base-1)
    e1 = math.factorial(k + 1)
    e2 = math.factorial(k + 2)
    lo = mpq(d.digit(k + 1), base**e1)
    hi = lo + mpq(base, base**e2)
    return p, q, alpha, Enclosure(lo, hi)


def digit_truncation(d: DigitLiouville, k: int, k_max: int = DEFAULT_K_MAX,
                     allow_large: bool = False):
    """(p_k, q_k, tail) with q_k = base^(k!)."""
    _check_k(k, k_max, allow_large)
    p, q, _, tail = _digit_truncation_parts(d, k)
    return p, q, tail


def truncation(k: int, k_max: int = DEFAULT_K_MAX, allow_large: bool = False) -> TruncationRecord:
    """Truncation record of the Liouville constant itself."""
    _check_k(k, k_max, allow_large)
    p, q, alpha, tail = _digit_truncation_parts(liouville_constant(), k)
    return TruncationRecord(k=k, p=p, q=q, alpha=alpha,
                            tail_lo=tail.lo, tail_hi=tail.hi)


def eq2_check(k: int, k_max: int = DEFAULT_K_MAX, allow_large: bool = False) -> tuple:
    """(gap, rhs, pass): |L - alpha_k| < (10/9) * H(alpha_k)^(-k-1) as an
    exact rational comparison."""
    rec = truncation(k, k_max, allow_large)
    rhs = mpq(10, 9) / rec.q ** (k + 1)
    return rec.tail, rhs, rec.tail_hi < rhs


def liouville_enclosure(precision_level: int, k_max: int = DEFAULT_K_MAX,
                        allow_large: bool = False) -> Enclosure:
    """Enclosure [S_K, S_K + (10/9) 10^(-(K+1)!)] of L; width strictly
    decreasing in the precision level."""
    if precision_level < 1:
        raise ValueError("precision level must be >= 1")
    rec = truncation(precision_level, k_max, allow_large)
    hi_pad = mpq(10, 9) / mpz(10) ** math.factorial(precision_level + 1)
    return Enclosure(rec.alpha, rec.alpha + hi_pad)


def s_beta_check(p, q, k: int,
                 beta_enclosure_source: Callable[[int], Enclosure],
                 max_level: int = 10) -> bool:
    """Whether |beta - p/q| < q^(-k-1), decided from refinable enclosures
    of beta.  Raises Inconclusive at the refinement cap."""
    p, q = mpz(p), mpz(q)
    if q < 1 or not 1 <= p <= q:
        raise ValueError("approximant must satisfy 1 <= p <= q")
    r = mpq(p, q)
    rhs = mpq(1, q ** (k + 1))
    for level in range(1, max_level + 1):
        enc = beta_enclosure_source(level)
        d = (enc - r).abs()
        if d.hi < rhs:
            return True
        if d.lo >= rhs:
            return False
    raise Inconclusive(
        f"membership of {p}/{q} undecided after {max_level} refinement levels"
    )


def growth_check(q_sequence: Sequence, c1, c2, start_k: int = 1) -> tuple:
    """Check c1*q_k <= q_{k+1} <= c2*q_k^(k+1) along the window; returns
    (pass, witnesses) with the 0-based indices of failing pairs."""
    c1, c2 = mpq(c1), mpq(c2)
    if c1 <= 0 or c2 <= 0:
        raise ValueError("constants must be positive")
    qs = [mpz(q) for q in q_sequence]
    if len(qs) < 2:
        raise ValueError("need at least two denominators")
    if any(a >= b for a, b in zip(qs, qs[1:])):
        raise ValueError("sequence must be strictly increasing")
    witnesses = []
    for i, (qk, qk1) in enumerate(zip(qs, qs[1:])):
        k = start_k + i
        if not (c1 * qk <= qk1 and qk1 <= c2 * qk ** (k + 1)):
            witnesses.append(i)
    return not witnesses, witnesses
