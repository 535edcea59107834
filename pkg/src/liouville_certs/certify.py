"""Certificate engine: builds the degree-m algebraic approximants
gamma_k = alpha * alpha_k (or alpha + alpha_k) to the targets alpha*L and
alpha+L, and verifies the full inequality chain behind the transcendence
measure bound w*_n <= 2m^2 n + m - 1 as exact-arithmetic verdicts.

Every verdict is one of "pass" / "fail" / "inconclusive" /
"outside_regime"; failures carry the exact rational values of both sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from gmpy2 import mpq, mpz

from .exact_core import (
    Enclosure,
    Inconclusive,
    IntPolynomial,
    RealAlgebraic,
    log10_bounds,
    refine,
    round_to_grid,
)
from .liouville import (
    DEFAULT_K_MAX,
    DigitLiouville,
    digit_truncation,
    liouville_enclosure,
    truncation,
)
from .transforms import minpoly_scale, minpoly_shift, separation_lower_bound

__all__ = [
    "PASS",
    "FAIL",
    "INCONCLUSIVE",
    "OUTSIDE_REGIME",
    "ALPHA_PRESETS",
    "alpha_preset",
    "CertificateRecord",
    "ExponentEstimate",
    "gamma",
    "certify_record",
    "certify_chain",
    "key_index",
    "f_constant",
    "final_bound_check",
    "wstar_upper",
    "target_enclosure",
    "corollary_decompose",
    "DecompositionReport",
    "SummandApprox",
    "schmidt_probe",
    "ProbeRow",
]

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
OUTSIDE_REGIME = "outside_regime"

EQ9_VARIANTS = ("literal", "grouped", "derived")

_OMEGA_TOL = mpq(1, 1000)


def _preset(coeffs, lo, hi) -> RealAlgebraic:
    return RealAlgebraic.make(
        IntPolynomial.from_coeffs(coeffs), Enclosure(mpq(lo), mpq(hi))
    )


def alpha_preset(name: str) -> RealAlgebraic:
    try:
        return ALPHA_PRESETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown alpha preset {name!r}; choose from {sorted(ALPHA_PRESETS)}"
        ) from None


ALPHA_PRESETS = {
    "sqrt2": lambda: _preset((-2, 0, 1), 1, 2),
    "cbrt2": lambda: _preset((-2, 0, 0, 1), 1, 2),
    "golden": lambda: _preset((-1, -1, 1), 1, 2),
    "fourthroot2": lambda: _preset((-2, 0, 0, 0, 1), 1, 2),
}


def _decide(lhs: Enclosure, rhs: Enclosure) -> Optional[str]:
    """Sound one-sided comparison lhs <= rhs on enclosures."""
    if lhs.hi <= rhs.lo:
        return PASS
    if lhs.lo > rhs.hi:
        return FAIL
    return None


def _decide_ge(lhs, rhs: Enclosure) -> Optional[str]:
    """Exact lhs >= interval rhs."""
    if lhs >= rhs.hi:
        return PASS
    if lhs < rhs.lo:
        return FAIL
    return None


@dataclass(frozen=True)
class ExponentEstimate:
    """One-sided empirical estimate of the degree-n approximation exponent
    from the best witness below a height ceiling."""

    n: int
    lower_estimate: mpq
    height_ceiling: int
    witness: RealAlgebraic
    distance: Enclosure
    err: mpq


@dataclass(frozen=True)
class CertificateRecord:
    k: int
    op_kind: str
    gamma: RealAlgebraic
    h_gamma: mpz
    h_alpha_k: mpz
    gap: Enclosure
    c: Enclosure
    eq3_rhs: Enclosure
    eq3: str
    eq4_rhs: Enclosure
    eq4_literal: str
    eq4_corrected: str
    eq5: str
    eq9: dict
    omega: mpq
    omega_err: mpq

    @property
    def gap_lo_exp10(self) -> int:
        from .exact_core import floor_log10

        return floor_log10(self.gap.lo)


def gamma(alpha: RealAlgebraic, kind: str, k: int,
          k_max: int = DEFAULT_K_MAX, allow_large: bool = False) -> RealAlgebraic:
    """The approximant alpha*alpha_k (product) or alpha+alpha_k (sum)."""
    rec = truncation(k, k_max, allow_large)
    if kind == "product":
        if alpha.is_zero:
            raise ValueError("product with alpha = 0 is degenerate")
        return minpoly_scale(alpha, rec.alpha)
    if kind == "sum":
        return minpoly_shift(alpha, rec.alpha)
    raise ValueError(f"kind must be 'product' or 'sum', got {kind!r}")


def _height_scale(kind: str, m: int) -> mpz:
    # sum kind carries the 2^(m+1) factor of the shift height bound
    return mpz(1) if kind == "product" else mpz(2) ** (m + 1)


def certify_record(alpha: RealAlgebraic, kind: str, k: int, n: int = 1,
                   k_max: int = DEFAULT_K_MAX, allow_large: bool = False,
                   refine_cap: int = 8) -> CertificateRecord:
    """Verify the whole inequality chain at one index k."""
    m = alpha.degree
    h_alpha = alpha.height
    trunc = truncation(k, k_max, allow_large)
    trunc_next = truncation(k + 1, k_max + 1, allow_large)
    g = gamma(alpha, kind, k, k_max, allow_large)
    g_next = gamma(alpha, kind, k + 1, k_max + 1, True)
    h_g = g.height
    h_ak = trunc.h_alpha
    tail = trunc.tail
    scale = _height_scale(kind, m)

    # eq5: height growth at the next index, an exact integer comparison;
    # the sum kind carries the shift transform's 2^(m+1) height factor
    eq5 = PASS if g_next.height <= scale * h_alpha * trunc_next.h_alpha**m else FAIL

    f = None
    if 1 <= n < m:
        f = f_constant(m, n)

    width = mpq(1, 10**12)
    a_enc = refine(alpha, width)
    for attempt in range(refine_cap):
        if kind == "product":
            abs_a = a_enc.abs()
            c = abs_a * mpq(10, 9)
            gap = abs_a * tail
        else:
            c = Enclosure.point(mpq(10, 9))
            gap = tail

        eq3_rhs = c * mpq(1, h_ak ** (k + 1))
        eq3 = _decide(gap, eq3_rhs)

        # eq4 as printed: gap <= c * (scale*H(alpha))^(k+1) * H(gamma_k)^-(k+1)
        eq4_rhs = c * mpq((scale * h_alpha) ** (k + 1), h_g ** (k + 1))
        eq4_literal = _decide(gap, eq4_rhs)

        # m-th-root-corrected reading:
        # gap <= c * (H(gamma_k)/(scale*H(alpha)))^(-(k+1)/m),
        # checked via m-th powers
        eq4_corr = _decide(
            gap.pow_int(m) * mpq(h_g ** (k + 1), 1),
            c.pow_int(m) * mpq((scale * h_alpha) ** (k + 1), 1),
        )

        eq9 = {}
        if f is not None:
            if k < 2 * n:
                eq9 = {v: OUTSIDE_REGIME for v in EQ9_VARIANTS}
            else:
                # H(gamma_k)^((k+1)/2 - n) >= 2c/f * (scale*H(alpha))^e,
                # raised to the 2m-th power so all exponents are integers
                lhs_pow = h_g ** (m * (k + 1 - 2 * n))
                base_rhs = (c * mpq(2, 1) * (1 / f)).pow_int(2 * m)
                exps = {
                    "literal": 2 * m * k + 1,
                    "grouped": k + 1,
                    "derived": 2 * m * (k + 1) + 1,
                }
                eq9 = {
                    v: _decide_ge(lhs_pow, base_rhs * mpq((scale * h_alpha) ** e, 1))
                    for v, e in exps.items()
                }

        omega_lo, omega_hi = _omega_bounds(gap, h_g)
        # omega resolution is limited by the log grid, not by refinement of
        # alpha, so only let it drive the first couple of rounds
        omega_ready = omega_hi - omega_lo <= _OMEGA_TOL or attempt >= 2

        undecided = (
            eq3 is None
            or eq4_literal is None
            or eq4_corr is None
            or any(v is None for v in eq9.values())
            or not omega_ready
        )
        if not undecided or attempt == refine_cap - 1:
            break
        width = width * width
        a_enc = refine(alpha, width)

    def _v(x):
        return INCONCLUSIVE if x is None else x

    omega_mid = round_to_grid((omega_lo + omega_hi) / 2, mpq(1, 10**4))
    return CertificateRecord(
        k=k,
        op_kind=kind,
        gamma=g,
        h_gamma=h_g,
        h_alpha_k=h_ak,
        gap=gap,
        c=c,
        eq3_rhs=eq3_rhs,
        eq3=_v(eq3),
        eq4_rhs=eq4_rhs,
        eq4_literal=_v(eq4_literal),
        eq4_corrected=_v(eq4_corr),
        eq5=eq5,
        eq9={v: _v(r) for v, r in eq9.items()},
        omega=omega_mid,
        omega_err=omega_hi - omega_lo,
    )


def _omega_bounds(gap: Enclosure, h_gamma) -> tuple:
    """Enclosure of -log10(gap) / log10(H(gamma_k)); reporting quantity,
    bounded by exact power comparisons."""
    lo_hi_log = log10_bounds(gap.hi)
    lo_lo_log = log10_bounds(gap.lo)
    a_lo, a_hi = -lo_hi_log[1], -lo_lo_log[0]
    b_lo, b_hi = log10_bounds(mpq(h_gamma))
    if b_lo <= 0:
        raise ValueError("height too small for an exponent estimate")
    return a_lo / b_hi, a_hi / b_lo


def certify_chain(alpha: RealAlgebraic, kind: str, k_max: int, n: int = 1,
                  k_limit: int = DEFAULT_K_MAX, allow_large: bool = False,
                  jobs: int = 1) -> list:
    """Certificate records for k = 1..k_max, sorted by k."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    ks = list(range(1, k_max + 1))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(
                pool.map(
                    _record_worker,
                    [(alpha, kind, k, n, k_limit, allow_large) for k in ks],
                )
            )
    else:
        records = [
            certify_record(alpha, kind, k, n, k_limit, allow_large) for k in ks
        ]
    records.sort(key=lambda r: r.k)
    return records


def _record_worker(args) -> CertificateRecord:
    alpha, kind, k, n, k_limit, allow_large = args
    return certify_record(alpha, kind, k, n, k_limit, allow_large)


def key_index(alpha: RealAlgebraic, h_gamma, kind: str,
              k_limit: int = 12) -> tuple:
    """The unique k with H(gamma_k) < h_gamma^(2m^2) <= H(gamma_{k+1}),
    plus whether H(gamma_{k+1}) <= H(alpha)*H(gamma_k)^((k+1)m) holds there."""
    h_gamma = mpz(h_gamma)
    m = alpha.degree
    target = h_gamma ** (2 * m * m)
    heights = [gamma(alpha, kind, 1, k_limit, True).height]
    if target <= heights[0]:
        raise ValueError("h_gamma^(2m^2) does not exceed H(gamma_1)")
    for k in range(1, k_limit + 1):
        heights.append(gamma(alpha, kind, k + 1, k_limit + 1, True).height)
        if heights[k - 1] < target <= heights[k]:
            pass_upper = heights[k] <= alpha.height * heights[k - 1] ** ((k + 1) * m)
            return k, pass_upper
    raise ValueError(
        f"key index beyond k={k_limit}; raise k_limit to continue the search"
    )


def f_constant(m: int, n: int) -> mpq:
    """Height-free separation constant for degrees (n, m), rounded down."""
    if not 1 <= n < m:
        raise ValueError("need 1 <= n < m")
    return separation_lower_bound(n, m, 1, 1)


def target_enclosure(alpha: RealAlgebraic, kind: str, level: int) -> Enclosure:
    """Enclosure of alpha*L or alpha+L at increasing precision levels."""
    if level < 1:
        raise ValueError("level must be >= 1")
    w = mpq(1, mpz(10) ** (12 * (1 << min(level, 10))))
    a_enc = refine(alpha, w)
    l_enc = liouville_enclosure(min(level + 2, DEFAULT_K_MAX))
    if kind == "product":
        return a_enc * l_enc
    if kind == "sum":
        return a_enc + l_enc
    raise ValueError(f"kind must be 'product' or 'sum', got {kind!r}")


def final_bound_check(alpha: RealAlgebraic, kind: str, gamma_n: RealAlgebraic,
                      max_level: int = 7) -> tuple:
    """(lhs, rhs, pass): |target - gamma| > (f(m,n)/2) * H(gamma)^(-2m^2n-m)
    for an approximant gamma of degree n < m."""
    m, n = alpha.degree, gamma_n.degree
    if n >= m:
        raise ValueError("approximant degree must be strictly below deg(alpha)")
    f = f_constant(m, n)
    rhs = f / 2 / gamma_n.height ** (2 * m * m * n + m)
    lhs = None
    for level in range(1, max_level + 1):
        t = target_enclosure(alpha, kind, level)
        g_enc = refine(gamma_n, mpq(1, mpz(10) ** (12 * (1 << min(level, 10)))))
        lhs = (t - g_enc).abs()
        if lhs.lo > rhs:
            return lhs, rhs, True
        if lhs.hi <= rhs:
            return lhs, rhs, False
    raise Inconclusive("final bound comparison undecided at the refinement cap")


def wstar_upper(m: int, n: int) -> int:
    """The transcendence-measure exponent bound 2m^2 n + m - 1."""
    if not 1 <= n <= m - 1:
        raise ValueError("need 1 <= n <= m-1")
    return 2 * m * m * n + m - 1


# ---------------------------------------------------------------------------
# decomposition of a digit-Liouville number into two degree-m summands


@dataclass(frozen=True)
class SummandApprox:
    k: int
    gamma_plus: RealAlgebraic
    gamma_minus: RealAlgebraic
    gap: Enclosure  # |summand - gamma'_k| for each summand, = tail/2


@dataclass(frozen=True)
class DecompositionReport:
    m: int
    base: int
    digits_name: str
    weight: mpq
    part_plus: RealAlgebraic
    part_minus: RealAlgebraic
    records: tuple
    recombination_ok: bool


def _mth_root_of_2(m: int) -> RealAlgebraic:
    if m == 1:
        return RealAlgebraic.from_rational(2)
    coeffs = [-2] + [0] * (m - 1) + [1]
    return RealAlgebraic.make(
        IntPolynomial.from_coeffs(coeffs), Enclosure(mpq(1), mpq(2))
    )


def corollary_decompose(digits: DigitLiouville, m: int,
                        k_max: int = 6) -> DecompositionReport:
    """beta = (beta + 2^(1/m))/2 + (beta - 2^(1/m))/2: package both summands
    and verify that each is approximated by the degree-m numbers
    beta_k/2 +- 2^(1/m)/2 with gaps equal to half the truncation tail."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if digits.base != 10:
        raise ValueError("decomposition is stated for base 10")
    for j in range(1, k_max + 3):
        if digits.digit(j) not in (1, 2):
            raise ValueError(f"digit a_{j} must be in {{1, 2}}")
    root = _mth_root_of_2(m)
    part_plus = minpoly_scale(root, mpq(1, 2))
    part_minus = minpoly_scale(root, mpq(-1, 2))

    records = []
    for k in range(1, k_max + 1):
        p, q, tail = digit_truncation(digits, k, k_max)
        beta_k_half = mpq(p, q) / 2
        g_plus = minpoly_shift(part_plus, beta_k_half)
        g_minus = minpoly_shift(part_minus, beta_k_half)
        records.append(
            SummandApprox(k=k, gamma_plus=g_plus, gamma_minus=g_minus,
                          gap=tail.scale(mpq(1, 2)))
        )

    recombine_ok = True
    for level in range(1, min(k_max, 4) + 1):
        beta_enc = digits.enclosure(level)
        w = mpq(1, mpz(10) ** (10 * level))
        half_beta = beta_enc.scale(mpq(1, 2))
        s1 = half_beta + refine(part_plus, w)
        s2 = half_beta + refine(part_minus, w)
        if not (s1 + s2).contains_interval(beta_enc):
            recombine_ok = False
    return DecompositionReport(
        m=m,
        base=digits.base,
        digits_name=digits.name,
        weight=mpq(1, 2),
        part_plus=part_plus,
        part_minus=part_minus,
        records=tuple(records),
        recombination_ok=recombine_ok,
    )


# ---------------------------------------------------------------------------
# empirical probe of the pairwise-separation conjecture on Q(sqrt(d))


@dataclass(frozen=True)
class ProbeRow:
    alpha_key: str
    beta_key: str
    distance: Enclosure
    h: mpz
    score: Enclosure  # |alpha-beta| * max(H)^  (2+epsilon)


def _squarefree_part(n) -> mpz:
    n = mpz(n)
    out = mpz(1)
    d = mpz(2)
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return out * n


def _element_key(a: RealAlgebraic, idx: int) -> str:
    cs = ",".join(str(c) for c in a.minpoly.coeffs)
    return f"[{cs}];root{idx}"


def _power_bounds(h, expo: mpq) -> Enclosure:
    """Enclosure of h^expo for integer h >= 1 and rational expo >= 0."""
    from gmpy2 import iroot

    h = mpz(h)
    a, b = expo.numerator, expo.denominator
    w = h**a
    root, exact = iroot(w, int(b))
    if exact:
        return Enclosure(mpq(root), mpq(root))
    return Enclosure(mpq(root), mpq(root + 1))


def schmidt_probe(d: int, h_max: int, epsilon, pair_cap: int = 10**6) -> list:
    """All pairs of distinct elements of Q(sqrt(d)) with height <= h_max,
    scored by |alpha-beta| * max(H(alpha),H(beta))^(2+epsilon) and sorted
    ascending.  An exploratory statistic, not a verification."""
    epsilon = mpq(epsilon)
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    d = int(d)
    if d < 2 or _squarefree_part(d) != d:
        raise ValueError("d must be a squarefree integer >= 2")
    if h_max < 1:
        raise ValueError("h_max must be >= 1")

    from .oracle import EnumerationSpec, enumerate_algebraics

    width = mpq(1, mpz(10) ** 25)
    elements = []
    for a in enumerate_algebraics(EnumerationSpec(degree=1, height_max=h_max)):
        idx = 0
        elements.append((_element_key(a, idx), a, refine(a, width)))
    for a in enumerate_algebraics(EnumerationSpec(degree=2, height_max=h_max)):
        c0, c1, c2 = a.minpoly.coeffs
        disc = c1 * c1 - 4 * c2 * c0
        if _squarefree_part(disc) != d:
            continue
        idx = a.root_index()
        elements.append((_element_key(a, idx), a, refine(a, width)))

    n_el = len(elements)
    if n_el * (n_el - 1) // 2 > pair_cap:
        raise ValueError(
            f"{n_el} elements give too many pairs (cap {pair_cap})"
        )
    expo = 2 + epsilon
    rows = []
    for i in range(n_el):
        key_i, a_i, enc_i = elements[i]
        for j in range(i + 1, n_el):
            key_j, a_j, enc_j = elements[j]
            dist = (enc_i - enc_j).abs()
            h = max(a_i.height, a_j.height)
            score = dist * _power_bounds(h, expo)
            rows.append(ProbeRow(key_i, key_j, dist, h, score))
    rows.sort(key=lambda r: (r.score.hi, r.alpha_key, r.beta_key))
    return rows
