"""Brute-force ground truth: enumerate every real algebraic number of a
given degree and bounded height, find certified best approximants to a
refinable target, estimate approximation exponents empirically, and sweep
the final displayed bound for exceptions.

Floats appear only as pruning pre-filters with explicit safety slack;
every verdict is decided by exact rational arithmetic.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from gmpy2 import gcd, mpq, mpz

from .certify import ExponentEstimate, f_constant, final_bound_check, target_enclosure
from .exact_core import (
    Enclosure,
    Inconclusive,
    IntPolynomial,
    RealAlgebraic,
    is_irreducible,
    isolate_real_roots,
    log10_bounds,
    refine,
    round_to_grid,
)
from .liouville import DEFAULT_K_MAX, liouville_enclosure
from .transforms import lemma2_check, separation_lower_bound

__all__ = [
    "EnumerationSpec",
    "TargetSource",
    "liouville_target",
    "algebraic_target",
    "chain_target",
    "enumerate_algebraics",
    "best_approximant",
    "exponent_scan",
    "exception_scan",
    "lemma2_exhaustive",
]

DEFAULT_CANDIDATE_CAP = 10**7

_W_GRID = mpq(1, 1000)


@dataclass(frozen=True)
class EnumerationSpec:
    degree: int
    height_max: int
    dedupe: bool = True
    candidate_cap: int = DEFAULT_CANDIDATE_CAP

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.height_max < 1:
            raise ValueError("height_max must be >= 1")


@dataclass(frozen=True)
class TargetSource:
    """A real number given only by refinable enclosures.  enclosure_at(level)
    must be nested-or-shrinking as level grows; exact, when set, names the
    target itself so that exact hits can be excluded (strict positivity of
    the approximation distance)."""

    name: str
    enclosure_at: Callable[[int], Enclosure]
    exact: Optional[RealAlgebraic] = None

    def __getstate__(self):
        raise TypeError("TargetSource is not picklable; pass scaled integers")


def liouville_target() -> TargetSource:
    return TargetSource(
        "L", lambda level: liouville_enclosure(min(level + 3, DEFAULT_K_MAX))
    )


def algebraic_target(a: RealAlgebraic, name: str = "algebraic") -> TargetSource:
    def at(level: int) -> Enclosure:
        return refine(a, mpq(1, mpz(10) ** (12 * (1 << min(level, 10)))))

    return TargetSource(name, at, exact=a)


def chain_target(alpha: RealAlgebraic, kind: str) -> TargetSource:
    return TargetSource(
        f"{kind}-target", lambda level: target_enclosure(alpha, kind, level)
    )


# ---------------------------------------------------------------------------
# enumeration


def enumerate_algebraics(spec: EnumerationSpec):
    """Canonical irreducible degree-n polynomials of height <= H, each real
    root yielded with its isolating interval, in a fixed deterministic
    order (ascending leading coefficient, then lower coefficients)."""
    n, h = spec.degree, spec.height_max
    estimate = h * (2 * h + 1) ** n
    if estimate > spec.candidate_cap:
        raise ValueError(
            f"enumeration would scan ~{estimate} candidate polynomials, "
            f"over the cap {spec.candidate_cap}"
        )
    if n == 1:
        for c1 in range(1, h + 1):
            for c0 in range(-h, h + 1):
                if gcd(abs(c0), c1) != 1:
                    continue
                yield RealAlgebraic.from_rational(mpq(-c0, c1))
        return
    for poly in _canonical_polys(n, h):
        for enc in isolate_real_roots(poly):
            yield RealAlgebraic(poly, enc)


def _canonical_polys(n: int, h: int):
    lower_ranges = [range(-h, h + 1)] * n
    for lead in range(1, h + 1):
        for lower in itertools.product(*lower_ranges):
            poly = IntPolynomial.from_coeffs((*lower, lead))
            if poly.content() != 1:
                continue
            if not is_irreducible(poly):
                continue
            yield poly


# ---------------------------------------------------------------------------
# best approximant


@dataclass(frozen=True)
class _Candidate:
    value: RealAlgebraic
    dist: Enclosure

    def sort_key(self):
        return (self.dist.hi, self.value.height, self.value.minpoly.coeffs)


def _scaled_target(target: TargetSource, digits: int):
    """(m_lo, m_hi, enc) with enc subset of [m_lo, m_hi] / 10^digits and
    m_hi - m_lo <= 2."""
    ten = mpz(10) ** digits
    for level in range(1, 12):
        enc = target.enclosure_at(level)
        if enc.width * ten <= 1:
            m_lo = (enc.lo.numerator * ten) // enc.lo.denominator
            m_hi = -((-enc.hi.numerator * ten) // enc.hi.denominator)
            return m_lo, m_hi, enc
    raise Inconclusive(f"target {target.name} not refinable to 10^-{digits}")


def _dist_interval(enc: Enclosure, r: mpq) -> Enclosure:
    return (enc - r).abs()


def best_approximant(target: TargetSource, spec: EnumerationSpec) -> tuple:
    """(gamma, distance): the enumerated value minimizing |target - gamma|,
    with the argmin certified against every other candidate.  Exact hits
    (target itself representable in the window) are excluded.  Ties break
    by smaller height, then lexicographically smaller coefficients."""
    if spec.degree == 1:
        return _best_rational(target, spec)
    return _best_generic(target, spec)


def _best_rational(target: TargetSource, spec: EnumerationSpec) -> tuple:
    h = spec.height_max
    exclude = None
    if target.exact is not None and target.exact.is_rational:
        exclude = target.exact.as_rational()
    digits = max(80, 30 * len(str(h)))
    for _ in range(3):
        result = _best_rational_at(target, h, digits, exclude)
        if result is not None:
            return result
        digits *= 2
    raise Inconclusive("rational argmin still tied at the precision cap")


def _best_rational_at(target: TargetSource, h: int, digits: int, exclude):
    m_lo, m_hi, enc = _scaled_target(target, digits)
    ten = mpz(10) ** digits
    keep = 24
    top = []  # (float key, p, q); float keys only preselect
    rejected_floor = None  # sound float lower bound on any rejected lo/q
    for q in range(1, h + 1):
        mq_lo, mq_hi = m_lo * q, m_hi * q
        p_center = int((mq_lo + ten // 2) // ten)
        found_lo = found_hi = False
        for off in _OFFSETS:
            p = p_center + off
            if abs(p) > h:
                continue
            if gcd(abs(p), q) != 1:
                continue
            if exclude is not None and exclude == mpq(p, q):
                continue
            pt = p * ten
            if pt <= mq_lo:
                if found_lo:
                    continue
                found_lo = True
            elif pt >= mq_hi:
                if found_hi:
                    continue
                found_hi = True
            if pt <= mq_lo:
                d_lo, d_hi = mq_lo - pt, mq_hi - pt
            elif pt >= mq_hi:
                d_lo, d_hi = pt - mq_hi, pt - mq_lo
            else:
                d_lo, d_hi = mpz(0), max(mq_hi - pt, pt - mq_lo)
            key = float(d_hi) / q
            low_key = float(d_lo) * (1.0 - 1e-9) / q
            if len(top) < keep or key < top[-1][0]:
                top.append((key, low_key, p, q))
                top.sort(key=lambda t: t[0])
                if len(top) > keep:
                    _, lk, _, _ = top.pop()
                    if rejected_floor is None or lk < rejected_floor:
                        rejected_floor = lk
            else:
                if rejected_floor is None or low_key < rejected_floor:
                    rejected_floor = low_key
            if found_lo and found_hi:
                break
    if not top:
        raise ValueError("no admissible candidates in the window")
    cands = []
    for _, _, p, q in top:
        r = mpq(p, q)
        cands.append(
            _Candidate(RealAlgebraic.from_rational(r), _dist_interval(enc, r))
        )
    cands.sort(key=_Candidate.sort_key)
    best = cands[0]
    # exact ties (point distances, rational target) resolve by the sort
    # order: smaller height, then lexicographic coefficients
    certified = all(
        c.dist.lo > best.dist.hi
        or (c.dist == best.dist and c.dist.lo == c.dist.hi)
        for c in cands[1:]
    )
    if certified and rejected_floor is not None:
        # rejected candidates had dist/q*10^digits above rejected_floor
        certified = best.dist.hi < mpq(rejected_floor) / ten
    if not certified:
        return None
    return best.value, best.dist


# offsets 0, 1, -1, 2, -2, ...: wide enough that a residue coprime to any
# q <= 10^6 exists on each side of the center (Jacobsthal-type gap)
_OFFSETS = [0] + [s * k for k in range(1, 64) for s in (1, -1)]


def _best_generic(target: TargetSource, spec: EnumerationSpec) -> tuple:
    values = list(enumerate_algebraics(spec))
    if not values:
        raise ValueError("empty enumeration window")
    for level in range(2, 9):
        enc = target.enclosure_at(level)
        w = enc.width if enc.width > 0 else mpq(1, mpz(10) ** 30)
        cands = []
        for v in values:
            if target.exact is not None and _same_value(v, target.exact):
                continue
            v_enc = refine(v, w)
            d = Enclosure(
                max(mpq(0), max(enc.lo - v_enc.hi, v_enc.lo - enc.hi)),
                max(enc.hi - v_enc.lo, v_enc.hi - enc.lo),
            )
            cands.append(_Candidate(v, d))
        if not cands:
            raise ValueError("no admissible candidates in the window")
        cands.sort(key=_Candidate.sort_key)
        best = cands[0]
        if all(c.dist.lo > best.dist.hi for c in cands[1:]):
            return best.value, best.dist
    raise Inconclusive(
        "argmin tied at the refinement cap: "
        + ", ".join(str(c.value.minpoly) for c in cands[:4])
    )


def _same_value(a: RealAlgebraic, b: RealAlgebraic) -> bool:
    return a.minpoly == b.minpoly and a.root_index() == b.root_index()


# ---------------------------------------------------------------------------
# exponent estimates


def exponent_scan(target: TargetSource, n: int, height_ladder) -> list:
    """Witness-based lower estimates of the approximation exponent at each
    height ceiling.  w_est = -log10(distance)/log10(H(witness)) - 1,
    bounded by exact power comparisons and rounded to the 10^-3 grid
    (stated error below the grid plus the enclosure spread)."""
    ladder = [int(h) for h in height_ladder]
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("height ladder must be strictly increasing")
    out = []
    for h in ladder:
        witness, dist = best_approximant(target, EnumerationSpec(n, h))
        if dist.lo <= 0:
            raise Inconclusive("distance enclosure touches zero")
        w_lo, w_hi = _exponent_bounds(dist, witness.height)
        out.append(
            ExponentEstimate(
                n=n,
                lower_estimate=round_to_grid(w_lo, _W_GRID) - 1,
                height_ceiling=h,
                witness=witness,
                distance=dist,
                err=(w_hi - w_lo) + _W_GRID,
            )
        )
    return out


def _exponent_bounds(dist: Enclosure, h_witness) -> tuple:
    hi_log = log10_bounds(dist.hi)
    lo_log = log10_bounds(dist.lo)
    b_lo, b_hi = log10_bounds(mpq(h_witness))
    if b_lo <= 0:
        raise ValueError("witness height too small for an exponent estimate")
    return -hi_log[1] / b_hi, -lo_log[0] / b_lo


# ---------------------------------------------------------------------------
# exception sweep for the final displayed bound


@dataclass(frozen=True)
class ExceptionRecord:
    gamma: RealAlgebraic
    distance: Enclosure
    margin: mpq  # distance.lo - rhs; negative for a genuine exception


def exception_scan(alpha: RealAlgebraic, kind: str, n: int, height_max: int,
                   jobs: int = 1) -> list:
    """Checks |target - gamma| > (f(m,n)/2) * H(gamma)^(-2m^2n-m) for every
    enumerated gamma of degree n; returns the failures, sorted by
    (height, coefficients).  Expected empty at desk scale."""
    m = alpha.degree
    if not 1 <= n < m:
        raise ValueError("need 1 <= n < degree(alpha)")
    f = f_constant(m, n)
    expo = 2 * m * m * n + m
    if n == 1:
        suspects = _rational_sweep(alpha, kind, f, expo, height_max, jobs)
        candidates = [RealAlgebraic.from_rational(r) for r in suspects]
    else:
        candidates = list(enumerate_algebraics(EnumerationSpec(n, height_max)))
    out = []
    for g in candidates:
        lhs, rhs, ok = final_bound_check(alpha, kind, g)
        if not ok:
            out.append(ExceptionRecord(g, lhs, lhs.lo - rhs))
    out.sort(key=lambda e: (e.gamma.height, e.gamma.minpoly.coeffs))
    return out


def _rational_sweep(alpha, kind, f: mpq, expo: int, h: int, jobs: int) -> list:
    """Fast integer pre-pass: returns the (few) rationals whose sound lower
    distance bound does not already clear the threshold."""
    digits = 4 * (expo * len(str(h)) + 10)
    m_lo, m_hi, _ = _scaled_target(chain_target(alpha, kind), digits)
    chunks = _split_range(1, h, max(jobs, 1))
    args = [
        (m_lo, m_hi, digits, f.numerator, f.denominator, expo, h, a, b)
        for a, b in chunks
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_sweep_chunk, args))
    else:
        parts = [_sweep_chunk(a) for a in args]
    suspects = [r for part in parts for r in part]
    suspects.sort(key=lambda r: (r.denominator, r.numerator))
    return suspects


def _split_range(lo: int, hi: int, parts: int) -> list:
    span = hi - lo + 1
    step = max(1, (span + parts - 1) // parts)
    return [(a, min(a + step - 1, hi)) for a in range(lo, hi + 1, step)]


def _sweep_chunk(args) -> list:
    (m_lo, m_hi, digits, f_num, f_den, expo, h, q_lo, q_hi) = args
    m_lo, m_hi = mpz(m_lo), mpz(m_hi)
    ten = mpz(10) ** digits
    pows = [mpz(0)] + [mpz(height) ** expo for height in range(1, h + 1)]
    suspects = []
    for q in range(q_lo, q_hi + 1):
        mq_lo, mq_hi = m_lo * q, m_hi * q
        for p in range(-h, h + 1):
            if gcd(abs(p), q) != 1:
                continue
            pt = p * ten
            if pt <= mq_lo:
                d_lo = mq_lo - pt
            elif pt >= mq_hi:
                d_lo = pt - mq_hi
            else:
                d_lo = mpz(0)
            hp = pows[max(abs(p), q)]
            # pass iff d_lo/(q*10^digits) > f/(2*H^expo), cross-multiplied
            if d_lo * 2 * hp * f_den > f_num * q * ten:
                continue
            suspects.append(mpq(p, q))
    return suspects


# ---------------------------------------------------------------------------
# exhaustive separation-bound sweep


def lemma2_exhaustive(height_max: int, degree_max: int = 2) -> tuple:
    """Checks the separation lower bound over every pair of distinct
    nonzero real algebraic numbers with degree <= degree_max and height
    <= height_max.  Returns (pairs_total, violations).

    Pairs farther apart than the largest possible bound (1/4) are passed
    arithmetically; a float window with explicit slack preselects the
    near pairs, and every near pair is decided exactly."""
    values = []
    for n in range(1, degree_max + 1):
        for v in enumerate_algebraics(EnumerationSpec(n, height_max)):
            if v.is_zero:
                continue
            enc = v.isolating
            if enc.width > mpq(1, 10**9):
                enc = refine(v, mpq(1, 10**9))
            values.append((v, enc, float(enc.lo), float(enc.hi),
                           int(v.height), v.degree))
    values.sort(key=lambda t: t[2])

    consts = {}
    for n1 in range(1, degree_max + 1):
        for n2 in range(1, degree_max + 1):
            c = separation_lower_bound(n1, n2, 1, 1)
            consts[(n1, n2)] = (c, float(c) * (1.0 + 1e-9))

    total = len(values) * (len(values) - 1) // 2
    violations = []
    count = len(values)
    for i in range(count):
        _, enc_i, flo_i, fhi_i, h_i, n_i = values[i]
        # any partner with dist > 0.26/h_i trivially passes (bound <= 1/4
        # and shrinks at least like 1/(h_i*h_j))
        cutoff = 0.26 / h_i + 1e-6
        for j in range(i + 1, count):
            v_j, enc_j, flo_j, fhi_j, h_j, n_j = values[j]
            gap_f = flo_j - fhi_i
            if gap_f > cutoff:
                break
            c_exact, c_float = consts[(n_i, n_j)]
            bound_f = c_float / (h_i**n_j * h_j**n_i)
            if gap_f > bound_f + 1e-7:
                continue
            bound = c_exact / (mpz(h_i) ** n_j * mpz(h_j) ** n_i)
            d_lo = enc_j.lo - enc_i.hi
            if d_lo >= bound:
                continue
            v_i = values[i][0]
            _, dist, ok = lemma2_check(v_i, v_j)
            if not ok:
                violations.append((v_i, v_j, bound, dist))
    return total, violations
