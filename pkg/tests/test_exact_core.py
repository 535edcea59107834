import math
import random

import pytest
from gmpy2 import mpq, mpz
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville_certs.exact_core import (
    Enclosure,
    IntPolynomial,
    RealAlgebraic,
    eval_enclosure,
    floor_log10,
    height,
    is_irreducible,
    isolate_real_roots,
    log10_bounds,
    primitive_canonical,
    refine,
    round_to_grid,
)


class TestIntPolynomial:
    def test_trailing_zeros_dropped(self):
        p = IntPolynomial.from_coeffs((1, 2, 0, 0))
        assert p.coeffs == (1, 2)
        assert p.degree == 1

    def test_zero_polynomial(self):
        assert IntPolynomial.from_coeffs(()).is_zero
        assert IntPolynomial.from_coeffs((0, 0)).is_zero

    def test_eval(self):
        p = IntPolynomial.from_coeffs((-2, 0, 1))
        assert p.eval_q(mpq(3, 2)) == mpq(1, 4)
        assert p.sign_at(mpq(1)) == -1
        assert p.sign_at(mpq(2)) == 1

    def test_derivative(self):
        p = IntPolynomial.from_coeffs((5, -1, 0, 2))
        assert p.derivative().coeffs == (-1, 0, 6)

    def test_height_and_primitive(self):
        p = IntPolynomial.from_coeffs((-4, 0, 6))
        assert height(p) == 6
        assert primitive_canonical(p).coeffs == (-2, 0, 3)
        neg = IntPolynomial.from_coeffs((2, 0, -2))
        assert primitive_canonical(neg).coeffs == (-1, 0, 1)


def _naive_reducible(p: IntPolynomial) -> bool:
    """Independent reducibility oracle for degree <= 4: rational roots plus
    an exhaustive quadratic-factor search with a generous coefficient bound."""
    d = p.degree
    for den in range(1, int(abs(p.leading)) + 1):
        if p.leading % den:
            continue
        for num in range(0, int(abs(p.coeffs[0])) + 1):
            if num and p.coeffs[0] % num:
                continue
            for r in {mpq(num, den), mpq(-num, den)}:
                if p.eval_q(r) == 0:
                    return True
    if d < 4:
        return False
    norm = math.isqrt(int(sum(c * c for c in p.coeffs))) + 1
    bound = 8 * norm
    for a in range(1, int(abs(p.leading)) + 1):
        if p.leading % a:
            continue
        for c in range(-int(abs(p.coeffs[0])), int(abs(p.coeffs[0])) + 1):
            if c == 0 or p.coeffs[0] % c:
                continue
            for b in range(-bound, bound + 1):
                g = [c, b, a]
                # long division of p by g over Q, then integrality check
                rem = [mpq(x) for x in p.coeffs]
                quo = [mpq(0)] * (d - 1)
                for i in range(d - 2, -1, -1):
                    f = rem[i + 2] / a
                    quo[i] = f
                    for j in range(3):
                        rem[i + j] -= f * g[j]
                if rem[0] == 0 and rem[1] == 0 and all(x == 0 for x in rem[2:]):
                    return True
    return False


class TestIrreducibility:
    def test_linear_always(self):
        assert is_irreducible(IntPolynomial.from_coeffs((3, 7)))

    def test_known_cases(self):
        assert is_irreducible(IntPolynomial.from_coeffs((-2, 0, 1)))
        assert is_irreducible(IntPolynomial.from_coeffs((-1, -1, 1)))
        assert not is_irreducible(IntPolynomial.from_coeffs((-1, 0, 1)))
        assert not is_irreducible(IntPolynomial.from_coeffs((0, 0, 1)))  # x^2
        assert is_irreducible(IntPolynomial.from_coeffs((-2, 0, 0, 1)))
        assert is_irreducible(IntPolynomial.from_coeffs((-2, 0, 0, 0, 1)))
        # (x^2-2)(x^2-3) has no rational root but is reducible
        assert not is_irreducible(IntPolynomial.from_coeffs((6, 0, -5, 0, 1)))

    def test_exhaustive_small_window(self):
        for c2 in range(1, 3):
            for c1 in range(-2, 3):
                for c0 in range(-2, 3):
                    p = IntPolynomial.from_coeffs((c0, c1, c2))
                    if p.degree != 2 or p.content() != 1:
                        continue
                    assert is_irreducible(p) == (not _naive_reducible(p)), p

    def test_sampled_quartics_against_naive_oracle(self):
        rng = random.Random(11)
        checked = 0
        while checked < 150:
            coeffs = [rng.randint(-10, 10) for _ in range(4)]
            coeffs.append(rng.randint(1, 10))
            p = IntPolynomial.from_coeffs(coeffs)
            if p.degree != 4 or p.content() != 1:
                continue
            assert is_irreducible(p) == (not _naive_reducible(p)), p
            checked += 1


class TestEnclosure:
    def test_inverted_rejected(self):
        with pytest.raises(ValueError):
            Enclosure(mpq(1), mpq(0))

    @given(
        st.integers(-50, 50), st.integers(0, 20),
        st.integers(-50, 50), st.integers(0, 20),
        st.integers(0, 100), st.integers(0, 100),
    )
    @settings(max_examples=200, deadline=None)
    def test_arithmetic_contains_pointwise(self, a, wa, b, wb, ta, tb):
        x = Enclosure(mpq(a, 7), mpq(a, 7) + mpq(wa, 13))
        y = Enclosure(mpq(b, 9), mpq(b, 9) + mpq(wb, 11))
        px = x.lo + x.width * mpq(ta, 100)
        py = y.lo + y.width * mpq(tb, 100)
        assert (x + y).contains(px + py)
        assert (x - y).contains(px - py)
        assert (x * y).contains(px * py)
        assert x.abs().contains(abs(px))

    def test_scale_negative(self):
        e = Enclosure(mpq(1), mpq(2)).scale(mpq(-3))
        assert (e.lo, e.hi) == (-6, -3)

    def test_eval_enclosure_contains(self):
        p = IntPolynomial.from_coeffs((-2, 0, 1))
        e = Enclosure(mpq(1), mpq(2))
        img = eval_enclosure(p, e)
        for t in (mpq(1), mpq(3, 2), mpq(2)):
            assert img.contains(p.eval_q(t))


class TestRootIsolation:
    def test_sqrt2_roots(self):
        p = IntPolynomial.from_coeffs((-2, 0, 1))
        roots = isolate_real_roots(p)
        assert len(roots) == 2
        assert roots[0].hi < roots[1].lo
        assert roots[1].contains(mpq(14142, 10**4)) or roots[1].lo > 1

    def test_cubic_single_root(self):
        roots = isolate_real_roots(IntPolynomial.from_coeffs((-2, 0, 0, 1)))
        assert len(roots) == 1

    def test_rational_root_point(self):
        roots = isolate_real_roots(IntPolynomial.from_coeffs((-3, 2)))
        assert roots == [Enclosure(mpq(3, 2), mpq(3, 2))]

    def test_non_squarefree_rejected(self):
        with pytest.raises(ValueError):
            isolate_real_roots(IntPolynomial.from_coeffs((0, 0, 1)))

    def test_quartic_two_real_roots(self):
        roots = isolate_real_roots(IntPolynomial.from_coeffs((-2, 0, 0, 0, 1)))
        assert len(roots) == 2

    def test_refine_nested_and_narrow(self):
        a = RealAlgebraic.make(
            IntPolynomial.from_coeffs((-2, 0, 1)), Enclosure(mpq(1), mpq(2))
        )
        e1 = refine(a, mpq(1, 100))
        e2 = refine(a, mpq(1, 10**9))
        assert e1.width <= mpq(1, 100)
        assert e2.width <= mpq(1, 10**9)
        assert e1.contains(e2.lo) and e1.contains(e2.hi)
        # the square of any point of the refined interval is near 2
        assert (e2.lo * e2.lo - 2) * (e2.hi * e2.hi - 2) <= 0


class TestRealAlgebraic:
    def test_rational_accessors(self):
        r = RealAlgebraic.from_rational(mpq(-3, 7))
        assert r.is_rational and r.as_rational() == mpq(-3, 7)
        assert r.height == 7
        assert not r.is_zero
        assert RealAlgebraic.from_rational(0).is_zero

    def test_make_rejects_noncanonical(self):
        with pytest.raises(ValueError):
            RealAlgebraic.make(
                IntPolynomial.from_coeffs((-4, 0, 2)), Enclosure(mpq(1), mpq(2))
            )

    def test_make_rejects_reducible(self):
        with pytest.raises(ValueError):
            RealAlgebraic.make(
                IntPolynomial.from_coeffs((-1, 0, 1)), Enclosure(mpq(0), mpq(2))
            )

    def test_root_index_and_same_number(self):
        p = IntPolynomial.from_coeffs((-2, 0, 1))
        pos = RealAlgebraic.make(p, Enclosure(mpq(1), mpq(2)))
        neg = RealAlgebraic.make(p, Enclosure(mpq(-2), mpq(-1)))
        assert pos.root_index() == 1 and neg.root_index() == 0
        assert not pos.same_number(neg)
        pos2 = RealAlgebraic.make(p, Enclosure(mpq(14, 10), mpq(15, 10)))
        assert pos.same_number(pos2)


class TestLogEstimates:
    def test_floor_log10_exact(self):
        assert floor_log10(mpq(1)) == 0
        assert floor_log10(mpq(10)) == 1
        assert floor_log10(mpq(999, 100)) == 0
        assert floor_log10(mpq(1, 10)) == -1
        assert floor_log10(mpq(1, 1000)) == -3
        assert floor_log10(mpz(10) ** 50) == 50

    @given(st.integers(1, 10**9), st.integers(1, 10**9))
    @settings(max_examples=150, deadline=None)
    def test_log10_bounds_bracket(self, n, d):
        x = mpq(n, d)
        lo, hi = log10_bounds(x)
        assert hi - lo <= mpq(1, 1000)
        assert float(lo) <= math.log10(n / d) + 1e-9
        assert float(hi) >= math.log10(n / d) - 1e-9

    def test_round_to_grid(self):
        g = mpq(1, 1000)
        assert round_to_grid(mpq(29996, 10**4), g) == mpq(3)
        assert round_to_grid(mpq(-29996, 10**4), g) == mpq(-3)
        assert round_to_grid(mpq(12344, 10**4), g) == mpq(1234, 1000)
