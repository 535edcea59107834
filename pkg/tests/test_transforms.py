import pytest
from gmpy2 import mpq, mpz
from hypothesis import given, settings
from hypothesis import strategies as st

from liouville_certs.exact_core import (
    Enclosure,
    IntPolynomial,
    RealAlgebraic,
    height,
    refine,
)
from liouville_certs.transforms import (
    lemma1_check,
    lemma2_check,
    minpoly_scale,
    minpoly_shift,
    scale_poly,
    separation_lower_bound,
    shift_poly,
)


def sqrt2() -> RealAlgebraic:
    return RealAlgebraic.make(
        IntPolynomial.from_coeffs((-2, 0, 1)), Enclosure(mpq(1), mpq(2))
    )


class TestPolyTransforms:
    def test_scale_worked_example(self):
        p = IntPolynomial.from_coeffs((-2, 0, 1))
        q = scale_poly(p, 11, 100)
        # root sqrt(2) -> (11/100) sqrt(2)
        assert q.coeffs == (-2 * 11 * 11, 0, 100 * 100)

    def test_shift_worked_example(self):
        p = IntPolynomial.from_coeffs((-2, 0, 1))
        q = shift_poly(p, 11, 100)
        assert q.coeffs == (-19879, -2200, 10000)
        assert height(q) == 19879

    def test_scale_rejects_zero(self):
        p = IntPolynomial.from_coeffs((-2, 0, 1))
        with pytest.raises(ValueError):
            scale_poly(p, 0, 5)
        with pytest.raises(ValueError):
            scale_poly(p, 5, 0)

    coeff = st.integers(-100, 100)

    @given(st.lists(coeff, min_size=2, max_size=7),
           st.integers(-60, 60).filter(bool),
           st.integers(-60, 60).filter(bool))
    @settings(max_examples=300, deadline=None)
    def test_bounds_and_point_identities(self, coeffs, a, b):
        p = IntPolynomial.from_coeffs(coeffs)
        if p.is_zero or p.degree < 1:
            return
        rep = lemma1_check(p, a, b)
        assert rep.pass_i and rep.pass_ii
        m = p.degree
        for num in range(-(m + 1), m + 2, 2):
            x = mpq(num, 3)
            assert rep.q1.eval_q(x) == a**m * p.eval_q(mpq(b, a) * x)
            assert rep.q2.eval_q(x) == b**m * p.eval_q(x - mpq(a, b))


class TestMinpolyTransforms:
    def test_scale_sqrt2_by_11_100(self):
        g = minpoly_scale(sqrt2(), mpq(11, 100))
        assert g.minpoly.coeffs == (-121, 0, 5000)
        e = refine(g, mpq(1, 10**12))
        # value is 0.11 * sqrt(2) = 0.15556...
        assert e.lo < mpq(15557, 10**5) and e.hi > mpq(15555, 10**5)

    def test_shift_sqrt2_by_11_100(self):
        g = minpoly_shift(sqrt2(), mpq(11, 100))
        assert g.minpoly.coeffs == (-19879, -2200, 10000)

    def test_scale_identity_and_zero(self):
        a = sqrt2()
        assert minpoly_scale(a, 1) is a
        with pytest.raises(ValueError):
            minpoly_scale(a, 0)

    def test_shift_identity(self):
        a = sqrt2()
        assert minpoly_shift(a, 0) is a

    def test_negative_scale_orientation(self):
        g = minpoly_scale(sqrt2(), -1)
        e = refine(g, mpq(1, 1000))
        assert e.hi < 0

    def test_rational_input(self):
        g = minpoly_scale(RealAlgebraic.from_rational(mpq(3, 2)), mpq(2, 5))
        assert g.as_rational() == mpq(3, 5)


class TestSeparationBound:
    def test_degree_one_closed_form(self):
        for h1, h2 in ((1, 1), (3, 7), (20, 20)):
            assert separation_lower_bound(1, 1, h1, h2) == mpq(1, 4 * h1 * h2)

    def test_1_2_value(self):
        b = separation_lower_bound(1, 2, 1, 1)
        assert mpq(100, 1000) < b < mpq(10207, 100000)

    def test_monotone_in_heights(self):
        assert separation_lower_bound(1, 2, 2, 3) < separation_lower_bound(1, 2, 1, 1)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            separation_lower_bound(0, 1, 1, 1)
        with pytest.raises(ValueError):
            separation_lower_bound(1, 1, 0, 1)


class TestLemma2Check:
    def test_sqrt2_vs_3_2(self):
        bound, dist, ok = lemma2_check(sqrt2(), RealAlgebraic.from_rational(mpq(3, 2)))
        assert ok
        # |sqrt2 - 3/2| = 0.0857864...
        assert dist.lo > mpq(857, 10**4) and dist.hi < mpq(858, 10**4)

    def test_identical_inputs_rejected(self):
        with pytest.raises(ValueError, match="identical"):
            lemma2_check(sqrt2(), sqrt2())

    def test_zero_rejected(self):
        with pytest.raises(ValueError, match="nonzero"):
            lemma2_check(sqrt2(), RealAlgebraic.from_rational(0))

    def test_close_rational_pair(self):
        a = RealAlgebraic.from_rational(mpq(7, 5))
        b = RealAlgebraic.from_rational(mpq(10, 7))
        bound, dist, ok = lemma2_check(a, b)
        assert ok and dist.lo == mpq(1, 35)

    def test_conjugate_pair(self):
        p = IntPolynomial.from_coeffs((-1, -1, 1))
        pos = RealAlgebraic.make(p, Enclosure(mpq(1), mpq(2)))
        neg = RealAlgebraic.make(p, Enclosure(mpq(-1), mpq(0)))
        _, dist, ok = lemma2_check(pos, neg)
        assert ok  # distance sqrt(5) clears the bound easily
