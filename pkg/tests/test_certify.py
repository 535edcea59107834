import pytest
from gmpy2 import mpq, mpz

from liouville_certs.certify import (
    ALPHA_PRESETS,
    alpha_preset,
    certify_chain,
    certify_record,
    corollary_decompose,
    f_constant,
    final_bound_check,
    gamma,
    key_index,
    schmidt_probe,
    target_enclosure,
    wstar_upper,
)
from liouville_certs.exact_core import RealAlgebraic
from liouville_certs.liouville import DigitLiouville


class TestPresets:
    def test_all_presets_build(self):
        degrees = {"sqrt2": 2, "cbrt2": 3, "golden": 2, "fourthroot2": 4}
        for name, deg in degrees.items():
            a = alpha_preset(name)
            assert a.degree == deg

    def test_unknown_preset(self):
        with pytest.raises(ValueError, match="unknown"):
            alpha_preset("nope")


class TestGamma:
    def test_product_k2(self):
        g = gamma(alpha_preset("sqrt2"), "product", 2)
        assert g.minpoly.coeffs == (-121, 0, 5000)

    def test_sum_k2(self):
        g = gamma(alpha_preset("sqrt2"), "sum", 2)
        assert g.minpoly.coeffs == (-19879, -2200, 10000)

    def test_rational_one_product_gives_truncation(self):
        from liouville_certs.liouville import truncation

        g = gamma(RealAlgebraic.from_rational(1), "product", 3)
        assert g.as_rational() == truncation(3).alpha

    def test_zero_alpha_product_rejected(self):
        with pytest.raises(ValueError, match="degenerate|zero|0"):
            gamma(RealAlgebraic.from_rational(0), "product", 1)

    def test_bad_kind(self):
        with pytest.raises(ValueError, match="kind"):
            gamma(alpha_preset("sqrt2"), "quotient", 1)


class TestChain:
    def test_sqrt2_product_k2_quantities(self):
        r = certify_record(alpha_preset("sqrt2"), "product", 2)
        assert mpq(141, 10**8) < r.gap.lo and r.gap.hi < mpq(1415, 10**9)
        # eq3 rhs = (10 sqrt2 / 9) * 10^-6
        assert mpq(157, 10**8) < r.eq3_rhs.lo and r.eq3_rhs.hi < mpq(1572, 10**9)
        assert r.eq3 == "pass" and r.eq5 == "pass"
        assert r.eq4_literal == "fail" and r.eq4_corrected == "pass"

    def test_eq5_exact_height_comparison(self):
        # H(gamma_3) against H(alpha) * H(alpha_3)^2 = 2 * 10^12
        g3 = gamma(alpha_preset("sqrt2"), "product", 3)
        assert g3.height <= 2 * mpz(10) ** 12

    def test_all_presets_both_kinds(self):
        for name in ("sqrt2", "cbrt2", "golden"):
            a = alpha_preset(name)
            m = a.degree
            for kind in ("product", "sum"):
                recs = certify_chain(a, kind, 6)
                assert [r.k for r in recs] == list(range(1, 7))
                for r in recs:
                    assert r.eq3 == "pass"
                    assert r.eq5 == "pass"
                    assert r.eq4_corrected == "pass"
                    assert abs(r.omega - mpq(r.k + 1, m)) <= mpq(2, 10)
                    if r.k < 2:
                        assert set(r.eq9.values()) == {"outside_regime"}
                    else:
                        assert "inconclusive" not in r.eq9.values()
                omegas = [r.omega for r in recs]
                assert all(b > a_ for a_, b in zip(omegas[1:], omegas[2:]))

    def test_omega_error_small(self):
        r = certify_record(alpha_preset("sqrt2"), "product", 3)
        assert r.omega_err < mpq(1, 1000)

    def test_parallel_matches_serial(self):
        a = alpha_preset("sqrt2")
        serial = certify_chain(a, "product", 4, jobs=1)
        parallel = certify_chain(a, "product", 4, jobs=4)
        assert serial == parallel


class TestKeyIndex:
    def test_worked_example(self):
        assert key_index(alpha_preset("sqrt2"), 10, "product") == (2, True)

    def test_monotone(self):
        a = alpha_preset("sqrt2")
        ks = [key_index(a, h, "product")[0] for h in (3, 10, 100, 5000)]
        assert ks == sorted(ks)

    def test_boundary_tie_returns_lower(self):
        # rational alpha = 1: gamma_k is the truncation, H = 10^(k!), m = 1;
        # h = 10^3 gives h^2 = H(gamma_3) exactly, bracketing at k = 2
        one = RealAlgebraic.from_rational(1)
        k, _ = key_index(one, 10**3, "product")
        assert k == 2

    def test_too_small(self):
        with pytest.raises(ValueError):
            key_index(alpha_preset("sqrt2"), 1, "product")


class TestConstants:
    def test_f21(self):
        f = f_constant(2, 1)
        assert mpq(101, 1000) < f < mpq(10207, 100000)

    def test_f31_positive_below_one(self):
        assert 0 < f_constant(3, 1) < 1

    def test_guards(self):
        with pytest.raises(ValueError):
            f_constant(2, 2)
        with pytest.raises(ValueError):
            f_constant(1, 1)

    def test_wstar(self):
        assert wstar_upper(2, 1) == 9
        assert wstar_upper(3, 2) == 38
        for m in (2, 3, 5):
            assert wstar_upper(m, m - 1) == 2 * m**3 - 2 * m**2 + m - 1
        with pytest.raises(ValueError):
            wstar_upper(2, 2)


class TestFinalBound:
    def test_gamma_one_passes(self):
        lhs, rhs, ok = final_bound_check(
            alpha_preset("sqrt2"), "product", RealAlgebraic.from_rational(1)
        )
        assert ok
        # |sqrt2 L - 1| = 0.8444...
        assert mpq(84, 100) < lhs.lo and lhs.hi < mpq(85, 100)
        assert rhs == f_constant(2, 1) / 2

    def test_degree_guard(self):
        a = alpha_preset("sqrt2")
        with pytest.raises(ValueError):
            final_bound_check(a, "product", a)

    def test_target_enclosure_shrinks(self):
        a = alpha_preset("sqrt2")
        e1 = target_enclosure(a, "product", 1)
        e2 = target_enclosure(a, "product", 2)
        assert e2.width < e1.width
        assert e1.intersects(e2)


class TestDecomposition:
    def test_m2_minpolys(self):
        rep = corollary_decompose(DigitLiouville.preset("alt12"), 2)
        assert rep.part_plus.minpoly.coeffs == (-1, 0, 2)
        assert rep.part_minus.minpoly.coeffs == (-1, 0, 2)
        assert rep.recombination_ok
        assert rep.weight == mpq(1, 2)

    def test_m1_rational_parts(self):
        rep = corollary_decompose(DigitLiouville.preset("ones"), 1)
        assert rep.part_plus.as_rational() == 1
        assert rep.part_minus.as_rational() == -1

    def test_gaps_are_half_tails(self):
        from liouville_certs.liouville import digit_truncation

        d = DigitLiouville.preset("alt12")
        rep = corollary_decompose(d, 3, k_max=4)
        for r in rep.records:
            _, _, tail = digit_truncation(d, r.k)
            assert r.gap.lo == tail.lo / 2 and r.gap.hi == tail.hi / 2

    def test_digit_guard(self):
        bad = DigitLiouville.from_digits(10, [1, 2, 3, 1, 1, 1, 1, 1, 1])
        with pytest.raises(ValueError, match="digit"):
            corollary_decompose(bad, 2)


class TestSchmidtProbe:
    def test_table_and_positive_min(self):
        rows = schmidt_probe(2, 5, 0)
        assert rows and rows[0].score.lo > 0
        assert rows == sorted(rows, key=lambda r: (r.score.hi, r.alpha_key, r.beta_key))

    def test_contains_sqrt2_vs_3_2(self):
        rows = schmidt_probe(2, 3, 0)
        keys = {"[-2,0,1];root1", "[-3,2];root0"}
        match = [r for r in rows if {r.alpha_key, r.beta_key} == keys]
        assert len(match) == 1
        r = match[0]
        # |sqrt2 - 3/2| * 3^2 = 0.7720...
        assert mpq(77, 100) < r.score.lo and r.score.hi < mpq(78, 100)

    def test_h_max_one(self):
        rows = schmidt_probe(2, 1, 0)
        # only rationals of height 1 qualify; no quadratic of height 1 has
        # squarefree discriminant part 2
        assert all("root0" in r.alpha_key for r in rows)

    def test_invalid_d(self):
        for d in (0, 1, 4, -2):
            with pytest.raises(ValueError):
                schmidt_probe(d, 3, 0)

    def test_negative_epsilon(self):
        with pytest.raises(ValueError):
            schmidt_probe(2, 3, -1)
