import mpmath
import pytest
from gmpy2 import mpq

from hsdet.moments import Family, MomentSequence, moment_table
from hsdet.rational import HalfAlpha
from hsdet.reconstruct import (
    DensityEstimate,
    LegendreExpansion,
    cdf_eval,
    density_eval,
    intercept_sweep,
    legendre_coefficients,
    legendre_monomial_rows,
    median,
    raw_moments,
    separability_probability_from_density,
    y_intercept,
)


def uniform_moments(a, b, n):
    # raw moments of the uniform density on [a, b]
    a, b = mpq(a), mpq(b)
    return MomentSequence(
        Family.UNBALANCED,
        2,
        (a, b),
        [(b ** (m + 1) - a ** (m + 1)) / ((m + 1) * (b - a)) for m in range(n + 1)],
    )


def test_monomial_rows_match_known_polynomials():
    rows = legendre_monomial_rows(4)
    assert rows[0] == [1]
    assert rows[1] == [0, 1]
    assert rows[2] == [mpq(-1, 2), 0, mpq(3, 2)]
    assert rows[3] == [0, mpq(-3, 2), 0, mpq(5, 2)]
    assert rows[4] == [mpq(3, 8), 0, mpq(-30, 8), 0, mpq(35, 8)]


class TestCoefficients:
    def test_single_moment_gives_uniform(self):
        seq = MomentSequence(Family.UNBALANCED, 2, (mpq(0), mpq(1)), [mpq(1)])
        exp = legendre_coefficients(seq, 0)
        assert exp.coeffs == [mpq(1)]

    def test_uniform_higher_coefficients_vanish(self):
        exp = legendre_coefficients(uniform_moments(0, 1, 5), 5)
        assert exp.coeffs[0] == 1
        assert exp.coeffs[1:] == [0] * 5

    def test_leading_coefficient_is_inverse_width(self):
        seq = moment_table(Family.UNBALANCED, HalfAlpha(2), 10)
        exp = legendre_coefficients(seq, 10)
        a, b = seq.support
        assert exp.coeffs[0] == 1 / (b - a)

    def test_needs_enough_moments(self):
        with pytest.raises(ValueError):
            legendre_coefficients(uniform_moments(0, 1, 3), 5)

    def test_adding_moments_keeps_lower_coefficients(self):
        seq = moment_table(Family.UNBALANCED, HalfAlpha(1), 21)
        low = legendre_coefficients(seq, 20)
        high = legendre_coefficients(seq, 21)
        assert high.coeffs[:21] == low.coeffs


class TestMomentReproduction:
    @pytest.mark.parametrize(
        "family,ta",
        [(Family.UNBALANCED, 2), (Family.BALANCED, 1), (Family.RHO_DET, 1)],
    )
    def test_projection_preserves_moments_exactly(self, family, ta):
        n = 25
        seq = moment_table(family, HalfAlpha(ta), n)
        exp = legendre_coefficients(seq, n)
        assert raw_moments(exp, n) == seq.values

    def test_normalization_exact(self):
        seq = moment_table(Family.UNBALANCED, HalfAlpha(4), 15)
        exp = legendre_coefficients(seq, 15)
        assert raw_moments(exp, 0)[0] == 1


class TestEvaluation:
    def test_uniform_density_value(self):
        exp = legendre_coefficients(uniform_moments(0, 1, 0), 0)
        d = DensityEstimate(exp, digits=50)
        assert abs(density_eval(d, mpmath.mpf("0.3")) - 1) < mpmath.mpf("1e-45")

    def test_two_moment_uniform_still_flat(self):
        exp = legendre_coefficients(uniform_moments(0, 1, 1), 1)
        d = DensityEstimate(exp, digits=50)
        assert abs(density_eval(d, mpmath.mpf("0.5")) - 1) < mpmath.mpf("1e-45")

    def test_outside_support_rejected(self):
        exp = legendre_coefficients(uniform_moments(0, 1, 1), 1)
        d = DensityEstimate(exp, digits=30)
        with pytest.raises(ValueError):
            density_eval(d, mpmath.mpf(2))
        with pytest.raises(ValueError):
            cdf_eval(d, mpq(-1))

    def test_recurrence_matches_monomial_expansion(self):
        # direct monomial evaluation of the same expansion, 100-digit arithmetic
        seq = moment_table(Family.UNBALANCED, HalfAlpha(2), 30)
        exp = legendre_coefficients(seq, 30)
        d = DensityEstimate(exp, digits=100)
        rows = legendre_monomial_rows(30)
        poly = [mpq(0)] * 31
        for lam, row in zip(exp.coeffs, rows):
            for m, c in enumerate(row):
                poly[m] += lam * c
        a, b = seq.support
        with mpmath.workdps(100):
            for frac in (mpq(13, 100), mpq(1, 2), mpq(71, 100), mpq(99, 100)):
                x = a + (b - a) * frac
                u = (2 * x - a - b) / (b - a)
                uf = mpmath.mpf(u.numerator) / mpmath.mpf(u.denominator)
                direct = sum(
                    mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) * uf**m
                    for m, c in enumerate(poly)
                )
                got = density_eval(d, mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator))
                assert abs(got - direct) < mpmath.mpf("1e-20")


class TestCdf:
    def test_endpoints_exact(self):
        seq = moment_table(Family.UNBALANCED, HalfAlpha(2), 12)
        exp = legendre_coefficients(seq, 12)
        d = DensityEstimate(exp, digits=40)
        a, b = exp.support
        assert cdf_eval(d, a) == 0
        assert cdf_eval(d, b) == 1

    def test_uniform_quarter(self):
        exp = legendre_coefficients(uniform_moments(0, 1, 2), 2)
        d = DensityEstimate(exp, digits=40)
        assert cdf_eval(d, mpq(1, 4)) == mpq(1, 4)


class TestSummaries:
    def test_uniform_median(self):
        exp = legendre_coefficients(uniform_moments(0, 1, 3), 3)
        d = DensityEstimate(exp, digits=40)
        assert abs(median(d) - mpmath.mpf("0.5")) < mpmath.mpf("1e-19")

    def test_uniform_intercept_on_signed_support(self):
        exp = legendre_coefficients(uniform_moments(-1, 1, 3), 3)
        d = DensityEstimate(exp, digits=40)
        assert abs(y_intercept(d) - mpmath.mpf("0.5")) < mpmath.mpf("1e-19")

    def test_uniform_separable_mass(self):
        exp = legendre_coefficients(uniform_moments(-1, 1, 3), 3)
        d = DensityEstimate(exp, digits=40)
        assert abs(separability_probability_from_density(d) - mpmath.mpf("0.5")) < mpmath.mpf(
            "1e-19"
        )

    def test_intercept_requires_zero_in_support(self):
        exp = legendre_coefficients(uniform_moments(1, 2, 2), 2)
        d = DensityEstimate(exp, digits=30)
        with pytest.raises(ValueError):
            y_intercept(d)


class TestInterceptSweep:
    def test_empty(self):
        assert intercept_sweep(Family.UNBALANCED, [], 10) == []

    def test_single_alpha_finite_positive(self):
        rows = intercept_sweep(Family.UNBALANCED, [HalfAlpha(1)], 60, digits=60)
        assert len(rows) == 1
        alpha, val, err = rows[0]
        assert err is None
        assert val > 0
        assert mpmath.isfinite(val)

    def test_family_alpha_mismatch_recorded_not_raised(self):
        rows = intercept_sweep(Family.RHO_DET, [HalfAlpha(2)], 10)
        assert len(rows) == 1
        assert rows[0][1] is None
        assert "alpha" in rows[0][2]


def test_truncation_bounds_checked():
    exp = LegendreExpansion((mpq(0), mpq(1)), [mpq(1), mpq(0)])
    with pytest.raises(ValueError):
        exp.truncated(5)
