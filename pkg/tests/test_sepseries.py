import pytest
from gmpy2 import mpq

from hsdet.rational import HalfAlpha
from hsdet.sepseries import f_term, q_poly, separability_probability

EPS = mpq(1, 10**30)


class TestQuintic:
    def test_constant_term(self):
        assert q_poly(0) == 63000

    def test_at_one_is_coefficient_sum(self):
        assert q_poly(1) == 185000 + 779750 + 1289125 + 1042015 + 410694 + 63000
        assert q_poly(1) == 3769584

    def test_horner_matches_expanded_form(self):
        a = mpq(1, 2)
        expanded = (
            185000 * a**5
            + 779750 * a**4
            + 1289125 * a**3
            + 1042015 * a**2
            + 410694 * a
            + 63000
        )
        assert q_poly(a) == expanded


class TestTerm:
    def test_alpha_one_telescopes_known_values(self):
        # f(1) = P(1) - P(2) with both target values exact
        assert f_term(1) == mpq(8, 33) - mpq(26, 323)
        assert f_term(1) == mpq(1726, 10659)

    def test_positive_at_half(self):
        assert f_term(mpq(1, 2)) > 0

    def test_monotone_decay(self):
        assert 0 < f_term(2) < f_term(1)

    def test_rejects_non_half_integer(self):
        with pytest.raises(ValueError):
            f_term(mpq(1, 3))
        with pytest.raises(ValueError):
            f_term(0)


class TestSeries:
    @pytest.mark.parametrize(
        "ta,target",
        [(1, mpq(29, 64)), (2, mpq(8, 33)), (4, mpq(26, 323))],
    )
    def test_converges_to_known_values(self, ta, target):
        state = separability_probability(HalfAlpha(ta), EPS)
        assert abs(state.partial_sum - target) < EPS
        assert state.tail_bound < EPS
        assert state.terms_used <= 120

    def test_telescoping_consistency(self):
        for ta in (1, 2, 3, 4):
            pa = separability_probability(HalfAlpha(ta), EPS).partial_sum
            pa1 = separability_probability(HalfAlpha(ta + 2), EPS).partial_sum
            assert abs(f_term(mpq(ta, 2)) - (pa - pa1)) < 2 * EPS

    def test_monotone_in_alpha(self):
        sums = [
            separability_probability(HalfAlpha(ta), EPS).partial_sum
            for ta in range(1, 11)
        ]
        assert all(a > b for a, b in zip(sums, sums[1:]))

    def test_partial_sums_are_probabilities(self):
        for ta in (1, 2, 4, 20, 70):
            s = separability_probability(HalfAlpha(ta), EPS).partial_sum
            assert 0 < s < 1

    def test_term_ratio_below_half(self):
        for ta in (1, 2, 4):
            a = mpq(ta, 2)
            terms = [f_term(a + i) for i in range(2, 30)]
            assert all(t1 / t0 < mpq(1, 2) for t0, t1 in zip(terms, terms[1:]))

    def test_rejects_bad_epsilon(self):
        with pytest.raises(ValueError):
            separability_probability(HalfAlpha(2), 0)
