from fractions import Fraction

import pytest
from gmpy2 import mpq

from hsdet.hyper import (
    LowerParameterZeroError,
    NonTerminatingError,
    PFQSpec,
    eval_terminating_pfq,
    first_lower_zero,
    is_safe_spec,
    termination_index,
)


def brute_force_pfq(upper, lower):
    """Oracle: term-by-term sum with full Pochhammer products in Fraction."""

    def poch(x, k):
        out = Fraction(1)
        for i in range(k):
            out *= Fraction(x) + i
        return out

    t = min(-int(u) for u in upper if Fraction(u).denominator == 1 and u <= 0)
    total = Fraction(0)
    for k in range(t + 1):
        num = Fraction(1)
        for u in upper:
            num *= poch(Fraction(u), k)
        den = Fraction(1)
        for l in lower:
            den *= poch(Fraction(l), k)
        kfac = Fraction(1)
        for i in range(1, k + 1):
            kfac *= i
        total += num / (den * kfac)
    return total


def test_zero_upper_parameter_gives_one():
    spec = PFQSpec(upper=(0, mpq(3, 2)), lower=(mpq(7, 2),))
    assert eval_terminating_pfq(spec) == 1


def test_4f3_two_term_example():
    spec = PFQSpec(
        upper=(-1, 1, mpq(3, 2), -10),
        lower=(-3, -4, mpq(-1, 2)),
    )
    val = eval_terminating_pfq(spec)
    # two-term sum 1 + (-1 * 1 * 3/2 * -10) / ((-3)(-4)(-1/2) * 1!)
    assert val == mpq(-3, 2)
    assert val == mpq(
        brute_force_pfq([-1, 1, Fraction(3, 2), -10], [-3, -4, Fraction(-1, 2)])
    )


def test_t_equals_one_matches_definition():
    upper = (-1, mpq(5, 3), mpq(7, 2))
    lower = (mpq(9, 4), 3)
    num = mpq(1)
    for u in upper:
        num *= u
    den = mpq(1)
    for l in lower:
        den *= l
    assert eval_terminating_pfq(PFQSpec(upper, lower)) == 1 + num / den


def test_matches_brute_force_oracle():
    upper = (-7, mpq(1, 2), 3)
    lower = (mpq(5, 2), mpq(11, 3))
    got = eval_terminating_pfq(PFQSpec(upper, lower))
    want = brute_force_pfq([-7, Fraction(1, 2), 3], [Fraction(5, 2), Fraction(11, 3)])
    assert got == mpq(want)


def test_non_terminating_rejected():
    with pytest.raises(NonTerminatingError):
        eval_terminating_pfq(PFQSpec(upper=(mpq(1, 2), 3), lower=(mpq(5, 2),)))


def test_lower_zero_before_termination():
    # t = 5 but (-2)_k vanishes at k = 3
    with pytest.raises(LowerParameterZeroError):
        eval_terminating_pfq(PFQSpec(upper=(-5, mpq(1, 2)), lower=(-2,)))


def test_termination_and_zero_indices():
    assert termination_index((-3, mpq(1, 2), -10)) == 3
    assert first_lower_zero((mpq(1, 2), 5)) is None
    assert first_lower_zero((-4, -1)) == 2
    assert is_safe_spec((-3,), (-4,))
    assert not is_safe_spec((-5,), (-2,))
