"""Exact convergent series for the separability probability P(alpha).

P(alpha) is the sum over i >= 0 of f(alpha + i), where f is a single
gamma-ratio term scaled by a quintic polynomial.  The terms are strictly
positive and their ratio tends to 27/64, so the tail after a term with
verified ratio < 1/2 is bounded by that term itself (geometric bound with
ratio 1/2).  Everything is summed in exact rational arithmetic; the epsilon
comparison is an exact mpq comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq, mpz

from .rational import HalfAlpha, gamma_ratio

__all__ = ["SeriesState", "q_poly", "f_term", "separability_probability"]

# Quintic coefficients, ascending order.
_Q_COEFFS = (63000, 410694, 1042015, 1289125, 779750, 185000)

# Verified per-series before the geometric tail bound is applied.
_TAIL_RATIO = mpq(1, 2)

_MAX_TERMS = 10_000


@dataclass(frozen=True)
class SeriesState:
    """Result of a truncated series evaluation with a certified tail bound."""

    alpha: HalfAlpha
    terms_used: int
    partial_sum: mpq
    last_term: mpq
    tail_bound: mpq


def q_poly(alpha) -> mpq:
    """The quintic prefactor polynomial, evaluated in Horner form."""
    a = mpq(alpha)
    acc = mpq(0)
    for c in reversed(_Q_COEFFS):
        acc = acc * a + c
    return acc


def f_term(alpha) -> mpq:
    """One series term f(alpha); equals P(alpha) - P(alpha+1).

    Requires 2*alpha to be a positive integer so the gamma ratio and the
    power of two stay rational.
    """
    a = mpq(alpha)
    ta = a * 2
    if ta.denominator != 1 or ta <= 0:
        raise ValueError(f"f_term needs a positive half-integer alpha, got {alpha}")
    ta = int(ta)
    # Doubled gamma arguments: Gamma(3a + 5/2) Gamma(5a + 2) over
    # Gamma(a + 1) Gamma(2a + 3) Gamma(5a + 13/2).
    ratio = gamma_ratio(
        [3 * ta + 5, 5 * ta + 4],
        [ta + 2, 2 * ta + 6, 5 * ta + 13],
    )
    return q_poly(a) * ratio / (3 * mpz(2) ** (2 * ta + 6))


def separability_probability(alpha: HalfAlpha, epsilon) -> SeriesState:
    """Sum f(alpha + i) until the certified tail bound drops below epsilon."""
    eps = mpq(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    a = alpha.value
    total = mpq(0)
    prev = None
    for i in range(_MAX_TERMS):
        term = f_term(a + i)
        if term <= 0:
            raise ArithmeticError(f"series term f({a + i}) is not positive")
        total += term
        decaying = prev is not None and term / prev < _TAIL_RATIO
        tail = term * _TAIL_RATIO / (1 - _TAIL_RATIO)
        if decaying and tail < eps:
            return SeriesState(
                alpha=alpha,
                terms_used=i + 1,
                partial_sum=total,
                last_term=term,
                tail_bound=tail,
            )
        prev = term
    raise ArithmeticError(
        f"series did not reach tail bound {epsilon} within {_MAX_TERMS} terms"
    )
