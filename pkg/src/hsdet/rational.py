"""Exact rational scalars and half-integer gamma machinery.

Everything downstream (moment formulas, series terms, Legendre coefficients)
reduces to Pochhammer symbols, factorials and ratios of gamma functions at
half-integer arguments, all of which stay inside Q once the sqrt(pi) factors
cancel.  `gmpy2.mpq` is the rational type throughout; it normalizes to lowest
terms with a positive denominator on every operation.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpq, mpz

__all__ = [
    "Rational",
    "HalfAlpha",
    "GammaHalf",
    "SqrtPiMismatchError",
    "pochhammer",
    "gamma_half",
    "gamma_ratio",
    "format_rational",
    "parse_rational",
    "binomial",
]

Rational = mpq

# 2*alpha ceiling covering the alpha = 1/2, 1, ..., 35 sweep.  Parameter
# safety of the hypergeometric formulas beyond this range is unverified, so
# larger values are rejected rather than guessed at.
MAX_TWO_ALPHA = 70


class SqrtPiMismatchError(ValueError):
    """Raised when a gamma ratio does not reduce to a rational number."""


@dataclass(frozen=True)
class HalfAlpha:
    """The Dyson-index-like parameter alpha, stored exactly as 2*alpha.

    alpha = 1/2 selects real (rebit), 1 complex (qubit) and 2 quaternionic
    systems; the supported sweep is alpha = 1/2, 1, 3/2, ..., 35.
    """

    two_alpha: int

    def __post_init__(self):
        if not isinstance(self.two_alpha, int) or isinstance(self.two_alpha, bool):
            raise TypeError(f"two_alpha must be an int, got {self.two_alpha!r}")
        if not 1 <= self.two_alpha <= MAX_TWO_ALPHA:
            raise ValueError(
                f"two_alpha must lie in [1, {MAX_TWO_ALPHA}], got {self.two_alpha}"
            )

    @property
    def value(self) -> mpq:
        return mpq(self.two_alpha, 2)

    @classmethod
    def parse(cls, text: str) -> "HalfAlpha":
        """Parse an exact half-integer such as '0.5', '1' or '17.5'."""
        q = parse_rational(text)
        two = q * 2
        if two != int(two):
            raise ValueError(f"alpha must be a half-integer, got {text!r}")
        return cls(int(two))

    def __str__(self) -> str:
        if self.two_alpha % 2 == 0:
            return str(self.two_alpha // 2)
        return f"{self.two_alpha / 2:g}"


@dataclass(frozen=True)
class GammaHalf:
    """Gamma(m/2) for a positive integer m, as rational * pi^(sqrt_pi_pow/2)."""

    rational: mpq
    sqrt_pi_pow: int


def pochhammer(x, k: int) -> mpq:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError(f"pochhammer order must be nonnegative, got {k}")
    acc = mpq(1)
    x = mpq(x)
    for i in range(k):
        acc *= x + i
    return acc


def binomial(n: int, k: int) -> mpz:
    return gmpy2.bincoef(n, k)


def gamma_half(m: int) -> GammaHalf:
    """Exact Gamma(m/2) for a positive integer m.

    Even m gives (m/2 - 1)!; odd m gives (m-2)!! / 2^((m-1)/2) times sqrt(pi).
    """
    if m < 1:
        raise ValueError(f"gamma_half needs a positive integer, got {m}")
    if m % 2 == 0:
        return GammaHalf(mpq(gmpy2.fac(m // 2 - 1)), 0)
    # (m-2)!! with (-1)!! = 1
    dfac = mpz(1)
    for j in range(m - 2, 0, -2):
        dfac *= j
    return GammaHalf(mpq(dfac, mpz(2) ** ((m - 1) // 2)), 1)


def gamma_ratio(numerators, denominators) -> mpq:
    """Exact ratio of products of Gamma(m/2) factors.

    Arguments are the doubled gamma arguments (so `[11]` means Gamma(11/2)).
    The sqrt(pi) powers of numerator and denominator must cancel; a mismatch
    means a non-half-integer parameter leaked into the exact path.
    """
    num, num_pi = mpq(1), 0
    for m in numerators:
        g = gamma_half(m)
        num *= g.rational
        num_pi += g.sqrt_pi_pow
    den, den_pi = mpq(1), 0
    for m in denominators:
        g = gamma_half(m)
        den *= g.rational
        den_pi += g.sqrt_pi_pow
    if num_pi != den_pi:
        raise SqrtPiMismatchError(
            f"sqrt(pi) exponents do not cancel: {num_pi} vs {den_pi}"
        )
    return num / den


def format_rational(q) -> str:
    """Serialize as 'p/q' in decimal, or just 'p' for integers."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> mpq:
    """Parse 'p/q', integer, or exact decimal strings like '-0.125'."""
    text = text.strip()
    if "/" in text:
        p, _, q = text.partition("/")
        return mpq(int(p), int(q))
    if "." in text or "e" in text.lower():
        from decimal import Decimal
        from fractions import Fraction

        f = Fraction(Decimal(text))
        return mpq(f.numerator, f.denominator)
    return mpq(int(text))
