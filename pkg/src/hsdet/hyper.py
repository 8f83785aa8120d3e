"""Terminating generalized hypergeometric sums pFq(...; 1) in exact arithmetic.

Both determinantal moment formulas reduce to terminating series at unit
argument: at least one upper parameter is a non-positive integer, and the
series stops before any lower-parameter Pochhammer can vanish.  Terms are
built incrementally (each term is the previous one times a rational ratio),
which keeps the cost linear in the termination index.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

__all__ = [
    "PFQSpec",
    "NonTerminatingError",
    "LowerParameterZeroError",
    "termination_index",
    "first_lower_zero",
    "is_safe_spec",
    "eval_terminating_pfq",
]


class NonTerminatingError(ValueError):
    """No upper parameter is a non-positive integer."""


class LowerParameterZeroError(ZeroDivisionError):
    """A lower-parameter Pochhammer vanished before the series terminated."""


@dataclass(frozen=True)
class PFQSpec:
    """Parameters of a pFq evaluated at argument 1."""

    upper: tuple
    lower: tuple

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(mpq(u) for u in self.upper))
        object.__setattr__(self, "lower", tuple(mpq(l) for l in self.lower))


def _nonpositive_int(q: mpq):
    if q.denominator == 1 and q.numerator <= 0:
        return int(-q.numerator)
    return None


def termination_index(upper) -> int:
    """Smallest t with some upper parameter equal to -t; the series has t+1 terms."""
    ts = [m for m in (_nonpositive_int(mpq(u)) for u in upper) if m is not None]
    if not ts:
        raise NonTerminatingError(f"no non-positive integer among upper={upper}")
    return min(ts)


def first_lower_zero(lower):
    """Smallest k at which some lower Pochhammer (l)_k vanishes, or None.

    (l)_k first vanishes at k = -l + 1 when l is a non-positive integer.
    """
    ks = [m + 1 for m in (_nonpositive_int(mpq(l)) for l in lower) if m is not None]
    return min(ks) if ks else None


def is_safe_spec(upper, lower) -> bool:
    """True when the series terminates strictly before any lower zero."""
    t = termination_index(upper)
    kz = first_lower_zero(lower)
    return kz is None or t < kz


def eval_terminating_pfq(spec: PFQSpec) -> mpq:
    """Exact value of the terminating sum over k = 0..t of
    prod (upper_i)_k / (prod (lower_j)_k * k!).
    """
    t = termination_index(spec.upper)
    total = mpq(1)
    term = mpq(1)
    for k in range(t):
        num = mpq(1)
        for u in spec.upper:
            num *= u + k
        den = mpq(k + 1)
        for l in spec.lower:
            fac = l + k
            if fac == 0:
                if num != 0:
                    raise LowerParameterZeroError(
                        f"lower parameter {l} vanishes at k={k + 1} before "
                        f"termination at t={t}"
                    )
                fac = mpq(1)  # unreachable term; num == 0 kills it anyway
            den *= fac
        term = term * num / den
        total += term
    return total
