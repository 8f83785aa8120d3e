"""Density reconstruction from truncated moment sequences.

A density supported on [a, b] is approximated by a truncated shifted-Legendre
series: with u(x) = (2x - a - b)/(b - a),

    f_N(x) = sum_j lambda_j P_j(u(x)),
    lambda_j = (2j+1)/(b-a) * E[P_j(u(X))],

where the expectations are linear combinations of the raw moments.  The
coefficients are computed in exact rational arithmetic (the monomial Legendre
coefficients grow like 4^j and cancel massively against the moments, which
floating point cannot survive at large N); evaluation then happens at a
configurable decimal precision via mpmath.

CDFs integrate the series term by term using
int P_j(u) du = (P_{j+1}(u) - P_{j-1}(u)) / (2j+1), which pins the endpoints
to exactly 0 and 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import mpmath
from gmpy2 import mpq

from .moments import Family, MomentSequence, affine_transform_moments, moment_table
from .rational import HalfAlpha, binomial

__all__ = [
    "LegendreExpansion",
    "DensityEstimate",
    "legendre_monomial_rows",
    "legendre_coefficients",
    "density_eval",
    "cdf_eval",
    "y_intercept",
    "median",
    "separability_probability_from_density",
    "intercept_sweep",
    "raw_moments",
]

# Gibbs-type undershoot beyond this at high degree usually means too few
# digits or a misbehaving moment input.
_NEGATIVITY_ALARM = -1e-2
_NEGATIVITY_DEGREE = 500


@dataclass
class LegendreExpansion:
    """Shifted-Legendre coefficients of a density approximation on [a, b]."""

    support: tuple
    coeffs: list

    def __post_init__(self):
        self.support = (mpq(self.support[0]), mpq(self.support[1]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def truncated(self, n: int) -> "LegendreExpansion":
        if n > self.degree:
            raise ValueError(f"cannot truncate degree {self.degree} to {n}")
        return LegendreExpansion(self.support, self.coeffs[: n + 1])


@dataclass
class DensityEstimate:
    """An expansion plus the decimal precision used to evaluate it."""

    expansion: LegendreExpansion
    digits: int = 300


def legendre_monomial_rows(n_max: int):
    """Exact monomial coefficients of P_0..P_n_max via the three-term recurrence."""
    rows = [[mpq(1)]]
    if n_max >= 1:
        rows.append([mpq(0), mpq(1)])
    for j in range(1, n_max):
        prev, cur = rows[j - 1], rows[j]
        nxt = [mpq(0)] * (j + 2)
        for m, c in enumerate(cur):
            nxt[m + 1] += mpq(2 * j + 1, j + 1) * c
        for m, c in enumerate(prev):
            nxt[m] -= mpq(j, j + 1) * c
        rows.append(nxt)
    return rows[: n_max + 1]


def legendre_coefficients(seq: MomentSequence, n: int) -> LegendreExpansion:
    """Degree-n expansion of the density behind an exact moment sequence."""
    if n + 1 > len(seq.values):
        raise ValueError(
            f"need {n + 1} moments for degree {n}, have {len(seq.values)}"
        )
    a, b = seq.support
    unit = affine_transform_moments(seq, (mpq(-1), mpq(1)))
    nu = unit.values
    rows = legendre_monomial_rows(n)
    coeffs = []
    for j, row in enumerate(rows):
        e = mpq(0)
        for m, c in enumerate(row):
            if c:
                e += c * nu[m]
        coeffs.append(mpq(2 * j + 1) / (b - a) * e)
    return LegendreExpansion(support=(a, b), coeffs=coeffs)


def _is_exact(x) -> bool:
    return isinstance(x, (int, mpq)) or type(x).__name__ == "Fraction"


def _unit_coordinate(x, a, b):
    return (2 * x - a - b) / (b - a)


def _legendre_values(u, n_max: int):
    """P_0(u)..P_n_max(u) by forward three-term recurrence."""
    vals = [u * 0 + 1]
    if n_max >= 1:
        vals.append(u)
    for j in range(1, n_max):
        vals.append(((2 * j + 1) * u * vals[j] - j * vals[j - 1]) / (j + 1))
    return vals


def _prepare(d: DensityEstimate, x):
    """Convert (x, coeffs) to a common arithmetic: exact mpq or mpf."""
    a, b = d.expansion.support
    if _is_exact(x):
        return mpq(x), [mpq(c) for c in d.expansion.coeffs], a, b
    x = mpmath.mpf(x) if not isinstance(x, mpmath.mpf) else x
    coeffs = [
        c if isinstance(c, mpmath.mpf) else mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
        for c in d.expansion.coeffs
    ]
    return x, coeffs, mpmath.mpf(a.numerator) / mpmath.mpf(a.denominator), mpmath.mpf(
        b.numerator
    ) / mpmath.mpf(b.denominator)


def density_eval(d: DensityEstimate, x):
    """Evaluate the reconstructed density at x in [a, b]."""
    with mpmath.workdps(d.digits):
        x, coeffs, a, b = _prepare(d, x)
        if not a <= x <= b:
            raise ValueError(f"{x} outside support")
        u = _unit_coordinate(x, a, b)
        vals = _legendre_values(u, len(coeffs) - 1)
        out = sum(c * v for c, v in zip(coeffs, vals))
    if d.expansion.degree >= _NEGATIVITY_DEGREE and out < _NEGATIVITY_ALARM:
        warnings.warn(
            f"reconstructed density dips to {float(out):.4g} at x={float(x):.6g}; "
            "consider more digits or moments",
            RuntimeWarning,
        )
    return out


def cdf_eval(d: DensityEstimate, x):
    """Cumulative probability of the expansion on [a, x]."""
    with mpmath.workdps(d.digits):
        x, coeffs, a, b = _prepare(d, x)
        if not a <= x <= b:
            raise ValueError(f"{x} outside support")
        u = _unit_coordinate(x, a, b)
        n = len(coeffs) - 1
        vals = _legendre_values(u, n + 1)
        acc = coeffs[0] * (u + 1)
        for j in range(1, n + 1):
            acc += coeffs[j] * (vals[j + 1] - vals[j - 1]) / (2 * j + 1)
        return (b - a) / 2 * acc


def y_intercept(d: DensityEstimate):
    """Density value at x = 0, the separability/entanglement boundary."""
    a, b = d.expansion.support
    if not a <= 0 <= b:
        raise ValueError(f"support [{a}, {b}] does not contain 0")
    return density_eval(d, mpmath.mpf(0))


def median(d: DensityEstimate):
    """Root of cdf(x) = 1/2, by bisection on the full support bracket."""
    a, b = d.expansion.support
    with mpmath.workdps(d.digits):
        lo = mpmath.mpf(a.numerator) / mpmath.mpf(a.denominator)
        hi = mpmath.mpf(b.numerator) / mpmath.mpf(b.denominator)
        half = mpmath.mpf(1) / 2
        flo = cdf_eval(d, lo) - half
        fhi = cdf_eval(d, hi) - half
        if not flo < 0 < fhi:
            raise ArithmeticError(
                "CDF does not bracket 1/2 on the support; reconstruction is "
                "too coarse or non-monotone"
            )
        tol = mpmath.mpf(10) ** (-(d.digits // 2))
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if cdf_eval(d, mid) < half:
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def separability_probability_from_density(d: DensityEstimate):
    """Probability mass of the nonnegative part of the support: cdf(b) - cdf(0)."""
    a, b = d.expansion.support
    if not a <= 0 <= b:
        raise ValueError(f"support [{a}, {b}] does not contain 0")
    with mpmath.workdps(d.digits):
        return cdf_eval(d, mpmath.mpf(b.numerator) / mpmath.mpf(b.denominator)) - cdf_eval(
            d, mpmath.mpf(0)
        )


def intercept_sweep(family: Family, alphas, n_moments: int, digits=300, cache_dir=None):
    """Per-alpha y-intercepts of the n_moments reconstruction.

    Failures are recorded as error strings in the table, not raised.
    """
    rows = []
    for alpha in alphas:
        try:
            seq = moment_table(family, alpha, n_moments, cache_dir=cache_dir)
            exp = legendre_coefficients(seq, n_moments)
            val = y_intercept(DensityEstimate(exp, digits=digits))
            rows.append((alpha, val, None))
        except Exception as exc:  # per-entry, the sweep keeps going
            rows.append((alpha, None, f"{type(exc).__name__}: {exc}"))
    return rows


def raw_moments(expansion: LegendreExpansion, k_max: int):
    """Exact raw moments of the expansion, for the projection invariant.

    Only valid when the coefficients are exact rationals.
    """
    a, b = expansion.support
    rows = legendre_monomial_rows(expansion.degree)
    # Monomial coefficients of the expansion in the unit coordinate u.
    poly = [mpq(0)] * (expansion.degree + 1)
    for lam, row in zip(expansion.coeffs, rows):
        lam = mpq(lam)
        for m, c in enumerate(row):
            poly[m] += lam * c
    # I[m] = int_{-1}^{1} u^m * poly(u) du
    def unit_integral(m):
        acc = mpq(0)
        for deg, c in enumerate(poly):
            if c and (m + deg) % 2 == 0:
                acc += c * mpq(2, m + deg + 1)
        return acc

    s = (b - a) / 2
    c0 = (a + b) / 2
    out = []
    for k in range(k_max + 1):
        acc = mpq(0)
        for m in range(k + 1):
            acc += binomial(k, m) * s**m * c0 ** (k - m) * unit_integral(m)
        out.append(s * acc)
    return out
