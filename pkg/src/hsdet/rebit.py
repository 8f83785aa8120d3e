"""Closed-form density of the transformed two-rebit determinant.

With y = 17 det(rho) - 1/16, the density f(y) on [-1/16, 1/256] is an
explicit five-term expression in square roots and inverse hyperbolic
tangents.  It serves as the independent oracle for the moment formulas and
the Legendre reconstruction: its quadrature moments must match the exact
affinely transformed det(rho) moments.

At the left endpoint the arctanh terms form a 0 * inf indeterminate pair
whose product limit is 0 (the coefficient vanishes linearly while the
arctanh diverges only logarithmically), so evaluation there returns the
finite limit of the remaining algebraic terms.
"""

from __future__ import annotations

import mpmath
from gmpy2 import mpq

__all__ = ["Y_MIN", "Y_MAX", "rebit_density", "rebit_density_moment"]

Y_MIN = mpq(-1, 16)
Y_MAX = mpq(1, 256)


class QuadratureError(ArithmeticError):
    """Quadrature error estimate exceeded the requested tolerance."""


def _to_mpf(y):
    if isinstance(y, mpq):
        return mpmath.mpf(y.numerator) / mpmath.mpf(y.denominator)
    return mpmath.mpf(y)


def _clamped_sqrt(v, tol):
    if v < 0:
        if v < -tol:
            raise ArithmeticError(
                f"radicand {mpmath.nstr(v, 8)} negative beyond rounding "
                "tolerance; increase working precision"
            )
        return mpmath.mpf(0)
    return mpmath.sqrt(v)


def rebit_density(y, digits: int = 50):
    """Evaluate f(y) at the requested decimal precision."""
    guard = max(10, digits // 4)
    with mpmath.workdps(digits + guard):
        yy = _to_mpf(y)
        tol = mpmath.mpf(10) ** (-(digits // 2))
        lo, hi = _to_mpf(Y_MIN), _to_mpf(Y_MAX)
        if yy < lo - tol or yy > hi + tol:
            raise ValueError(f"y={mpmath.nstr(yy, 8)} outside [-1/16, 1/256]")
        yy = max(lo, min(hi, yy))

        sqrt17 = mpmath.sqrt(17)
        inner = _clamped_sqrt(272 * yy + 17, tol)
        s = _clamped_sqrt(17 - 4 * inner, tol)
        q16 = 16 * yy + 1
        sq16 = _clamped_sqrt(q16, tol)

        total = -mpmath.mpf(4128768) * s * yy / (289 * sqrt17)
        total += -mpmath.mpf(72576) / 289 * sq16 * s
        total += -mpmath.mpf(189504) * s / (289 * sqrt17)

        # arctanh pair; coefficient = 483840 (16 y + 1) / 289 vanishes at the
        # left endpoint where the arctanh argument reaches 1.
        if q16 > 0:
            arg = _clamped_sqrt(1 - 4 * sq16 / sqrt17, tol)
            if arg < 1:
                total += (7741440 * yy + 483840) / 289 * mpmath.atanh(arg)
        with mpmath.workdps(digits):
            return +total


def rebit_density_moment(k: int, digits: int = 50):
    """k-th raw moment of f by adaptive high-precision quadrature.

    The integrand is split with a dedicated refinement band at the left
    endpoint, where f has square-root/logarithmic behavior.
    """
    if k < 0:
        raise ValueError(f"moment order must be nonnegative, got {k}")
    work = digits + 15
    with mpmath.workdps(work):
        lo, hi = _to_mpf(Y_MIN), _to_mpf(Y_MAX)
        band = mpmath.mpf(10) ** -4

        def integrand(y):
            return y**k * rebit_density(y, digits=work)

        val, err = mpmath.quad(
            integrand, [lo, lo + band, 0, hi], error=True, maxdegree=8
        )
        if err > mpmath.mpf(10) ** (-(digits // 2)):
            raise QuadratureError(
                f"quadrature error {mpmath.nstr(err, 5)} exceeds tolerance "
                f"10^-{digits // 2} for moment k={k}"
            )
        with mpmath.workdps(digits):
            return +val
