"""Exact Hilbert-Schmidt determinantal moments of 2x2 quantum systems,
density reconstruction from truncated moment sequences, and separability
probabilities by a convergent exact series."""

from .moments import (
    Family,
    MomentSequence,
    affine_transform_moments,
    balanced_moment,
    moment_table,
    rho_det_moment,
    unbalanced_moment,
)
from .rational import HalfAlpha, Rational
from .reconstruct import DensityEstimate, LegendreExpansion, legendre_coefficients
from .sepseries import separability_probability

__all__ = [
    "Family",
    "MomentSequence",
    "HalfAlpha",
    "Rational",
    "DensityEstimate",
    "LegendreExpansion",
    "affine_transform_moments",
    "balanced_moment",
    "legendre_coefficients",
    "moment_table",
    "rho_det_moment",
    "separability_probability",
    "unbalanced_moment",
]
