"""Monte Carlo cross-check of the exact determinantal moment formulas.

Hilbert-Schmidt-random 4x4 density matrices are generated by the Ginibre
construction rho = G G* / tr(G G*), with G filled with independent standard
Gaussians over the real (alpha = 1/2) or complex (alpha = 1) field.  The
induced measure is flat (Hilbert-Schmidt) only for the right matrix shape:
the density of rho goes like det(rho)^(beta (K - N + 1)/2 - 1) for an N x K
Ginibre block, so the complex case (beta = 2) uses a square 4x4 G while the
real case (beta = 1) needs a 4x5 G.  The partial transpose acts on the
second 2x2 tensor factor.  Sampling is batched; each batch draws its
generator from a child of numpy's SeedSequence, so results depend only on
the seed, not on batch scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .moments import Family

__all__ = [
    "MCEstimate",
    "sample_hs",
    "estimate_moment",
    "separable_fraction",
    "partial_transpose",
]

_BATCH = 100_000


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    standard_error: float
    samples: int


def _ginibre(rng, count: int, field: str) -> np.ndarray:
    # 4x5 real / 4x4 complex: the shapes whose induced measure is flat.
    if field == "real":
        return rng.standard_normal((count, 4, 5))
    if field == "complex":
        return rng.standard_normal((count, 4, 4)) + 1j * rng.standard_normal(
            (count, 4, 4)
        )
    raise ValueError(f"field must be 'real' or 'complex', got {field!r}")


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose the second 2x2 tensor factor of a (batch of) 4x4 matrices."""
    batched = rho.ndim == 3
    r = rho if batched else rho[None]
    r = r.reshape(-1, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(-1, 4, 4)
    return r if batched else r[0]


def _det_batch(field: str, count: int, seed_seq) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.Generator(np.random.Philox(seed_seq))
    g = _ginibre(rng, count, field)
    w = g @ np.conj(np.swapaxes(g, 1, 2))
    rho = w / np.trace(w, axis1=1, axis2=2)[:, None, None]
    det_rho = np.linalg.det(rho).real
    det_pt = np.linalg.det(partial_transpose(rho)).real
    return det_rho, det_pt


def sample_hs(field: str, seed: int):
    """One HS-random density matrix with its two determinants."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    g = _ginibre(rng, 1, field)[0]
    w = g @ np.conj(g.T)
    rho = w / np.trace(w).real
    det_rho = float(np.linalg.det(rho).real)
    det_pt = float(np.linalg.det(partial_transpose(rho)).real)
    return rho, det_rho, det_pt


def _batched_stat(field: str, samples: int, seed: int, stat) -> MCEstimate:
    n_batches = math.ceil(samples / _BATCH)
    children = np.random.SeedSequence(seed).spawn(n_batches)
    total = 0.0
    total_sq = 0.0
    done = 0
    for child in children:
        count = min(_BATCH, samples - done)
        det_rho, det_pt = _det_batch(field, count, child)
        vals = stat(det_rho, det_pt)
        total += vals.sum()
        total_sq += (vals * vals).sum()
        done += count
    mean = total / samples
    var = max(total_sq / samples - mean * mean, 0.0)
    se = math.sqrt(var / samples)
    return MCEstimate(mean=mean, standard_error=se, samples=samples)


def estimate_moment(
    family: Family, field: str, n: int, samples: int, seed: int
) -> MCEstimate:
    """Sample mean and standard error of a determinantal moment."""
    if family is Family.BALANCED:
        stat = lambda dr, dp: (dr * dp) ** n
    elif family is Family.UNBALANCED:
        stat = lambda dr, dp: dp**n
    else:
        raise ValueError(f"MC oracle covers balanced/unbalanced only, got {family}")
    return _batched_stat(field, samples, seed, stat)


def separable_fraction(field: str, samples: int, seed: int) -> MCEstimate:
    """Fraction of samples passing the PPT criterion det(rho_pt) >= 0."""
    return _batched_stat(
        field, samples, seed, lambda dr, dp: (dp >= 0).astype(float)
    )
