"""Exact Hilbert-Schmidt determinantal moment families and their transforms.

Three families are covered:

* Balanced: expectations of (det(rho) * det(rho_pt))^n, supported on
  [-2^-12 * 3^-3, 2^-16].
* Unbalanced: expectations of det(rho_pt)^n, supported on [-2^-4, 2^-8].
* RhoDet: expectations of det(rho)^k for the real (alpha = 1/2) case,
  supported on [0, 2^-8].

All values are exact rationals.  Tables are cached on disk as JSON keyed by
(family, 2*alpha) since the larger runs (hundreds to thousands of moments)
take minutes and are reused across reconstructions.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import gmpy2
from gmpy2 import mpq, mpz

from .hyper import PFQSpec, eval_terminating_pfq
from .rational import HalfAlpha, binomial, format_rational, parse_rational, pochhammer

__all__ = [
    "Family",
    "MomentSequence",
    "balanced_moment",
    "unbalanced_moment",
    "rho_det_moment",
    "affine_transform_moments",
    "moment_table",
    "family_support",
]


class Family(str, Enum):
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"
    RHO_DET = "rhodet"


_SUPPORT = {
    Family.BALANCED: (mpq(-1, 2**12 * 3**3), mpq(1, 2**16)),
    Family.UNBALANCED: (mpq(-1, 2**4), mpq(1, 2**8)),
    Family.RHO_DET: (mpq(0), mpq(1, 2**8)),
}


def family_support(family: Family):
    a, b = _SUPPORT[family]
    return a, b


@dataclass
class MomentSequence:
    """A truncated exact moment sequence with its provenance."""

    family: Family
    two_alpha: int
    support: tuple
    values: list
    generated_at: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )

    def __post_init__(self):
        self.support = (mpq(self.support[0]), mpq(self.support[1]))
        self.values = [mpq(v) for v in self.values]

    @property
    def max_order(self) -> int:
        return len(self.values) - 1


def balanced_moment(alpha: HalfAlpha, n: int) -> mpq:
    """Exact n-th moment of det(rho) * det(rho_pt) under the HS measure."""
    a = alpha.value
    pref = (
        mpq(gmpy2.fac(2 * n))
        * pochhammer(1 + a, 2 * n)
        * pochhammer(1 + 2 * a, 2 * n)
        / (
            mpz(2) ** (12 * n)
            * pochhammer(3 * a + mpq(3, 2), 2 * n)
            * pochhammer(6 * a + mpq(5, 2), 4 * n)
        )
    )
    spec = PFQSpec(
        upper=(mpq(-n), a, a + mpq(1, 2), -4 * n - 1 - 5 * a),
        lower=(-2 * n - a, -2 * n - 2 * a, mpq(1, 2) - n),
    )
    return pref * eval_terminating_pfq(spec)


def unbalanced_moment(alpha: HalfAlpha, n: int) -> mpq:
    """Exact n-th moment of det(rho_pt) under the HS measure.

    The trailing 5F4 factor is replaced by 1 for n <= 1 (the 1-n lower
    parameter makes the generic sum invalid at n = 1).  At n = 0 both terms
    of the formula collapse to empty products, which would sum to 2; the
    moment is the normalization constant 1.
    """
    if n == 0:
        return mpq(1)
    a = alpha.value
    den = pochhammer(3 * a + mpq(3, 2), n) * pochhammer(6 * a + mpq(5, 2), 2 * n)
    term1 = (
        mpq(gmpy2.fac(n))
        * pochhammer(a + 1, n)
        * pochhammer(2 * a + 1, n)
        / (mpz(2) ** (6 * n) * den)
    )
    pref2 = (
        pochhammer(-2 * n - 1 - 5 * a, n)
        * pochhammer(a, n)
        * pochhammer(a + mpq(1, 2), n)
        / (mpz(2) ** (4 * n) * den)
    )
    if n <= 1:
        f = mpq(1)
    else:
        spec = PFQSpec(
            upper=(-mpq(n - 2, 2), -mpq(n - 1, 2), mpq(-n), a + 1, 2 * a + 1),
            lower=(
                mpq(1 - n),
                n + 2 + 5 * a,
                1 - n - a,
                mpq(1, 2) - n - a,
            ),
        )
        f = eval_terminating_pfq(spec)
    return term1 + pref2 * f


def rho_det_moment(k: int) -> mpq:
    """Exact k-th moment of det(rho) for real (alpha = 1/2) systems."""
    if k < 0:
        raise ValueError(f"moment order must be nonnegative, got {k}")
    return (
        945
        * mpq(4) ** (3 - 2 * k)
        * mpq(gmpy2.fac(2 * k + 1))
        * mpq(gmpy2.fac(2 * k + 3))
        / mpq(gmpy2.fac(4 * k + 9))
    )


def affine_transform_moments(seq: MomentSequence, new_support) -> MomentSequence:
    """Moments of the affine image Y = a' + (b'-a') (X-a)/(b-a).

    Computed exactly with the binomial expansion of (s X + c)^n.
    """
    a, b = seq.support
    a2, b2 = mpq(new_support[0]), mpq(new_support[1])
    if not (a < b and a2 < b2):
        raise ValueError("supports must be non-degenerate intervals")
    s = (b2 - a2) / (b - a)
    c = a2 - s * a
    out = []
    for n in range(len(seq.values)):
        acc = mpq(0)
        for m in range(n + 1):
            acc += binomial(n, m) * s**m * c ** (n - m) * seq.values[m]
        out.append(acc)
    return MomentSequence(
        family=seq.family,
        two_alpha=seq.two_alpha,
        support=(a2, b2),
        values=out,
    )


def _moment_fn(family: Family, alpha: HalfAlpha):
    if family is Family.BALANCED:
        return lambda n: balanced_moment(alpha, n)
    if family is Family.UNBALANCED:
        return lambda n: unbalanced_moment(alpha, n)
    if family is Family.RHO_DET:
        if alpha.two_alpha != 1:
            raise ValueError("the det(rho) family is defined only for alpha = 1/2")
        return rho_det_moment
    raise ValueError(f"unknown family {family!r}")


def cache_path(cache_dir, family: Family, two_alpha: int) -> Path:
    return Path(cache_dir) / f"moments-{family.value}-2a{two_alpha}.json"


def _write_cache(path: Path, seq: MomentSequence):
    doc = {
        "family": seq.family.value,
        "twoAlpha": seq.two_alpha,
        "support": [format_rational(seq.support[0]), format_rational(seq.support[1])],
        "moments": [format_rational(v) for v in seq.values],
        "generatedAt": seq.generated_at,
    }
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_cache(path: Path) -> MomentSequence:
    with open(path) as fh:
        doc = json.load(fh)
    return MomentSequence(
        family=Family(doc["family"]),
        two_alpha=int(doc["twoAlpha"]),
        support=tuple(parse_rational(s) for s in doc["support"]),
        values=[parse_rational(v) for v in doc["moments"]],
        generated_at=doc.get("generatedAt", ""),
    )


def moment_table(
    family: Family, alpha: HalfAlpha, n_max: int, cache_dir=None
) -> MomentSequence:
    """Moments 0..n_max for one family, read from or extending the disk cache."""
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    fn = _moment_fn(family, alpha)

    cached = None
    path = None
    if cache_dir is not None:
        path = cache_path(cache_dir, family, alpha.two_alpha)
        if path.exists():
            cached = load_cache(path)
            if cached.max_order >= n_max:
                return MomentSequence(
                    family=family,
                    two_alpha=alpha.two_alpha,
                    support=cached.support,
                    values=cached.values[: n_max + 1],
                    generated_at=cached.generated_at,
                )

    values = list(cached.values) if cached is not None else []
    for n in range(len(values), n_max + 1):
        values.append(fn(n))
    seq = MomentSequence(
        family=family,
        two_alpha=alpha.two_alpha,
        support=family_support(family),
        values=values,
    )
    if path is not None:
        _write_cache(path, seq)
    return seq
