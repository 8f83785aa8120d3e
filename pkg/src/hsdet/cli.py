"""Command-line front end: moment tables, reconstructions, sweeps, series.

All numeric CSV output uses '.' decimals, ',' separators and LF endings;
exact rationals are printed alongside decimals wherever available.
"""

from __future__ import annotations

import os
import random
import sys
from pathlib import Path

import click
import mpmath
from gmpy2 import mpq

from . import mc as mc_mod
from . import moments as moments_mod
from . import rebit as rebit_mod
from . import reconstruct as rec_mod
from . import sepseries
from .moments import Family
from .rational import HalfAlpha, format_rational, parse_rational

DEFAULT_CACHE = Path(
    os.environ.get("HSDET_CACHE_DIR", Path.home() / ".cache" / "hsdet")
)


def _decimal(value, sig: int = 30) -> str:
    """Decimal string at `sig` significant digits for mpq/mpf/float input."""
    with mpmath.workdps(sig + 15):
        if isinstance(value, mpq):
            value = mpmath.mpf(value.numerator) / mpmath.mpf(value.denominator)
        else:
            value = mpmath.mpf(value)
        return mpmath.nstr(value, sig, strip_zeros=False)


def _parse_alpha(text: str) -> HalfAlpha:
    try:
        return HalfAlpha.parse(text)
    except (ValueError, TypeError) as exc:
        raise click.BadParameter(str(exc))


def _parse_alphas(text: str):
    """Either a comma list ('0.5,1,2') or a range 'start:stop:step'."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise click.BadParameter(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (parse_rational(p) for p in parts)
        if step <= 0:
            raise click.BadParameter("step must be positive")
        out = []
        v = start
        while v <= stop:
            out.append(_parse_alpha(format_rational(v)))
            v += step
        return out
    if not text.strip():
        return []
    return [_parse_alpha(p) for p in text.split(",")]


def _family(text: str) -> Family:
    try:
        return Family(text.lower())
    except ValueError:
        raise click.BadParameter(
            f"family must be one of balanced, unbalanced, rhodet; got {text!r}"
        )


def _open_out(out):
    return open(out, "w", newline="\n") if out else sys.stdout


@click.group()
def main():
    """Exact HS determinantal moments, densities and separability probabilities."""


@main.command()
@click.option("--family", required=True)
@click.option("--alpha", required=True)
@click.option("--n", "n_max", type=int, required=True, help="Largest moment order.")
@click.option("--cache-dir", type=click.Path(path_type=Path), default=DEFAULT_CACHE)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def moments(family, alpha, n_max, cache_dir, out):
    """Print exact moments n = 0..N as CSV: n, exact, 30-digit decimal."""
    fam = _family(family)
    al = _parse_alpha(alpha)
    seq = moments_mod.moment_table(fam, al, n_max, cache_dir=cache_dir)
    with _open_out(out) as fh:
        fh.write("n,moment,moment_decimal\n")
        for n, v in enumerate(seq.values):
            fh.write(f"{n},{format_rational(v)},{_decimal(v)}\n")


@main.command()
@click.option("--family", required=True)
@click.option("--alpha", required=True)
@click.option("--n-moments", type=int, default=500, show_default=True)
@click.option("--grid", type=int, default=1001, show_default=True)
@click.option("--digits", type=int, default=300, show_default=True)
@click.option("--cache-dir", type=click.Path(path_type=Path), default=DEFAULT_CACHE)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def reconstruct(family, alpha, n_moments, grid, digits, cache_dir, out):
    """Reconstruct the density and CDF on a grid: x, density, cdf."""
    fam = _family(family)
    al = _parse_alpha(alpha)
    seq = moments_mod.moment_table(fam, al, n_moments, cache_dir=cache_dir)
    exp = rec_mod.legendre_coefficients(seq, n_moments)
    d = rec_mod.DensityEstimate(exp, digits=digits)
    a, b = exp.support
    with _open_out(out) as fh:
        fh.write("x,density,cdf\n")
        with mpmath.workdps(digits):
            lo = mpmath.mpf(a.numerator) / mpmath.mpf(a.denominator)
            hi = mpmath.mpf(b.numerator) / mpmath.mpf(b.denominator)
            for i in range(grid):
                x = lo + (hi - lo) * i / (grid - 1) if grid > 1 else lo
                fh.write(
                    f"{_decimal(x)},{_decimal(rec_mod.density_eval(d, x))},"
                    f"{_decimal(rec_mod.cdf_eval(d, x))}\n"
                )


@main.command()
@click.option("--family", required=True)
@click.option("--alphas", required=True, help="Comma list or start:stop:step.")
@click.option("--n-moments", type=int, default=500, show_default=True)
@click.option("--digits", type=int, default=300, show_default=True)
@click.option("--cache-dir", type=click.Path(path_type=Path), default=DEFAULT_CACHE)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def intercepts(family, alphas, n_moments, digits, cache_dir, out):
    """Sweep y-intercepts over alpha: alpha, intercept (error rows kept)."""
    fam = _family(family)
    als = _parse_alphas(alphas)
    rows = rec_mod.intercept_sweep(
        fam, als, n_moments, digits=digits, cache_dir=cache_dir
    )
    with _open_out(out) as fh:
        fh.write("alpha,intercept\n")
        for alpha, val, err in rows:
            fh.write(f"{alpha},{_decimal(val) if err is None else 'ERROR: ' + err}\n")


@main.command()
@click.option("--family", required=True)
@click.option("--alpha", required=True)
@click.option("--n-moments", type=int, default=500, show_default=True)
@click.option("--digits", type=int, default=300, show_default=True)
@click.option("--cache-dir", type=click.Path(path_type=Path), default=DEFAULT_CACHE)
def median(family, alpha, n_moments, digits, cache_dir):
    """Median of the reconstructed density."""
    fam = _family(family)
    al = _parse_alpha(alpha)
    seq = moments_mod.moment_table(fam, al, n_moments, cache_dir=cache_dir)
    exp = rec_mod.legendre_coefficients(seq, n_moments)
    m = rec_mod.median(rec_mod.DensityEstimate(exp, digits=digits))
    click.echo(_decimal(m))


@main.command()
@click.option("--alpha", required=True)
@click.option("--epsilon", default="1e-30", show_default=True)
def sepprob(alpha, epsilon):
    """Separability probability P(alpha) by the exact convergent series."""
    al = _parse_alpha(alpha)
    eps = parse_rational(epsilon)
    state = sepseries.separability_probability(al, eps)
    click.echo(f"partial_sum_exact,{format_rational(state.partial_sum)}")
    click.echo(f"partial_sum_decimal,{_decimal(state.partial_sum, 50)}")
    click.echo(f"terms_used,{state.terms_used}")
    click.echo(f"tail_bound,{_decimal(state.tail_bound, 10)}")


@main.command("rebit-density")
@click.option("--grid", type=int, default=1001, show_default=True)
@click.option("--digits", type=int, default=50, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None)
def rebit_density_cmd(grid, digits, out):
    """Closed-form two-rebit density on a grid: y, f."""
    a, b = rebit_mod.Y_MIN, rebit_mod.Y_MAX
    with _open_out(out) as fh:
        fh.write("y,f\n")
        with mpmath.workdps(digits + 10):
            lo = mpmath.mpf(a.numerator) / mpmath.mpf(a.denominator)
            hi = mpmath.mpf(b.numerator) / mpmath.mpf(b.denominator)
            for i in range(grid):
                y = lo + (hi - lo) * i / (grid - 1) if grid > 1 else lo
                fh.write(
                    f"{_decimal(y)},{_decimal(rebit_mod.rebit_density(y, digits))}\n"
                )


@main.command()
@click.option("--family", required=True)
@click.option("--field", "field_tag", required=True, type=click.Choice(["real", "complex"]))
@click.option("--n", type=int, required=True)
@click.option("--samples", type=int, default=1_000_000, show_default=True)
@click.option("--seed", type=int, default=42, show_default=True)
def mc(family, field_tag, n, samples, seed):
    """Monte Carlo moment estimate with exact reference and z-score."""
    fam = _family(family)
    est = mc_mod.estimate_moment(fam, field_tag, n, samples, seed)
    al = HalfAlpha(1 if field_tag == "real" else 2)
    if fam is Family.BALANCED:
        exact = moments_mod.balanced_moment(al, n)
    else:
        exact = moments_mod.unbalanced_moment(al, n)
    z = (est.mean - float(exact)) / est.standard_error if est.standard_error else 0.0
    click.echo(f"mean,{est.mean!r}")
    click.echo(f"standard_error,{est.standard_error!r}")
    click.echo(f"exact,{format_rational(exact)}")
    click.echo(f"exact_decimal,{_decimal(exact)}")
    click.echo(f"z_score,{z:.4f}")


@main.command()
@click.argument("action", type=click.Choice(["list", "clear", "verify"]))
@click.option("--cache-dir", type=click.Path(path_type=Path), default=DEFAULT_CACHE)
def cache(action, cache_dir):
    """Manage the moment cache: list, clear, or verify entries."""
    cache_dir = Path(cache_dir)
    files = sorted(cache_dir.glob("moments-*.json")) if cache_dir.exists() else []
    if action == "list":
        for f in files:
            seq = moments_mod.load_cache(f)
            click.echo(f"{seq.family.value},{seq.two_alpha},{seq.max_order},{f.name}")
        return
    if action == "clear":
        for f in files:
            f.unlink()
        click.echo(f"removed {len(files)} cache file(s)")
        return
    # verify: re-derive 3 random entries per table, compare exactly
    bad = []
    for f in files:
        try:
            seq = moments_mod.load_cache(f)
            al = HalfAlpha(seq.two_alpha)
            fn = moments_mod._moment_fn(seq.family, al)
            picks = random.Random(0).sample(
                range(len(seq.values)), min(3, len(seq.values))
            )
            for n in picks:
                if fn(n) != seq.values[n]:
                    bad.append((f, f"moment n={n} mismatch"))
                    break
        except Exception as exc:
            bad.append((f, f"{type(exc).__name__}: {exc}"))
    if bad:
        for f, why in bad:
            click.echo(f"CORRUPT {f}: {why}", err=True)
        sys.exit(1)
    click.echo(f"verified {len(files)} cache file(s): ok")


if __name__ == "__main__":
    main()
