"""Print the headline exact quantities and their Monte Carlo cross-checks.

Usage:

    python scripts/exact_values.py [--mc-samples 200000]
"""

import argparse

from gmpy2 import mpq

from hsdet.mc import estimate_moment, separable_fraction
from hsdet.moments import Family, balanced_moment, rho_det_moment, unbalanced_moment
from hsdet.rational import HalfAlpha, format_rational
from hsdet.sepseries import f_term, separability_probability


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--mc-samples", type=int, default=200_000)
    parser.add_argument("--epsilon", default="1e-30")
    args = parser.parse_args()

    eps = mpq(1, 10**30) if args.epsilon == "1e-30" else mpq(args.epsilon)

    print("== separability probabilities ==")
    for ta in (1, 2, 4):
        state = separability_probability(HalfAlpha(ta), eps)
        print(
            f"P(alpha={HalfAlpha(ta)})  terms={state.terms_used}  "
            f"partial_sum={float(state.partial_sum):.15f}  "
            f"tail_bound={float(state.tail_bound):.3e}"
        )
    print(f"telescoping f(1) = {format_rational(f_term(1))} "
          f"(= 8/33 - 26/323: {f_term(1) == mpq(8, 33) - mpq(26, 323)})")

    print("\n== first moments, each family ==")
    for ta in (1, 2, 4):
        a = HalfAlpha(ta)
        print(
            f"alpha={a}:  balanced n=1 {format_rational(balanced_moment(a, 1))}"
            f"   unbalanced n=1 {format_rational(unbalanced_moment(a, 1))}"
        )
    print(f"det(rho) k=1 (alpha=1/2 only): {format_rational(rho_det_moment(1))}")

    print("\n== Monte Carlo cross-checks ==")
    for field, ta in (("complex", 2), ("real", 1)):
        est = estimate_moment(Family.UNBALANCED, field, 1, args.mc_samples, seed=42)
        exact = float(unbalanced_moment(HalfAlpha(ta), 1))
        z = (est.mean - exact) / est.standard_error
        print(f"{field}: mean={est.mean:.6e}  exact={exact:.6e}  z={z:+.2f}")
    est = separable_fraction("complex", args.mc_samples, seed=42)
    z = (est.mean - 8 / 33) / est.standard_error
    print(f"PPT fraction: {est.mean:.6f}  vs 8/33={8 / 33:.6f}  z={z:+.2f}")


if __name__ == "__main__":
    main()
