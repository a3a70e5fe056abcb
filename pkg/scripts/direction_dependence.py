"""Compare alpha = 0 limits of xi_i/alpha_i on rational and isotropic rays.

On rational rays the eps -> 0 constant term depends on the ray; on rays where
sigma_1 .. sigma_(n-1) vanish it equals mu(q) for every ray and every i.
"""
import argparse

from qmirror.equivariant import (DirectionError, default_directions, directional_limit,
                                 isotropic_directions, xi_over_alpha)
from qmirror.exactnum import format_rational
from qmirror.hypergeom import L_mu_series, ModelParams


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--order", type=int, default=2)
    args = ap.parse_args()
    P = ModelParams(args.n, (args.n,), args.order)
    _, mu = L_mu_series(P)
    print("mu:", " ".join(format_rational(c) for c in mu))
    for d in default_directions(P.n) + isotropic_directions(P.n):
        for i in range(P.n):
            try:
                lim = directional_limit(xi_over_alpha(P, d, i))
                text = " ".join(format_rational(c) for c in lim)
            except (DirectionError, ValueError) as exc:
                text = f"no rational limit ({exc})"
            print(f"{d.name:<40} i={i}: {text}")


if __name__ == "__main__":
    main()
