"""Behaviour at alpha = 0 of sum_i Res_{z=alpha_i} z^m / s_n'(z)^(d+1).

On isotropic rays the sum is n^-(d+1) sum_j alpha_j^e with e = m - (n-1)(d+1);
it has a pole exactly when e < 0 and n | e. The table checks that prediction
against the residue sum on isotropic and rational rays.
"""
from qmirror.equivariant import (default_directions, isotropic_directions, isotropic_power_sum,
                                 residue_power_sum)


def behaviour(v):
    if v.is_zero():
        return "0"
    k = v.num.valuation() - v.den.valuation()
    if k < 0:
        return f"pole {-k}"
    return "O(eps)" if k > 0 else "const"


def main():
    print(f"{'n':>2} {'m':>2} {'d':>2} {'e':>4}  {'predicted':<10} {'isotropic':<22} rational")
    for n in (3, 4, 5):
        for d in range(3):
            for m in range(3):
                e, lim = isotropic_power_sum(n, m, d)
                pred = "pole" if lim is None else str(lim)
                iso = ", ".join(behaviour(residue_power_sum(dr, m, d)) for dr in isotropic_directions(n))
                rat = ", ".join(behaviour(residue_power_sum(dr, m, d)) for dr in default_directions(n))
                print(f"{n:>2} {m:>2} {d:>2} {e:>4}  {pred:<10} {iso:<22} {rat}")


if __name__ == "__main__":
    main()
