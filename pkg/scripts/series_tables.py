"""Print A(q), G_{1,0}(q) and the two B-block readings for a few models.

usage: python scripts/series_tables.py [--order N]
"""
import argparse

from qmirror.exactnum import format_rational
from qmirror.hypergeom import ModelParams
from qmirror.mirror import A_series, G10_series, b_block_closed, b_block_literal

MODELS = [(5, (5,)), (6, (3, 3)), (6, (2, 4)), (4, (2, 2)), (3, (3,)), (2, (2,))]


def row(label, S):
    return f"  {label:<10}" + "  ".join(format_rational(c) for c in S)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--order", type=int, default=3)
    args = ap.parse_args()
    for n, a in MODELS:
        P = ModelParams(n, a, args.order)
        print(P.label())
        print(row("A", A_series(P)))
        print(row("G10", G10_series(P)))
        print(row("B", b_block_closed(P)))
        if len(a) > 1:
            print(row("B literal", b_block_literal(P)))


if __name__ == "__main__":
    main()
