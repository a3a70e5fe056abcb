"""Wall-clock time of each verify suite over a few models and orders."""
import time

from qmirror.hypergeom import ModelParams
from qmirror.suites import SUITES, run_suite

MODELS = [(5, (5,)), (6, (3, 3)), (4, (2, 2))]


def main():
    for n, a in MODELS:
        for N in (2, 3, 4):
            P = ModelParams(n, a, N)
            cells = []
            for s in SUITES:
                t0 = time.perf_counter()
                res = run_suite(s, P)
                dt = time.perf_counter() - t0
                cells.append(f"{s}={dt:.2f}s({sum(r.ok for r in res)}/{len(res)})")
            print(P.label(), f"N={N}", " ".join(cells))


if __name__ == "__main__":
    main()
