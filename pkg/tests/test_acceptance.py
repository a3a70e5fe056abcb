"""Acceptance battery: one test per criterion, all exact.

Each test records a verdict line in ``conftest.ACCEPTANCE``; the lines are
printed in the terminal summary whether or not the test passed.
"""
import subprocess
import sys
import time

from gmpy2 import mpq

import conftest
from qmirror.equivariant import (b_block_direct, default_directions, directional_limit,
                                 functional_residual, isotropic_directions, isotropic_power_sum,
                                 lemma_good0_check, lemma_goodprime0_check, phi_expansion)
from qmirror.hypergeom import (I_series, L_mu_series, ModelParams, check_M_shift,
                               check_P_closure)
from qmirror.mirror import (A_series, G10_series, a_sum_alpha0, a_sum_residue, b_block_closed,
                            check_good2, main2_rhs)
from qmirror.suites import good0_generators, idot0_oracle, idot_q1_taylor, residue_theorem_check

QUINTIC = ModelParams(5, (5,), 3)
SEXTIC33 = ModelParams(6, (3, 3), 3)


def record(k, ok, text):
    conftest.ACCEPTANCE[k] = (ok, text)
    assert ok, text


def test_criterion_1_functional_residual():
    t0 = time.perf_counter()
    bad = []
    models = [(2, (2,)), (3, (3,)), (4, (2, 2)), (5, (5,))]
    for n, a in models:
        P = ModelParams(n, a, 4)
        for d in default_directions(n):
            for i in range(n):
                if not functional_residual(P, d, i).is_zero():
                    bad.append(f"{P.label()} {d.name} i={i}")
    dt = time.perf_counter() - t0
    record(1, not bad and dt < 10,
           f"residual zero for {len(models)} models x 2 directions, N=4, {dt:.2f}s" + (f"; bad: {bad}" if bad else ""))


def test_criterion_2_hypergeometric_layer():
    msgs = []
    Q4 = ModelParams(5, (5,), 4)
    ok = I_series(Q4, "dot", 0) == idot0_oracle(Q4)
    msgs.append(f"I-dot_0 d<=4 {'ok' if ok else 'MISMATCH'}")
    for s, want in ((1, 770), (2, 1345)):
        got, oracle = I_series(QUINTIC, "dot", s)[1], idot_q1_taylor(QUINTIC, s)
        good = got == oracle == want
        ok &= good
        msgs.append(f"I-dot_{s} q^1 = {got} (Taylor oracle {oracle})")
    models = [QUINTIC, SEXTIC33, ModelParams(4, (2, 2), 3), ModelParams(3, (3,), 3),
              ModelParams(6, (2, 4), 3)]
    for P in models:
        for r in (check_M_shift(P, 3), check_P_closure(P, P.n + P.ell)):
            ok &= r.ok
            if not r.ok:
                msgs.append(f"{r.name}: {r.detail}")
    msgs.append(f"M-shift p<=3 and P-closure on {len(models)} models")
    record(2, ok, "; ".join(msgs))


def test_criterion_3_residue_layer():
    parts, failures = [], []
    r = residue_theorem_check(100, 0)
    if not r.ok:
        failures.append(r.detail)
    parts.append(r.detail)
    count = 0
    for n in (3, 4, 5):
        iso = isotropic_directions(n)
        for m in range(3):
            for f in good0_generators(n):
                count += 1
                c = lemma_good0_check(n, iso, f, m)
                if not c.ok:
                    failures.append(c.name)
        for d in range(3):
            for m in range(3):
                if m == (n - 1) * (d + 1):
                    continue
                count += 1
                c = lemma_goodprime0_check(n, iso, m, d)
                if not c.ok:
                    e, _ = isotropic_power_sum(n, m, d)
                    failures.append(f"power sum n={n} m={m} d={d} has a pole of order {-e} at alpha=0")
    c1 = lemma_good0_check(3, default_directions(3), [(1, 0, 2, None)], 0, expect=1)
    c2 = lemma_goodprime0_check(3, default_directions(3), 2, 0, control=True)
    if not (c1.ok and c2.ok):
        failures.append("control cases")
    parts.append(f"{count} battery cases, controls nonzero={c1.ok and c2.ok}")
    record(3, not failures, "; ".join(parts) + (f"; {len(failures)} failing: " + "; ".join(failures)
                                                 if failures else ""))


def test_criterion_4_principal_part_and_phi0():
    bad = []
    for P in (QUINTIC, SEXTIC33):
        L, _ = L_mu_series(P)
        target = L.pow_rational(mpq(P.ell + 1, 2))
        iso = isotropic_directions(P.n)
        for d in default_directions(P.n) + iso:
            for i in range(P.n):
                try:
                    phi_expansion(P, d, i, 1)
                except ArithmeticError as exc:
                    bad.append(f"{P.label()} {d.name} i={i}: {exc}")
        for i in range(P.n):
            if directional_limit([phi_expansion(P, d, i, 0)[0] for d in iso]) != target:
                bad.append(f"{P.label()} Phi0 limit i={i}")
    record(4, not bad, "principal part zero on 4 directions, Phi0 -> L^((l+1)/2) on 2 isotropic rays,"
                       " quintic and (6,(3,3)), N=3" + (f"; bad: {bad}" if bad else ""))


def test_criterion_5_double_residue():
    msgs, ok = [], True
    for P in (QUINTIC, SEXTIC33):
        t0 = time.perf_counter()
        for alpha in (1, 2):
            r = check_good2(P, alpha)
            ok &= r.ok
            if not r.ok:
                msgs.append(f"{r.name}: {r.detail}")
        dt = time.perf_counter() - t0
        ok &= dt < 60
        msgs.append(f"{P.label()} alpha=1,2 in {dt:.2f}s")
    record(5, ok, "; ".join(msgs))


def test_criterion_6_b_block_dual_route():
    dirs = isotropic_directions(5)
    direct, closed = b_block_direct(QUINTIC, dirs), b_block_closed(QUINTIC)
    record(6, direct == closed, f"quintic N=3 on {[d.name for d in dirs]}: direct q^1 = {direct[1]},"
                                f" closed q^1 = {closed[1]}")


def test_criterion_7_end_to_end():
    G = G10_series(QUINTIC)
    rhs = main2_rhs(QUINTIC, "residue", "direct")
    closed = main2_rhs(QUINTIC)
    ok = G.q_ddq() == rhs == closed
    A_residue = a_sum_residue(QUINTIC)
    ok &= A_series(QUINTIC)[1] == 0 and A_residue[1] == 0 and a_sum_alpha0(QUINTIC) == A_residue
    want = mpq(-4375, 12)
    ok &= G[1] == want and rhs[1] == want
    record(7, ok, f"q dG/dq = residue/direct assembly to N=3; A q^1 = {A_series(QUINTIC)[1]};"
                  f" G q^1 = {G[1]} (closed), {rhs[1]} (pipeline)")


def test_criterion_8_cli_determinism():
    cmd = [sys.executable, "-m", "qmirror", "verify", "--suite", "all", "--n", "5", "--a", "5",
           "--order", "3", "--seed", "0"]
    runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
    codes = [r.returncode for r in runs]
    same = runs[0].stdout == runs[1].stdout
    record(8, same and codes == [0, 0],
           f"exit codes {codes}, byte-identical={same}, {len(runs[0].stdout)} bytes")
