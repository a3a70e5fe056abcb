import pytest
import sympy as sp
from gmpy2 import mpq

from qmirror.hypergeom import L_mu_series, ModelParams, binom2
from qmirror.mirror import (H1, H2, A_series, G10_series, SeparableBiSeries, a_sum_alpha0,
                            a_sum_residue, b_block_closed, b_block_literal, b_sum_alpha0,
                            build_bbF, check_good2, double_residue, main2_rhs)
from qmirror.qseries import QSeries
from qmirror.suites import bbF_direct

QUINTIC = ModelParams(5, (5,), 3)
h1, h2 = H1.gen(), H2.gen()


def _toy(f, g, order=0):
    return SeparableBiSeries(order, ((QSeries([f], order, H1), QSeries([g], order, H2)),))


def test_double_residue_toy_cases():
    zero = QSeries.const(0, 0)
    assert double_residue(_toy(H1.one, h2), zero) == zero
    assert double_residue(_toy(H1.one, H2.one), zero) == zero


def test_double_residue_against_sympy():
    x, y = sp.symbols("x y")
    cases = [
        (lambda t: 1 / t ** 3 + 2, lambda t: 1 / t ** 2 + t),
        (lambda t: (1 + t) / t ** 4, lambda t: 3 / t),
        (lambda t: t ** 2 / (1 - t), lambda t: 1 / (t ** 3 * (1 + 2 * t))),
    ]
    for f, g in cases:
        want = sp.residue(sp.residue(f(x) * g(y) / (x * y * (x + y)), y, 0), x, 0)
        bi = _toy(f(h1), g(h2))
        got = double_residue(bi, QSeries.const(0, 0))
        assert got[0] == mpq(int(sp.Rational(want).p), int(sp.Rational(want).q))


def test_double_residue_exponential_factor_against_sympy():
    # q-expansion of e^{-m q (1/h1 + 1/h2)}: coefficient of q^1 is -m (1/h1 + 1/h2) times the rest
    x, y = sp.symbols("x y")
    f, g = (1 + x) / x ** 2, 1 / y
    m = 3
    want1 = sp.residue(sp.residue(-m * (1 / x + 1 / y) * f * g / (x * y * (x + y)), y, 0), x, 0)
    bi = SeparableBiSeries(1, ((QSeries([(1 + h1) / h1 ** 2, 0], 1, H1),
                                QSeries([1 / h2, 0], 1, H2)),))
    got = double_residue(bi, QSeries([0, m], 1))
    assert got[1] == mpq(int(sp.Rational(want1).p), int(sp.Rational(want1).q))


def test_bbF_constant_term_and_brute_force():
    bi = build_bbF(QUINTIC, 1)
    assert len(bi.terms) == QUINTIC.n
    assert bi.evaluate(0, 1, 1) == mpq(QUINTIC.n, 2)
    for d in range(3):
        for pt in ((mpq(1), mpq(1)), (mpq(3), mpq(-2, 7))):
            assert bi.evaluate(d, *pt) == bbF_direct(QUINTIC, 1, d, *pt)


@pytest.mark.parametrize("n,a", [(5, (5,)), (6, (3, 3)), (4, (2, 2))])
@pytest.mark.parametrize("alpha", [1, 2, 5])
def test_good2_identity(n, a, alpha):
    r = check_good2(ModelParams(n, a, 3), alpha)
    assert r.ok, r.detail


def test_A_series():
    A = A_series(QUINTIC)
    assert A[0] == 0 and A[1] == 0
    assert mpq(3, 4) * 625 + mpq(5, 4) * 3125 - (6 * 120 + 3 * 770 + 1 * 1345) == 0
    assert [binom2(5 - p - 1) for p in range(4)] == [6, 3, 1, 0]
    # (2,(2)): every weight vanishes and the log I-dot sum is empty
    assert A_series(ModelParams(2, (2,), 3)).is_zero()


def test_a_sum_routes_and_alpha_independence():
    assert a_sum_alpha0(QUINTIC)[1] == 0
    for alpha in (1, 2):
        assert a_sum_residue(QUINTIC, alpha) == a_sum_alpha0(QUINTIC)


def test_b_block_closed_examples():
    assert b_block_closed(QUINTIC)[1] == mpq(-4375, 12)
    assert b_block_closed(ModelParams(2, (2,), 3))[1] == mpq(-1, 6)
    # one degree: both readings of the C(n,2) scoping agree
    assert b_block_literal(QUINTIC) == b_block_closed(QUINTIC)
    P = ModelParams(6, (3, 3), 3)
    assert b_block_literal(P) != b_block_closed(P)
    _, mu = L_mu_series(P)
    assert b_block_literal(P) - b_block_closed(P) == mu * mpq(-binom2(6), 24)


def test_G10_checkpoints():
    G = G10_series(QUINTIC)
    assert G[0] == 0
    assert G[1] == mpq(-4375, 12)
    assert G.q_ddq() == main2_rhs(QUINTIC)
    assert G.q_ddq() == main2_rhs(QUINTIC, "residue", "direct")
    assert main2_rhs(QUINTIC)[1] == mpq(-4375, 12)


def test_direct_route_checkpoints():
    assert b_sum_alpha0(QUINTIC, "direct")[1] == mpq(-4375, 12)
    with pytest.raises(ValueError):
        b_sum_alpha0(QUINTIC, "other")


def test_permutation_invariance():
    P, Q = ModelParams(6, (2, 4), 3), ModelParams(6, (4, 2), 3)
    assert A_series(P) == A_series(Q)
    assert G10_series(P) == G10_series(Q)
    assert main2_rhs(P, "residue") == main2_rhs(Q, "residue")


def test_build_bbF_rejects_zero_alpha():
    with pytest.raises(ValueError):
        build_bbF(QUINTIC, 0)
