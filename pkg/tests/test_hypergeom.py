from math import factorial

import pytest
import sympy as sp
from gmpy2 import mpq

from qmirror.exactnum import Poly
from qmirror.hypergeom import (W, ClassPError, I_series, L_mu_series, M_power, ModelParams,
                               at_w0, check_M_shift, check_P_closure, frakD_F, in_class_P, op_D,
                               op_M, series_F, series_Fddot, series_Fdot)
from qmirror.qseries import QSeries, binomial_series

QUINTIC = ModelParams(5, (5,), 4)
MODELS = [((3,), 3), ((2, 2), 4), ((5,), 5), ((2, 4), 6), ((3, 3), 6)]
w = W.gen()


def test_model_validation():
    with pytest.raises(ValueError):
        ModelParams(5, (2, 2))
    with pytest.raises(ValueError):
        ModelParams(3, ())
    with pytest.raises(ValueError):
        ModelParams(3, (0, 3))
    with pytest.raises(ValueError):
        ModelParams(3, (3,), -1)
    assert ModelParams(6, (2, 4)).aa == 4 * 256


def test_fdot_examples():
    assert series_Fdot(QUINTIC)[1](1) == mpq(30240, 31)
    assert at_w0(series_Fdot(QUINTIC)) == QSeries([1, 120, 113400, 168168000, 305540235000])
    P2 = ModelParams(2, (2,), 3)
    assert at_w0(series_Fdot(P2)) == QSeries([1, -4], 3).pow_rational(mpq(-1, 2))


def test_plain_and_dot_agree_at_zero():
    for a, n in MODELS:
        P = ModelParams(n, a, 3)
        assert at_w0(series_F(P)) == at_w0(series_Fdot(P))


def test_class_P_membership():
    for a, n in MODELS:
        P = ModelParams(n, a, 3)
        for H in (series_F(P), series_Fdot(P), series_Fddot(P)):
            assert in_class_P(H)


def test_op_D_examples():
    one = QSeries.const(1, 2, W)
    assert op_D(one) == one
    assert op_D(QSeries([1, w], 2, W)) == QSeries([1, 1 + w], 2, W)
    D = op_D(QSeries([0, 1], 2, W))
    assert D[1] == 1 + 1 / w
    assert not D[1].is_regular_at(0)


def test_op_M_examples():
    one = QSeries.const(1, 2, W)
    assert op_M(one) == one
    assert op_M(QSeries([1, w], 2, W)) == QSeries([1, 1 + w], 2, W)
    with pytest.raises(ClassPError):
        op_M(QSeries([1, 1 / w], 2, W))
    with pytest.raises(ClassPError):
        op_M(QSeries([2, w], 2, W))


def test_idot0_quintic_direct_summation():
    oracle = [mpq(factorial(5 * d), factorial(d) ** 5) for d in range(5)]
    assert list(I_series(QUINTIC, "dot", 0)) == oracle


def _sympy_q1_oracle(n, a, s):
    """q^1 coefficient of I-dot_s from a sympy Taylor expansion of Fdot_1."""
    x = sp.symbols("x")
    num = sp.prod([a_k * x + r for a_k in a for r in range(1, a_k + 1)])
    g = num / ((x + 1) ** n - x ** n)
    for _ in range(s):
        g = sp.cancel((g - g.subs(x, 0)) * (x + 1) / x)
    return sp.Rational(g.subs(x, 0))


def test_idot_q1_against_sympy():
    assert I_series(QUINTIC, "dot", 1)[1] == 770
    assert I_series(QUINTIC, "dot", 2)[1] == 1345
    for a, n in MODELS:
        P = ModelParams(n, a, 1)
        for s in range(1, 4):
            want = _sympy_q1_oracle(n, a, s)
            assert I_series(P, "dot", s)[1] == mpq(int(want.p), int(want.q))


def test_quintic_fdot1_taylor_data():
    # 120 + 770 w + 575 w^2 + ...
    x = sp.symbols("x")
    f = sp.prod([5 * x + r for r in range(1, 6)]) / ((x + 1) ** 5 - x ** 5)
    assert sp.series(f, x, 0, 3).removeO() == 120 + 770 * x + 575 * x ** 2


@pytest.mark.parametrize("a,n", MODELS)
def test_M_shift(a, n):
    r = check_M_shift(ModelParams(n, a, 3), 3)
    assert r.ok, r.detail


def test_M_shift_quintic_order4():
    assert check_M_shift(QUINTIC, 1).ok


@pytest.mark.parametrize("a,n", MODELS)
def test_P_closure(a, n):
    P = ModelParams(n, a, 3)
    assert check_P_closure(P, n + len(a)).ok
    for s in range(n + len(a)):
        for kind in ("dot", "ddot"):
            I = I_series(P, kind, s)
            assert I[0] == 1


def test_I_ddot_shift_relation():
    for a, n in MODELS:
        P = ModelParams(n, a, 3)
        for p in range(3):
            assert I_series(P, "ddot", p + len(a)) == I_series(P, "dot", p)


def test_L_mu():
    L, mu = L_mu_series(ModelParams(5, (5,), 2))
    assert L == QSeries([1, 625, 1171875])
    assert mu == QSeries([0, 625, mpq(1171875, 2)])
    L2, _ = L_mu_series(ModelParams(2, (2,), 3))
    assert L2 == QSeries([1, 2, 6, 20])
    for a, n in MODELS:
        P = ModelParams(n, a, 4)
        L, mu = L_mu_series(P)
        assert mu.q_ddq() == L - 1
        assert (L ** n) * QSeries([1, -P.aa], 4) == QSeries.const(1, 4)
        assert L == binomial_series(-P.aa, mpq(-1, n), 4)


def test_frakD():
    P = ModelParams(5, (5,), 3)
    for kind in ("dot", "ddot"):
        assert at_w0(frakD_F(P, kind, 0)) == QSeries.const(1, 3)
        for s in range(4):
            lhs = frakD_F(P, kind, s)
            rhs = M_power(P, kind, s) * I_series(P, kind, s).inverse().map(W.coerce, W)
            assert lhs == rhs
    assert at_w0(frakD_F(P, "dot", 1)) == QSeries.const(1, 3)


def test_frakD_times_I_product_is_regular():
    P = ModelParams(5, (5,), 3)
    for s in range(4):
        prod_I = QSeries.const(1, 3)
        for t in range(s + 1):
            prod_I = prod_I * I_series(P, "dot", t)
        H = frakD_F(P, "dot", s) * prod_I.map(W.coerce, W)
        assert all(c.is_regular_at(0) for c in H)


def test_fddot_numerator_starts_at_zero():
    # Fddot_d has the factor a_k w (r = 0), so it vanishes at w = 0 for d >= 1
    P = ModelParams(5, (5,), 2)
    assert series_Fddot(P)[1].num.coeff(0) == 0
    num = Poly([0, 5]) * Poly([1, 5]) * Poly([2, 5]) * Poly([3, 5]) * Poly([4, 5])
    assert series_Fddot(P)[1] == W(num, Poly([1, 1]) ** 5 - Poly([0, 1]) ** 5)
