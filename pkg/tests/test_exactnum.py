from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qmirror.exactnum import (QQ, CyclotomicField, Poly, RationalFunctionField, format_rational,
                              laurent_at, pole_order, poly_gcd, residue_at, residue_at_infinity,
                              to_rational)

from strategies import Z, polys, ratfuncs, ratfuncs_with_poles, rationals

z = Z.gen()


def test_to_rational_and_format():
    assert to_rational("6/4") == mpq(3, 2)
    assert to_rational(Fraction(-2, 6)) == mpq(-1, 3)
    assert format_rational(mpq(-6, 4)) == "-3/2"
    assert format_rational(mpq(8, 4)) == "2"
    with pytest.raises(ZeroDivisionError):
        to_rational("1/0")
    with pytest.raises(TypeError):
        to_rational(0.5)


# ---- rational function arithmetic -------------------------------------------

def test_common_denominator():
    f = 1 / (z - 1) + 1 / (z + 1)
    assert f == Z([0, 2], [-1, 0, 1])


def test_gcd_cancellation():
    f = Z([-1, 0, 1], [-1, 1])
    assert f == z + 1
    assert f.den == Poly([1])


def test_inverse_law():
    f = Z([2, 3], [1, 0, 1])
    assert f * (1 / f) == 1


def test_division_by_zero_function():
    with pytest.raises(ZeroDivisionError):
        z / Z.zero


@given(ratfuncs(), ratfuncs())
def test_canonical_form(a, b):
    assert (a + b) - b == a
    assert a.den.lc == 1
    assert poly_gcd(a.num, a.den).degree == 0 or a.num.is_zero()


@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_field_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not b.is_zero():
        assert (a / b) * b == a


@given(polys(), polys(nonzero=True))
def test_poly_divmod(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(ratfuncs(), rationals())
def test_taylor_shift_matches_evaluation(f, p):
    if not f.is_regular_at(p):
        return
    assert f.num.shift(p)(0) == f.num(p)


# ---- Laurent data and residues ----------------------------------------------

def test_laurent_examples():
    h = Z.gen()
    assert laurent_at((1 + h) / h ** 2, 0, -2, 0) == {-2: 1, -1: 1, 0: 0}
    assert laurent_at(1 / (z - 1), 0, -1, 1) == {-1: 0, 0: -1, 1: -1}
    assert laurent_at(z / (z - 1) ** 2, 1, -2, -1) == {-2: 1, -1: 1}


def test_residue_examples():
    f = 1 / (z * (z + 1))
    assert residue_at(f, 0) == 1
    assert residue_at(f, -1) == -1
    assert residue_at(1 / z ** 2, 0) == 0
    assert residue_at_infinity(1 / z) == -1
    assert residue_at_infinity(z) == 0
    assert residue_at_infinity(f) == 0


@settings(max_examples=150)
@given(ratfuncs_with_poles())
def test_global_residue_theorem(case):
    f, roots = case
    total = sum((residue_at(f, r) for r in roots), mpq(0)) + residue_at_infinity(f)
    assert total == 0


@given(ratfuncs(), rationals(-5, 5, 3), st.integers(0, 4))
def test_laurent_reassembly(f, p, width):
    k = pole_order(f, p)
    lo, hi = -k, -k + width
    co = laurent_at(f, p, lo, hi)
    t = Z([-p, 1])
    approx = sum((co[j] * t ** j for j in range(lo, hi + 1)), Z.zero)
    rest = laurent_at(f - approx, p, lo, hi)
    assert all(v == 0 for v in rest.values())


def test_residue_at_infinity_definition():
    # Res_inf f = -Res_{w=0} w^-2 f(1/w), checked on a few shapes
    W = RationalFunctionField(QQ, "w")
    w = W.gen()
    for f, g in [(1 / (z * (z + 1)), 1 / (w ** -1 * (w ** -1 + 1))),
                 (z ** 3 / (z - 2) ** 4, w ** -3 / (w ** -1 - 2) ** 4),
                 ((z + 5) / (z ** 2 + 1), (w ** -1 + 5) / (w ** -2 + 1))]:
        assert residue_at_infinity(f) == -residue_at(g / w ** 2, 0)


# ---- cyclotomic towers ------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 12])
def test_cyclotomic_roots(m):
    K = CyclotomicField(m)
    zeta = K.gen()
    assert zeta ** m == 1
    powers = [zeta ** k for k in range(m)]
    assert sum(powers, K.zero) == (1 if m == 1 else 0)
    for k in range(1, m):
        assert powers[k] != 1


def test_cyclotomic_inverse_and_tower():
    K = CyclotomicField(5)
    x = K.gen() * 3 + 2
    assert x * x.inverse() == 1
    E = RationalFunctionField(K, "eps")
    e = E.gen()
    f = (e * K.gen() + 1) / (e - K.gen())
    assert f * (1 / f) == 1
    assert (f + 1 - 1) == f


def test_residue_over_cyclotomic_field():
    K = CyclotomicField(3)
    F = RationalFunctionField(K, "z")
    t = F.gen()
    roots = [K.zeta_power(k) for k in range(3)]
    f = 1 / (t ** 3 - 1)
    total = sum((residue_at(f, r) for r in roots), K.zero) + residue_at_infinity(f)
    assert total == 0
    assert residue_at(f, roots[0]) == mpq(1, 3)
