from gmpy2 import mpq
from hypothesis import strategies as st

from qmirror.exactnum import QQ, Poly, RationalFunctionField

Z = RationalFunctionField(QQ, "z")


@st.composite
def rationals(draw, lo=-20, hi=20, maxden=9):
    return mpq(draw(st.integers(lo, hi)), draw(st.integers(1, maxden)))


@st.composite
def polys(draw, max_deg=4, nonzero=False):
    c = draw(st.lists(rationals(), min_size=1, max_size=max_deg + 1))
    p = Poly(c)
    if nonzero and p.is_zero():
        p = Poly([1])
    return p


@st.composite
def ratfuncs(draw, max_deg=4):
    return Z(draw(polys(max_deg)), draw(polys(max_deg, nonzero=True)))


@st.composite
def ratfuncs_with_poles(draw):
    """``num / prod (z - r_i)^k_i`` with an explicit pole set."""
    roots = draw(st.lists(rationals(-6, 6, 3), min_size=1, max_size=3, unique=True))
    den = Poly([1])
    for r in roots:
        den = den * Poly([-r, 1]) ** draw(st.integers(1, 3))
    num = draw(polys(den.degree + 2, nonzero=True))
    return Z(num, den), roots
