"""Exact arithmetic: rationals, dense polynomials and reduced rational functions.

Polynomials and rational functions are generic over a *field object* that
knows how to coerce integers and rationals into its elements.  Towers such as
``Q(zeta)(eps)(hbar)`` are built by nesting :class:`RationalFunctionField`
instances; nothing below is specialised to a particular level of the tower.

All values are immutable.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq, mpz

__all__ = [
    "QQ", "RationalField", "CyclotomicField", "Cyc", "Poly", "RatFunc",
    "RationalFunctionField", "poly_gcd", "poly_xgcd", "laurent_quotient",
    "laurent_at", "residue_at", "residue_at_infinity", "to_rational",
    "format_rational",
]


def to_rational(x) -> mpq:
    """Coerce an int, Fraction, mpq or ``"p/q"`` string to ``mpq``."""
    if isinstance(x, type(mpq())):
        return x
    if isinstance(x, (int, type(mpz()))):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, d = s.split("/")
            if int(d) == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return mpq(int(p), int(d))
        return mpq(int(s))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x) -> str:
    """``"p/q"`` in lowest terms with ``q > 0``; ``"p"`` when ``q == 1``."""
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class RationalField:
    """The field Q, elements represented by ``gmpy2.mpq``."""

    zero = mpq(0)
    one = mpq(1)

    def coerce(self, x):
        return to_rational(x)

    def is_element(self, x) -> bool:
        return isinstance(x, type(mpq()))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# ---------------------------------------------------------------------------
# Dense univariate polynomials
# ---------------------------------------------------------------------------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


class Poly:
    """Dense polynomial ``sum c[k] x^k`` over ``field``; trailing zeros trimmed."""

    __slots__ = ("c", "field")

    def __init__(self, coeffs, field=QQ):
        co = field.coerce
        self.c = tuple(_trim([co(a) for a in coeffs]))
        self.field = field

    @classmethod
    def _raw(cls, c: list, field) -> "Poly":
        p = object.__new__(cls)
        p.c = tuple(_trim(c))
        p.field = field
        return p

    @classmethod
    def gen(cls, field=QQ) -> "Poly":
        return cls._raw([field.zero, field.one], field)

    @classmethod
    def const(cls, a, field=QQ) -> "Poly":
        return cls._raw([field.coerce(a)], field)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self):
        return self.c[-1] if self.c else self.field.zero

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 1

    def coeff(self, k: int):
        return self.c[k] if 0 <= k < len(self.c) else self.field.zero

    def valuation(self) -> int:
        for k, a in enumerate(self.c):
            if a != 0:
                return k
        raise ValueError("valuation of the zero polynomial")

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise TypeError(f"field mismatch: {self.field} vs {other.field}")
            return other
        return Poly._raw([self.field.coerce(other)], self.field)

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        r = list(a)
        for k, x in enumerate(b):
            r[k] = r[k] + x
        return Poly._raw(r, self.field)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw([-a for a in self.c], self.field)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = self.field.coerce(other)
            return Poly._raw([a * s for a in self.c], self.field)
        o = self._lift(other)
        a, b = self.c, o.c
        if not a or not b:
            return Poly._raw([], self.field)
        r = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                r[i + j] = r[i + j] + x * y
        return Poly._raw(r, self.field)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly._raw([self.field.one], self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        d = self._lift(other)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        dc = d.c
        dd = len(dc) - 1
        inv = self.field.one / dc[-1]
        if len(r) <= dd:
            return Poly._raw([], self.field), self
        qc = [self.field.zero] * (len(r) - dd)
        for k in range(len(r) - 1, dd - 1, -1):
            t = r[k]
            if t == 0:
                continue
            t = t * inv
            qc[k - dd] = t
            for j in range(dd):
                r[k - dd + j] = r[k - dd + j] - t * dc[j]
            r[k] = self.field.zero
        return Poly._raw(qc, self.field), Poly._raw(r[:dd], self.field)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def scale(self, s) -> "Poly":
        return Poly._raw([a * s for a in self.c], self.field)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.c[-1]
        if lc == 1:
            return self
        inv = self.field.one / lc
        return Poly._raw([a * inv for a in self.c], self.field)

    def __call__(self, x):
        r = self.field.zero
        for a in reversed(self.c):
            r = r * x + a
        return r

    def shift(self, p) -> "Poly":
        """Coefficients of ``f(p + t)`` as a polynomial in ``t``."""
        p = self.field.coerce(p)
        if p == 0:
            return self
        c = list(self.c)
        n = len(c)
        # repeated synthetic division (Taylor shift)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                c[k] = c[k] + p * c[k + 1]
        return Poly._raw(c, self.field)

    def reverse(self, deg: int | None = None) -> "Poly":
        """``t^deg f(1/t)``; ``deg`` defaults to the degree of ``f``."""
        if deg is None:
            deg = self.degree
        if deg < self.degree:
            raise ValueError("reverse degree below polynomial degree")
        c = list(self.c) + [self.field.zero] * (deg + 1 - len(self.c))
        return Poly._raw(c[::-1], self.field)

    def derivative(self) -> "Poly":
        return Poly._raw([a * k for k, a in enumerate(self.c)][1:], self.field)

    def compose_scaled(self, s) -> "Poly":
        """``f(s x)``."""
        s = self.field.coerce(s)
        r, pw = [], self.field.one
        for a in self.c:
            r.append(a * pw)
            pw = pw * s
        return Poly._raw(r, self.field)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.c == other.c
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.c))

    def __repr__(self):
        return f"Poly({list(self.c)!r}, {self.field!r})"

    def pretty(self, var: str = "x") -> str:
        if not self.c:
            return "0"
        terms = []
        for k in range(len(self.c) - 1, -1, -1):
            a = self.c[k]
            if a == 0:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            sa = str(a)
            if mono and a == 1:
                terms.append(mono)
            elif mono and a == -1:
                terms.append("-" + mono)
            elif mono:
                terms.append(f"({sa})*{mono}" if any(ch in sa for ch in "+ ") else f"{sa}*{mono}")
            else:
                terms.append(sa)
        return " + ".join(terms).replace("+ -", "- ")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (``gcd(0, 0) = 0``)."""
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """Return ``(g, s, t)`` with ``s a + t b = g`` and ``g`` monic."""
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(1, f), Poly._raw([], f)
    t0, t1 = Poly._raw([], f), Poly.const(1, f)
    while not r1.is_zero():
        qt, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = f.one / r0.lc
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


# ---------------------------------------------------------------------------
# Cyclotomic number fields
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> tuple:
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, integer coefficients
    num = Poly([-1] + [0] * (m - 1) + [1])
    for d in range(1, m):
        if m % d == 0:
            num = num.exact_div(Poly(_cyclotomic_coeffs(d)))
    return tuple(int(a) for a in num.c)


class CyclotomicField:
    """``Q(zeta_m)`` with ``zeta_m`` a primitive m-th root of unity."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("cyclotomic order must be positive")
        self.m = m
        self.modulus = Poly(_cyclotomic_coeffs(m))
        self.degree = self.modulus.degree
        self.zero = Cyc(self, ())
        self.one = Cyc(self, (mpq(1),))

    def coerce(self, x) -> "Cyc":
        if isinstance(x, Cyc):
            if x.field != self:
                raise TypeError(f"cannot coerce {x.field} element into {self}")
            return x
        return Cyc(self, (to_rational(x),))

    def gen(self) -> "Cyc":
        return self.zeta_power(1)

    def zeta_power(self, k: int) -> "Cyc":
        k %= self.m
        return Cyc._reduce(self, [mpq(0)] * k + [mpq(1)])

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.m == self.m

    def __hash__(self):
        return hash(("Cyc", self.m))

    def __repr__(self):
        return f"QQ(zeta_{self.m})"


class Cyc:
    """Element of a cyclotomic field: polynomial in zeta reduced mod Phi_m."""

    __slots__ = ("field", "c")

    def __init__(self, field: CyclotomicField, coeffs):
        self.field = field
        self.c = tuple(_trim([to_rational(a) for a in coeffs]))

    @classmethod
    def _reduce(cls, field, c: list) -> "Cyc":
        mod = field.modulus.c
        dm = len(mod) - 1
        c = list(c)
        for k in range(len(c) - 1, dm - 1, -1):
            t = c[k]
            if t == 0:
                continue
            for j in range(dm):
                c[k - dm + j] -= t * mod[j]
            c[k] = mpq(0)
        e = object.__new__(cls)
        e.field = field
        e.c = tuple(_trim(c[:dm]))
        return e

    def _lift(self, other) -> "Cyc":
        return self.field.coerce(other)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        r = list(a)
        for k, x in enumerate(b):
            r[k] += x
        e = object.__new__(Cyc)
        e.field, e.c = self.field, tuple(_trim(r))
        return e

    __radd__ = __add__

    def __neg__(self):
        e = object.__new__(Cyc)
        e.field, e.c = self.field, tuple(-a for a in self.c)
        return e

    def __sub__(self, other):
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.c, o.c
        if not a or not b:
            return self.field.zero
        if len(b) == 1:
            s = b[0]
            e = object.__new__(Cyc)
            e.field, e.c = self.field, tuple(x * s for x in a)
            return e
        r = [mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                r[i + j] += x * y
        return Cyc._reduce(self.field, r)

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self.c:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if len(self.c) == 1:
            return Cyc(self.field, (1 / self.c[0],))
        g, s, _ = poly_xgcd(Poly(self.c), self.field.modulus)
        if g.degree != 0:
            raise ZeroDivisionError("element is not invertible")
        return Cyc._reduce(self.field, list(s.c))

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r, b = self.field.one, self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def is_rational(self) -> bool:
        return len(self.c) <= 1

    def to_rational(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0] if self.c else mpq(0)

    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.field == other.field and self.c == other.c
        try:
            return self.c == self.field.coerce(other).c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0] if self.c else mpq(0))
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        return "(" + Poly(self.c).pretty(f"z{self.field.m}") + ")"


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RationalFunctionField:
    """``base(var)``: reduced rational functions in one variable over ``base``."""

    def __init__(self, base, var: str = "x"):
        self.base = base
        self.var = var
        self.zero = RatFunc._make(Poly._raw([], base), Poly.const(1, base), self)
        self.one = RatFunc._make(Poly.const(1, base), Poly.const(1, base), self)

    def coerce(self, x) -> "RatFunc":
        if isinstance(x, RatFunc) and x.field == self:
            return x
        if isinstance(x, Poly):
            return RatFunc(x, Poly.const(1, self.base), self)
        return RatFunc._make(Poly.const(self.base.coerce(x), self.base),
                             Poly.const(1, self.base), self)

    def gen(self) -> "RatFunc":
        return RatFunc._make(Poly.gen(self.base), Poly.const(1, self.base), self)

    def __call__(self, num, den=None) -> "RatFunc":
        num = num if isinstance(num, Poly) else Poly(num, self.base)
        if den is None:
            den = Poly.const(1, self.base)
        elif not isinstance(den, Poly):
            den = Poly(den, self.base)
        return RatFunc(num, den, self)

    def __eq__(self, other):
        return (isinstance(other, RationalFunctionField)
                and other.var == self.var and other.base == self.base)

    def __hash__(self):
        return hash(("RF", self.var, self.base))

    def __repr__(self):
        return f"{self.base!r}({self.var})"


class RatFunc:
    """``num/den`` with ``den`` monic and ``gcd(num, den) = 1``."""

    __slots__ = ("num", "den", "field")

    def __init__(self, num: Poly, den: Poly, field: RationalFunctionField):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_one() and not g.is_zero():
            num, den = num.exact_div(g), den.exact_div(g)
        if num.is_zero():
            den = Poly.const(1, den.field)
        lc = den.lc
        if lc != 1:
            inv = den.field.one / lc
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den, self.field = num, den, field

    @classmethod
    def _make(cls, num, den, field) -> "RatFunc":
        r = object.__new__(cls)
        r.num, r.den, r.field = num, den, field
        return r

    def _lift(self, other) -> "RatFunc":
        return self.field.coerce(other)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if b == d:
            return RatFunc(a + c, b, self.field)
        if b.degree == 0:
            return RatFunc._make(a * d + c, d, self.field)
        if d.degree == 0:
            return RatFunc._make(a + c * b, b, self.field)
        g = poly_gcd(b, d)
        if g.degree == 0:
            return RatFunc._make(a * d + c * b, b * d, self.field)
        b1, d1 = b.exact_div(g), d.exact_div(g)
        t = a * d1 + c * b1
        g2 = poly_gcd(t, g)
        if g2.degree > 0:
            t = t.exact_div(g2)
            g = g.exact_div(g2)
        return RatFunc(t, b1 * d1 * g, self.field)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._make(-self.num, self.den, self.field)

    def __sub__(self, other):
        try:
            return self + (-self._lift(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFunc) or other.field != self.field:
            try:
                s = self.field.base.coerce(other)
            except TypeError:
                try:
                    o = self._lift(other)
                except TypeError:
                    return NotImplemented
                return self * o
            if s == 0:
                return self.field.zero
            return RatFunc._make(self.num.scale(s), self.den, self.field)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return self.field.zero
        g1 = poly_gcd(a, d) if d.degree > 0 and a.degree > 0 else None
        if g1 is not None and g1.degree > 0:
            a, d = a.exact_div(g1), d.exact_div(g1)
        g2 = poly_gcd(c, b) if b.degree > 0 and c.degree > 0 else None
        if g2 is not None and g2.degree > 0:
            c, b = c.exact_div(g2), b.exact_div(g2)
        return RatFunc._make(a * c, b * d, self.field)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        lc = self.num.lc
        inv = self.field.base.one / lc
        return RatFunc._make(self.den.scale(inv), self.num.scale(inv), self.field)

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc._make(self.num ** e, self.den ** e, self.field)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def is_regular_at(self, p) -> bool:
        return self.den(p) != 0

    def substitute_reciprocal(self, alpha, field: "RationalFunctionField | None" = None) -> "RatFunc":
        """``f(alpha / t)`` as a rational function of ``t``."""
        field = field or self.field
        a = self.field.base.coerce(alpha)
        num = self.num.compose_scaled(a)
        den = self.den.compose_scaled(a)
        dn, dd = num.degree, den.degree
        # f(alpha/t) = t^(dd-dn) * rev(num)/rev(den)
        rn, rd = num.reverse(), den.reverse()
        if dd >= dn:
            rn = rn * Poly._raw([rn.field.zero] * (dd - dn) + [rn.field.one], rn.field)
        else:
            rd = rd * Poly._raw([rd.field.zero] * (dn - dd) + [rd.field.one], rd.field)
        return RatFunc(rn, rd, field)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.field == other.field and self.num == other.num and self.den == other.den
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        v = self.field.var
        if self.den.degree == 0:
            return f"({self.num.pretty(v)})"
        return f"({self.num.pretty(v)})/({self.den.pretty(v)})"


# ---------------------------------------------------------------------------
# Laurent data and residues
# ---------------------------------------------------------------------------

def _series_quotient(num: list, den: list, terms: int, field) -> list:
    """First ``terms`` coefficients of ``num/den``; requires ``den[0] != 0``."""
    inv = field.one / den[0]
    out = []
    for k in range(terms):
        s = num[k] if k < len(num) else field.zero
        for j in range(1, min(k, len(den) - 1) + 1):
            s = s - den[j] * out[k - j]
        out.append(s * inv)
    return out


def laurent_quotient(num: Poly, den: Poly, p, lo: int, hi: int) -> dict:
    """Laurent coefficients of ``num/den`` around ``p`` on ``[lo, hi]``.

    Works by recentring (``z = p + t``) and exact series division, so the
    quotient need not be reduced.
    """
    if lo > hi:
        raise ValueError("empty Laurent window")
    field = num.field
    out = {k: field.zero for k in range(lo, hi + 1)}
    if num.is_zero():
        return out
    n_t = num.shift(p)
    d_t = den.shift(p)
    u, v = n_t.valuation(), d_t.valuation()
    order = u - v
    if order > hi:
        return out
    coeffs = _series_quotient(list(n_t.c[u:]), list(d_t.c[v:]), hi - order + 1, field)
    for j, a in enumerate(coeffs):
        k = order + j
        if k >= lo:
            out[k] = a
    return out


def laurent_at(f: RatFunc, p, lo: int, hi: int) -> dict:
    """Map ``k -> c_k`` for the expansion ``f = sum c_k (z - p)^k``, ``lo <= k <= hi``."""
    return laurent_quotient(f.num, f.den, f.field.base.coerce(p), lo, hi)


def pole_order(f: RatFunc, p) -> int:
    """Order of the pole of ``f`` at ``p`` (0 when regular)."""
    d_t = f.den.shift(f.field.base.coerce(p))
    return d_t.valuation()


def residue_at(f: RatFunc, p):
    """Residue of ``f(z) dz`` at the finite point ``p``."""
    k = pole_order(f, p)
    if k == 0:
        return f.field.base.zero
    return laurent_at(f, p, -1, -1)[-1]


def residue_at_infinity(f: RatFunc):
    """``Res_{z=inf} f = -Res_{w=0} w^-2 f(1/w)``."""
    base = f.field.base
    dn, dd = f.num.degree, f.den.degree
    if f.num.is_zero():
        return base.zero
    # w^-2 f(1/w) = w^(dd-dn-2) * rev(num)(w) / rev(den)(w), rev(den)(0) = lc != 0
    shift = dd - dn - 2
    j = -1 - shift
    if j < 0:
        return base.zero
    coeffs = _series_quotient(list(f.num.reverse().c), list(f.den.reverse().c), j + 1, base)
    return -coeffs[j]
