"""Truncated Laurent series in one variable with tracked precision.

``Laurent(lo, c, prec)`` stands for ``sum_j c[j] t^(lo+j) + O(t^prec)``;
``prec=None`` marks an exact Laurent polynomial.  Products propagate
precision the usual way, so a coefficient is only ever read when it is
actually determined.
"""
from __future__ import annotations

from .exactnum import RatFunc, laurent_at, pole_order

__all__ = ["Laurent", "LaurentRing", "PrecisionError"]


class PrecisionError(ArithmeticError):
    pass


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentRing:
    def __init__(self, base, var: str = "t"):
        self.base = base
        self.var = var
        self.zero = Laurent(self, 0, (), None)
        self.one = Laurent(self, 0, (base.one,), None)

    def coerce(self, x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        return Laurent(self, 0, (self.base.coerce(x),), None)

    def monomial(self, a, k: int) -> "Laurent":
        return Laurent(self, k, (self.base.coerce(a),), None)

    def from_ratfunc(self, f: RatFunc, prec: int) -> "Laurent":
        """Expansion of ``f`` at 0, known for degrees ``< prec``."""
        lo = -pole_order(f, 0)
        if prec <= lo:
            return Laurent(self, prec, (), prec)
        co = laurent_at(f, 0, lo, prec - 1)
        return Laurent(self, lo, tuple(co[k] for k in range(lo, prec)), prec)

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and other.base == self.base and other.var == self.var

    def __hash__(self):
        return hash(("Laurent", self.var, self.base))

    def __repr__(self):
        return f"{self.base!r}(({self.var}))"


class Laurent:
    __slots__ = ("ring", "lo", "c", "prec")

    def __init__(self, ring: LaurentRing, lo: int, c, prec):
        c = list(c)
        if prec is not None:
            c = c[: max(0, prec - lo)]
        # normalise: strip zeros on both ends
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        c = c[i:]
        lo += i
        while c and c[-1] == 0:
            c.pop()
        if not c:
            lo = prec if prec is not None else 0
        self.ring, self.lo, self.c, self.prec = ring, lo, tuple(c), prec

    @property
    def valuation(self):
        """Lowest degree with a nonzero coefficient (``prec`` for an O-term)."""
        return self.lo

    @property
    def hi(self) -> int:
        return self.lo + len(self.c) - 1

    def coeff(self, k: int):
        if self.prec is not None and k >= self.prec:
            raise PrecisionError(f"coefficient t^{k} not determined (precision {self.prec})")
        j = k - self.lo
        if 0 <= j < len(self.c):
            return self.c[j]
        return self.ring.base.zero

    def principal_part(self) -> dict:
        return {k: self.coeff(k) for k in range(self.lo, 0) if self.coeff(k) != 0}

    def _lift(self, other) -> "Laurent":
        return self.ring.coerce(other)

    def __add__(self, other):
        o = self._lift(other)
        prec = _min_prec(self.prec, o.prec)
        if not self.c:
            return Laurent(self.ring, o.lo, o.c, prec)
        if not o.c:
            return Laurent(self.ring, self.lo, self.c, prec)
        lo = min(self.lo, o.lo)
        hi = max(self.hi, o.hi)
        zero = self.ring.base.zero
        r = [zero] * (hi - lo + 1)
        for j, a in enumerate(self.c):
            r[self.lo - lo + j] = a
        for j, a in enumerate(o.c):
            r[o.lo - lo + j] = r[o.lo - lo + j] + a
        return Laurent(self.ring, lo, r, prec)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.ring, self.lo, [-a for a in self.c], self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            s = self.ring.base.coerce(other)
            return Laurent(self.ring, self.lo, [a * s for a in self.c], self.prec)
        a, b = self, other
        pa = None if a.prec is None else a.prec + b.lo
        pb = None if b.prec is None else b.prec + a.lo
        prec = _min_prec(pa, pb)
        if not a.c or not b.c:
            return Laurent(self.ring, 0, (), prec)
        zero = self.ring.base.zero
        r = [zero] * (len(a.c) + len(b.c) - 1)
        for i, x in enumerate(a.c):
            if x == 0:
                continue
            for j, y in enumerate(b.c):
                r[i + j] = r[i + j] + x * y
        return Laurent(self.ring, a.lo + b.lo, r, prec)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, Laurent):
            raise TypeError("Laurent division is not supported")
        s = self.ring.base.coerce(other)
        return Laurent(self.ring, self.lo, [a / s for a in self.c], self.prec)

    def shift(self, k: int) -> "Laurent":
        """Multiply by ``t^k``."""
        return Laurent(self.ring, self.lo + k, self.c,
                       None if self.prec is None else self.prec + k)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return (self.lo, self.c, self.prec) == (other.lo, other.c, other.prec)
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        # strict: a truncated series never equals an exact scalar
        return self == o

    def __hash__(self):
        return hash((self.lo, self.c, self.prec))

    def __repr__(self):
        v = self.ring.var
        terms = [f"({a})*{v}^{self.lo + j}" for j, a in enumerate(self.c) if a != 0]
        s = " + ".join(terms) or "0"
        if self.prec is not None:
            s += f" + O({v}^{self.prec})"
        return s
