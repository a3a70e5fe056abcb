"""Truncated power series in q over an exact coefficient ring.

A :class:`QSeries` carries a fixed truncation order ``N`` and the
coefficients ``c_0 .. c_N``.  Coefficients can be anything from
:mod:`qmirror.exactnum` (rationals, cyclotomic numbers, rational functions at
any level of a tower) or a :class:`~qmirror.laurent.LaurentPoly`; the only
requirement is exact ``+ - *``, division by integers, and ``== 0``.
"""
from __future__ import annotations

from typing import Callable

from gmpy2 import mpq

from .exactnum import QQ, to_rational

__all__ = ["QSeries", "SeriesError", "newton_solve", "binomial_series"]


class SeriesError(ArithmeticError):
    """Precondition violation for a power-series operation."""


class QSeries:
    __slots__ = ("c", "ring")

    def __init__(self, coeffs, order: int | None = None, ring=QQ):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        co = ring.coerce
        c = [co(a) for a in coeffs[: order + 1]]
        c += [ring.zero] * (order + 1 - len(c))
        self.c = tuple(c)
        self.ring = ring

    @classmethod
    def _raw(cls, c, ring) -> "QSeries":
        s = object.__new__(cls)
        s.c = tuple(c)
        s.ring = ring
        return s

    @classmethod
    def const(cls, a, order: int, ring=QQ) -> "QSeries":
        return cls([a], order, ring)

    @classmethod
    def q(cls, order: int, ring=QQ) -> "QSeries":
        """The series ``q`` itself."""
        return cls([0, 1], order, ring)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def __getitem__(self, k):
        return self.c[k]

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def _check(self, other: "QSeries"):
        if other.order != self.order:
            raise SeriesError(f"truncation order mismatch: {self.order} vs {other.order}")

    def _lift(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            self._check(other)
            return other
        return QSeries.const(other, self.order, self.ring)

    def map(self, fn: Callable, ring=None) -> "QSeries":
        """Apply ``fn`` to every coefficient."""
        return QSeries._raw([fn(a) for a in self.c], ring or self.ring)

    def __add__(self, other):
        o = self._lift(other)
        return QSeries._raw([a + b for a, b in zip(self.c, o.c)], self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-a for a in self.c], self.ring)

    def __sub__(self, other):
        o = self._lift(other)
        return QSeries._raw([a - b for a, b in zip(self.c, o.c)], self.ring)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries._raw([a * other for a in self.c], self.ring)
        self._check(other)
        a, b = self.c, other.c
        N = len(a)
        nz_b = [j for j in range(N) if b[j] != 0]
        r = []
        for k in range(N):
            s = self.ring.zero
            for j in nz_b:
                if j > k:
                    break
                if a[k - j] != 0:
                    s = s + a[k - j] * b[j]
            r.append(s)
        return QSeries._raw(r, self.ring)

    def __rmul__(self, other):
        return QSeries._raw([other * a for a in self.c], self.ring)

    def inverse(self) -> "QSeries":
        c0 = self.c[0]
        if c0 == 0:
            raise SeriesError("series with zero constant term is not invertible")
        inv0 = 1 / c0
        r = [inv0]
        for k in range(1, len(self.c)):
            s = self.ring.zero
            for j in range(1, k + 1):
                if self.c[j] != 0:
                    s = s + self.c[j] * r[k - j]
            r.append(-s * inv0)
        return QSeries._raw(r, self.ring)

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            self._check(other)
            return self * other.inverse()
        return QSeries._raw([a / other for a in self.c], self.ring)

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("use pow_rational for non-integer exponents")
        if e < 0:
            return self.inverse() ** (-e)
        r = QSeries.const(1, self.order, self.ring)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def q_ddq(self) -> "QSeries":
        """``q d/dq``: coefficient ``k`` becomes ``k c_k``."""
        return QSeries._raw([a * k for k, a in enumerate(self.c)], self.ring)

    def integrate_du_over_u(self) -> "QSeries":
        """``int_0^q f(u) du/u``; needs a zero constant term."""
        if self.c[0] != 0:
            raise SeriesError("integrate_du_over_u needs a zero constant term")
        return QSeries._raw([self.ring.zero] + [a / k for k, a in enumerate(self.c) if k],
                            self.ring)

    def exp(self) -> "QSeries":
        if self.c[0] != 0:
            raise SeriesError("exp needs a zero constant term")
        # E' = f' E  <=>  k e_k = sum_{j=1}^k j f_j e_{k-j}
        f = self.c
        e = [self.ring.one]
        for k in range(1, len(f)):
            s = self.ring.zero
            for j in range(1, k + 1):
                if f[j] != 0:
                    s = s + f[j] * (j * e[k - j])
            e.append(s / k)
        return QSeries._raw(e, self.ring)

    def log(self) -> "QSeries":
        if self.c[0] != 1:
            raise SeriesError("log needs constant term 1")
        # f (log f)' = f'  <=>  k l_k = k f_k - sum_{j=1}^{k-1} j l_j f_{k-j}
        f = self.c
        lg = [self.ring.zero]
        for k in range(1, len(f)):
            s = f[k] * k
            for j in range(1, k):
                if f[k - j] != 0:
                    s = s - (lg[j] * j) * f[k - j]
            lg.append(s / k)
        return QSeries._raw(lg, self.ring)

    def pow_rational(self, r) -> "QSeries":
        """``f^r`` for rational ``r``; needs constant term 1."""
        r = to_rational(r)
        if self.c[0] != 1:
            raise SeriesError("pow_rational needs constant term 1")
        # f P' = r f' P  <=>  k p_k = sum_{j=1}^k (r j - (k - j)) f_j p_{k-j}
        f = self.c
        p = [self.ring.one]
        for k in range(1, len(f)):
            s = self.ring.zero
            for j in range(1, k + 1):
                if f[j] != 0:
                    s = s + f[j] * (p[k - j] * (r * j - (k - j)))
            p.append(s / k)
        return QSeries._raw(p, self.ring)

    def eval_coeffs(self, point) -> "QSeries":
        """Evaluate rational-function coefficients at ``point``; result over the base ring."""
        base = self.ring.base
        return QSeries._raw([a(point) for a in self.c], base)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def first_difference(self, other) -> int | None:
        """First index where the two series differ, or ``None``."""
        o = self._lift(other)
        for k, (a, b) in enumerate(zip(self.c, o.c)):
            if a != b:
                return k
        return None

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.order == other.order and all(a == b for a, b in zip(self.c, other.c))
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        terms = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            terms.append(f"{a}" if k == 0 else f"({a})*q^{k}")
        return (" + ".join(terms) or "0") + f" + O(q^{self.order + 1})"


def binomial_series(base_coeff, r, order: int) -> QSeries:
    """``(1 + b q)^r`` from the generalised binomial coefficients (rationals)."""
    b = to_rational(base_coeff)
    r = to_rational(r)
    out, term = [], mpq(1)
    for k in range(order + 1):
        out.append(term * b ** k)
        term = term * (r - k) / (k + 1)
    return QSeries(out, order)


def newton_solve(G: Callable[[QSeries], QSeries], y0, order: int, ring=QQ) -> QSeries:
    """Solve ``G(y) = 0`` with ``y(0) = y0`` order by order (Hensel lifting).

    The linearisation ``dG/dy`` at ``(y0, q=0)`` is read off from one extra
    evaluation: the ``q^1`` coefficient of ``G(y0 + c q)`` is affine in ``c``.
    """
    y = [ring.coerce(y0)] + [ring.zero] * order
    g0 = G(QSeries._raw(y, ring))
    if g0.c[0] != 0:
        raise SeriesError("G(y0) has a nonzero constant term")
    if order == 0:
        return QSeries._raw(y, ring)
    probe = list(y)
    probe[1] = ring.one
    jac = G(QSeries._raw(probe, ring)).c[1] - g0.c[1]
    if jac == 0:
        raise SeriesError("singular linearisation in newton_solve")
    res = g0
    for k in range(1, order + 1):
        rk = res.c[k]
        if rk != 0:
            y[k] = -rk / jac
            res = G(QSeries._raw(y, ring))
        if res.c[k] != 0:
            raise SeriesError(f"newton_solve failed to converge at order {k}")
    return QSeries._raw(y, ring)
