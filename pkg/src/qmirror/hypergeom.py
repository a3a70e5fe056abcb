"""Non-equivariant hypergeometric series and the operators D, M.

Series in ``q`` with coefficients in ``Q(w)`` ("w-series") are plain
:class:`~qmirror.qseries.QSeries` over :data:`W`.  The class P consists of
w-series with constant term 1 whose coefficients are regular at ``w = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, prod

from gmpy2 import mpq

from .exactnum import QQ, Poly, RationalFunctionField
from .qseries import QSeries
from .report import CheckResult

__all__ = [
    "ModelParams", "W", "ClassPError", "series_F", "series_Fdot", "series_Fddot",
    "base_series", "op_D", "op_M", "in_class_P", "M_power", "I_series",
    "check_M_shift", "check_P_closure", "L_mu_series", "frakD_F",
]

W = RationalFunctionField(QQ, "w")
KINDS = ("plain", "dot", "ddot")


class ClassPError(ValueError):
    """A w-series is outside the class P where membership is required."""


@dataclass(frozen=True)
class ModelParams:
    """Target data: ``P^(n-1)`` cut out by degrees ``a`` with ``sum(a) = n``; order ``N``."""

    n: int
    a: tuple
    N: int = 4

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.n < 1:
            raise ValueError(f"n must be positive (got {self.n})")
        if not self.a:
            raise ValueError("need at least one degree a_k (l >= 1)")
        if any(x < 1 for x in self.a):
            raise ValueError(f"degrees a_k must be >= 1 (got {list(self.a)})")
        if sum(self.a) != self.n:
            raise ValueError(f"Calabi-Yau condition violated: sum(a) = {sum(self.a)} != n = {self.n}")
        if self.N < 0:
            raise ValueError(f"truncation order must be >= 0 (got {self.N})")

    @property
    def ell(self) -> int:
        return len(self.a)

    @property
    def aa(self) -> int:
        """``prod a_k^a_k``."""
        return prod(x ** x for x in self.a)

    def with_order(self, N: int) -> "ModelParams":
        return ModelParams(self.n, self.a, N)

    def label(self) -> str:
        return f"(n={self.n}, a={list(self.a)})"


def _linear_product(pairs) -> Poly:
    """``prod (s w + r)`` over ``(s, r)`` pairs, as a polynomial in w."""
    out = Poly.const(1)
    for s, r in pairs:
        out = out * Poly([r, s])
    return out


@lru_cache(maxsize=None)
def _dot_denominator(n: int, r: int) -> Poly:
    # (w + r)^n - w^n
    return Poly([r, 1]) ** n - Poly([0, 1]) ** n


def _coefficient(params: ModelParams, kind: str, d: int):
    if d == 0:
        return W.one
    a, n = params.a, params.n
    if kind == "ddot":
        num = _linear_product((ak, r) for ak in a for r in range(ak * d))
    else:
        num = _linear_product((ak, r) for ak in a for r in range(1, ak * d + 1))
    if kind == "plain":
        den = Poly([1])
        for r in range(1, d + 1):
            den = den * Poly([r, 1]) ** n
    else:
        den = Poly([1])
        for r in range(1, d + 1):
            den = den * _dot_denominator(n, r)
    return W(num, den)


@lru_cache(maxsize=None)
def base_series(params: ModelParams, kind: str) -> QSeries:
    """F (``kind='plain'``), F-dot (``'dot'``) or F-ddot (``'ddot'``)."""
    if kind not in KINDS:
        raise ValueError(f"unknown series kind {kind!r}")
    return QSeries._raw([_coefficient(params, kind, d) for d in range(params.N + 1)], W)


def series_F(params: ModelParams) -> QSeries:
    return base_series(params, "plain")


def series_Fdot(params: ModelParams) -> QSeries:
    return base_series(params, "dot")


def series_Fddot(params: ModelParams) -> QSeries:
    return base_series(params, "ddot")


def at_w0(H: QSeries) -> QSeries:
    """``H(0, q)`` as a rational q-series."""
    return H.eval_coeffs(QQ.zero)


def in_class_P(H: QSeries) -> bool:
    return H.ring == W and H[0] == 1 and all(c.is_regular_at(0) for c in H)


def op_D(H: QSeries) -> QSeries:
    """``(1 + (q/w) d/dq) H``: coefficient k picks up the factor ``(w + k)/w``."""
    w = W.gen()
    return QSeries._raw([c if k == 0 else c * ((w + k) / w) for k, c in enumerate(H)], W)


def op_M(H: QSeries) -> QSeries:
    """``D(H / H(0, q))`` on the class P, with membership asserted on both ends."""
    if not in_class_P(H):
        raise ClassPError("op_M input is not in class P")
    h0 = at_w0(H).inverse()
    G = H * h0.map(W.coerce, W)
    out = [W.one]
    for k in range(1, len(G)):
        g = G[k]
        # (G/G(0))(0, q) = 1, so every higher coefficient vanishes at w = 0
        if g.num.coeff(0) != 0:
            raise ClassPError(f"internal: normalised coefficient q^{k} does not vanish at w=0")
        out.append(g + W(Poly(g.num.c[1:]) * k, g.den))
    M = QSeries._raw(out, W)
    if not in_class_P(M):
        raise ClassPError("internal: op_M output left class P")
    return M


@lru_cache(maxsize=None)
def M_power(params: ModelParams, kind: str, s: int) -> QSeries:
    """``M^s`` applied to the base series of the given kind."""
    if s < 0:
        raise ValueError("M power must be >= 0")
    if s == 0:
        return base_series(params, kind)
    return op_M(M_power(params, kind, s - 1))


@lru_cache(maxsize=None)
def I_series(params: ModelParams, kind: str, s: int) -> QSeries:
    """``M^s F(0, q)`` for the chosen kind; constant term 1."""
    return at_w0(M_power(params, kind, s))


def I_series_shifted(params: ModelParams, s: int) -> QSeries:
    """I-ddot_s through the shift identity ``I-ddot_(p+l) = I-dot_p`` (needs ``s >= l``)."""
    if s < params.ell:
        raise ValueError("shift route needs s >= l")
    return I_series(params, "dot", s - params.ell)


def check_M_shift(params: ModelParams, p_max: int) -> CheckResult:
    """``M^p F-dot = M^(p+l) F-ddot`` for ``0 <= p <= p_max``."""
    ell = params.ell
    for p in range(p_max + 1):
        lhs = M_power(params, "dot", p)
        rhs = M_power(params, "ddot", p + ell)
        k = lhs.first_difference(rhs)
        if k is not None:
            return CheckResult(
                f"M-shift {params.label()}", "M^p Fdot = M^(p+l) Fddot", False,
                f"p={p}: first difference at q^{k}: {lhs[k]} vs {rhs[k]}",
                {"p": p, "order": k})
    return CheckResult(f"M-shift {params.label()}", "M^p Fdot = M^(p+l) Fddot", True,
                       f"p=0..{p_max}, N={params.N}")


def check_P_closure(params: ModelParams, s_max: int) -> CheckResult:
    """Every iterate ``M^s`` of F, F-dot, F-ddot stays in class P."""
    for kind in KINDS:
        for s in range(s_max + 1):
            try:
                H = M_power(params, kind, s)
            except ClassPError as exc:
                return CheckResult(f"P-closure {params.label()}", "M: P -> P", False,
                                   f"{kind}, s={s}: {exc}")
            if not in_class_P(H):
                return CheckResult(f"P-closure {params.label()}", "M: P -> P", False,
                                   f"{kind}, s={s}: not in P")
    return CheckResult(f"P-closure {params.label()}", "M: P -> P", True,
                       f"kinds={','.join(KINDS)}, s=0..{s_max}")


@lru_cache(maxsize=None)
def L_mu_series(params: ModelParams):
    """``L = (1 - a^a q)^(-1/n)`` and ``mu = int_0^q (L(u) - 1) du/u``."""
    base = QSeries([1, -params.aa], params.N)
    L = base.pow_rational(mpq(-1, params.n))
    mu = (L - 1).integrate_du_over_u()
    return L, mu


@lru_cache(maxsize=None)
def frakD_F(params: ModelParams, kind: str, s: int) -> QSeries:
    """Normalised iterates: ``D^0 = F/I_0``, ``D^s = (1 + (q/w) d/dq) D^(s-1) / I_s``."""
    inv = I_series(params, kind, s).inverse().map(W.coerce, W)
    if s == 0:
        return base_series(params, kind) * inv
    return op_D(frakD_F(params, kind, s - 1)) * inv


def binom2(m: int) -> int:
    return comb(m, 2) if m >= 2 else 0
