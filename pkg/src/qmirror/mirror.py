"""Assembled genus-one series: the double-residue A-part, the B-block and G_{1,0}."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .exactnum import QQ, RationalFunctionField, pole_order, to_rational
from .hypergeom import (ModelParams, I_series, I_series_shifted, L_mu_series, M_power,
                        binom2)
from .laurent import LaurentRing
from .qseries import QSeries
from .report import CheckResult

__all__ = [
    "H1", "H2", "SeparableBiSeries", "build_bbF", "double_residue", "double_residue_good2_lhs",
    "A_series", "a_sum_alpha0", "a_sum_residue", "b_block_closed", "b_block_literal",
    "b_sum_alpha0", "G10_series", "main2_rhs", "check_good2",
]

H1 = RationalFunctionField(QQ, "h1")
H2 = RationalFunctionField(QQ, "h2")
_LAU = LaurentRing(QQ, "h")


@dataclass(frozen=True)
class SeparableBiSeries:
    """``sum_j A_j(h1, q) B_j(h2, q)``, optionally times ``1/(h1 h2 (h1 + h2))``.

    ``terms`` holds q-series pairs; :meth:`pairs` expands the q^d coefficient
    into its list of separable products ``f(h1) g(h2)``.
    """

    order: int
    terms: tuple
    prefactor: bool = True

    def pairs(self, d: int) -> list:
        out = []
        for A, B in self.terms:
            for d1 in range(d + 1):
                f, g = A[d1], B[d - d1]
                if f != 0 and g != 0:
                    out.append((f, g))
        return out

    def evaluate(self, d: int, h1, h2):
        """Value of the q^d coefficient at numeric ``h1, h2`` (prefactor included)."""
        total = sum((f(h1) * g(h2) for f, g in self.pairs(d)), mpq(0))
        if self.prefactor:
            total = total / (to_rational(h1) * h2 * (h1 + h2))
        return total


def _normalised_in_h(H: QSeries, I: QSeries, alpha, field) -> QSeries:
    """``H(w, q) / I(q)`` with ``w -> alpha/h``."""
    G = H * I.inverse().map(H.ring.coerce, H.ring)
    return QSeries._raw([c.substitute_reciprocal(alpha, field) for c in G], field)


def _Iddot(params: ModelParams, s: int) -> QSeries:
    if s >= params.ell:
        via_shift = I_series_shifted(params, s)
        direct = I_series(params, "ddot", s)
        if via_shift != direct:
            raise ArithmeticError(f"I-ddot_{s}: shift identity disagrees with direct computation")
        return via_shift
    return I_series(params, "ddot", s)


@lru_cache(maxsize=None)
def build_bbF(params: ModelParams, alpha=1) -> SeparableBiSeries:
    """The separable sum over M-iterates, with ``w_j = alpha/h_j``."""
    alpha = to_rational(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    n, ell = params.n, params.ell
    terms = []
    for p in range(0, n - ell):
        A = _normalised_in_h(M_power(params, "dot", p), I_series(params, "dot", p), alpha, H1)
        B = _normalised_in_h(M_power(params, "ddot", n - 1 - p), _Iddot(params, n - 1 - p),
                             alpha, H2)
        terms.append((A, B))
    for p in range(1, ell + 1):
        A = _normalised_in_h(M_power(params, "ddot", n - 1 + p), _Iddot(params, n - 1 + p),
                             alpha, H1)
        B = _normalised_in_h(M_power(params, "dot", n - p), I_series(params, "dot", n - p),
                             alpha, H2)
        terms.append((A, B))
    return SeparableBiSeries(params.N, tuple(terms))


def _laurent_series(S: QSeries, prec: int) -> QSeries:
    return QSeries._raw([_LAU.from_ratfunc(c, prec) for c in S], _LAU)


def _coefficient_series(S: QSeries, k: int) -> QSeries:
    return QSeries._raw([c.coeff(k) for c in S], QQ)


def _exp_factor(scale: QSeries) -> QSeries:
    """``exp(-scale(q)/h)`` with coefficients exact Laurent polynomials in h."""
    arg = QSeries._raw([_LAU.monomial(-a, -1) if a != 0 else _LAU.zero for a in scale], _LAU)
    return arg.exp()


def double_residue(bi: SeparableBiSeries, exponent: QSeries) -> QSeries:
    """``Res_{h1=0} Res_{h2=0}`` of ``e^(-exponent (1/h1 + 1/h2)) * bi``.

    For one separable product ``F(h1) G(h2) / (h1 h2 (h1 + h2))`` the inner
    residue expands ``1/(h1 + h2) = sum_t (-h2)^t / h1^(t+1)``, giving
    ``sum_{t>=0} (-1)^t [h2^-t] G * [h1^(t+1)] F``.
    """
    if not bi.prefactor:
        raise ValueError("double_residue expects the 1/(h1 h2 (h1+h2)) prefactor")
    N = bi.order
    E = _exp_factor(exponent)
    total = QSeries.const(0, N)
    for A, B in bi.terms:
        # pole order of B's coefficients bounds t; E adds at most N more
        T = max((pole_order(g, 0) for g in B if g != 0), default=0) + N
        Gs = E * _laurent_series(B, N + 1)
        Fs = E * _laurent_series(A, T + N + 2)
        for t in range(T + 1):
            g = _coefficient_series(Gs, -t)
            if g.is_zero():
                continue
            f = _coefficient_series(Fs, t + 1)
            total = total + (g * f if t % 2 == 0 else -(g * f))
    return total


@lru_cache(maxsize=None)
def double_residue_good2_lhs(params: ModelParams, alpha=1) -> QSeries:
    """``Res Res e^(-mu alpha (1/h1 + 1/h2)) / (h1 h2 (h1 + h2)) * bbF(alpha/h1, alpha/h2)``."""
    alpha = to_rational(alpha)
    _, mu = L_mu_series(params)
    return double_residue(build_bbF(params, alpha), mu * alpha)


@lru_cache(maxsize=None)
def A_series(params: ModelParams) -> QSeries:
    n, a, ell = params.n, params.a, params.ell
    L, mu = L_mu_series(params)
    inv_sum = sum((mpq(1, x) for x in a), mpq(0))
    out = mu * (mpq(n, 24) * (n - 1 - 2 * inv_sum))
    log_base = QSeries([1, -params.aa], params.N).log()
    out = out - log_base * mpq(3 * (n - 1 - ell) ** 2 + (n - 2), 24)
    for p in range(0, n - 1 - ell):
        out = out - I_series(params, "dot", p).log() * binom2(n - p - ell)
    return out


def a_sum_alpha0(params: ModelParams) -> QSeries:
    """Closed-form A-part: ``(1/2) q d/dq A(q)``."""
    return A_series(params).q_ddq() / 2


def a_sum_residue(params: ModelParams, alpha=1) -> QSeries:
    """A-part through the double-residue route: ``(1/2) alpha L(q) * LHS``."""
    L, _ = L_mu_series(params)
    return L * double_residue_good2_lhs(params, alpha) * (to_rational(alpha) / 2)


def b_block_closed(params: ModelParams) -> QSeries:
    """``(1/24)((sum_k n/a_k - C(n,2)) mu - n (l+1)/2 log L)``."""
    n, ell = params.n, params.ell
    L, mu = L_mu_series(params)
    coef = sum((mpq(n, x) for x in params.a), mpq(0)) - binom2(n)
    return (mu * coef - L.log() * mpq(n * (ell + 1), 2)) / 24


def b_block_literal(params: ModelParams) -> QSeries:
    """The same block with ``C(n,2)`` inside the sum over ``k`` (subtracted ``l`` times)."""
    n, ell = params.n, params.ell
    L, mu = L_mu_series(params)
    coef = sum((mpq(n, x) - binom2(n) for x in params.a), mpq(0))
    return (mu * coef - L.log() * mpq(n * (ell + 1), 2)) / 24


def b_sum_alpha0(params: ModelParams, mode: str = "closed", directions=None, seed: int = 0) -> QSeries:
    """The undifferentiated B-block, in closed form or through directional limits."""
    if mode == "closed":
        return b_block_closed(params)
    if mode == "direct":
        from .equivariant import b_block_direct
        return b_block_direct(params, directions, seed)
    raise ValueError(f"unknown mode {mode!r}")


def G10_series(params: ModelParams) -> QSeries:
    return A_series(params) / 2 + b_block_closed(params)


def main2_rhs(params: ModelParams, a_route: str = "closed", b_route: str = "closed",
              alpha=1, directions=None, seed: int = 0) -> QSeries:
    """A-part plus ``q d/dq`` of the B-block, each from the chosen route."""
    if a_route == "closed":
        a_part = a_sum_alpha0(params)
    elif a_route == "residue":
        a_part = a_sum_residue(params, alpha)
    else:
        raise ValueError(f"unknown A route {a_route!r}")
    b = b_sum_alpha0(params, "closed" if b_route == "closed" else "direct", directions, seed)
    return a_part + b.q_ddq()


def check_good2(params: ModelParams, alpha=1) -> CheckResult:
    alpha = to_rational(alpha)
    L, _ = L_mu_series(params)
    lhs = L * double_residue_good2_lhs(params, alpha) * alpha
    rhs = A_series(params).q_ddq()
    k = lhs.first_difference(rhs)
    name = f"double residue = A'/(alpha L) {params.label()} alpha={alpha}"
    anchor = "Res Res e^{-mu alpha(1/h1+1/h2)} bbF / (h1 h2 (h1+h2)) = alpha^-1 L^-1 q dA/dq"
    if k is None:
        return CheckResult(name, anchor, True, f"N={params.N}")
    return CheckResult(name, anchor, False, f"first difference at q^{k}: {lhs[k]} vs {rhs[k]}",
                       {"order": k, "lhs": lhs[k], "rhs": rhs[k]})
