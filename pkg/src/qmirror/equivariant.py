"""Equivariant objects restricted to rays ``alpha = eps * c``.

A direction ``c`` lives either in Q or in a cyclotomic field.  Every quantity
is then an element of ``K(eps)`` (or a q-series over it), and "restriction to
alpha = 0" becomes an exact ``eps -> 0`` limit that is checked for
regularity and compared across directions.

Two families of rays matter:

* rational rays, e.g. ``c = (1, 2, ..., n)``.  Residue identities hold on
  any ray, so the lemma batteries and the functional-equation residual use
  these.
* isotropic rays ``c_k = s * zeta_n^(j * pi(k))``, on which all elementary
  symmetric functions ``sigma_1 .. sigma_(n-1)`` of ``alpha`` vanish.  Limits
  that the hypergeometric identities need (``xi_i = mu alpha_i``,
  ``Phi^(0) = L^((l+1)/2)``) hold exactly here and generally *fail* on
  rational rays, where the same quantities depend on ``c``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from gmpy2 import mpq

from .exactnum import (QQ, CyclotomicField, Cyc, Poly, RatFunc, RationalFunctionField,
                       laurent_quotient, to_rational)
from .hypergeom import ModelParams, base_series
from .laurent import Laurent, LaurentRing
from .qseries import QSeries, newton_solve
from .report import CheckResult

__all__ = [
    "AlphaDirection", "DirectionError", "PrincipalPartError", "eps_field",
    "default_directions", "isotropic_directions", "s_tilde", "vertex_weight", "solve_xi",
    "functional_residual", "ydot_coefficients", "ydot_equivariant", "phi_expansion",
    "c_coeff", "eps_limit", "directional_limit", "lemma_good0_value", "lemma_good0_check",
    "residue_power_sum", "lemma_goodprime0_check", "b_block_direct", "b_block_sum",
    "ydot_matches_fdot", "xi_over_alpha", "isotropic_power_sum", "power_sum_pole_check",
]


class DirectionError(ArithmeticError):
    """Directional limit does not exist or depends on the direction."""


class PrincipalPartError(ArithmeticError):
    """``e^(-xi/h) Ydot`` has a nonzero principal part at ``h = 0``."""


@dataclass(frozen=True)
class AlphaDirection:
    """Pairwise distinct nonzero entries ``c_1..c_n`` in the field ``field``."""

    c: tuple
    field: object = QQ
    label: str = ""

    def __post_init__(self):
        c = tuple(self.field.coerce(x) for x in self.c)
        object.__setattr__(self, "c", c)
        if any(x == 0 for x in c):
            raise ValueError(f"direction {self.name} has a zero entry")
        for i in range(len(c)):
            for k in range(i):
                if c[i] == c[k]:
                    raise ValueError(f"direction {self.name} has repeated entries")

    @property
    def n(self) -> int:
        return len(self.c)

    @property
    def name(self) -> str:
        return self.label or "(" + ",".join(str(x) for x in self.c) + ")"

    @classmethod
    def rational(cls, values, label: str = "") -> "AlphaDirection":
        vals = [to_rational(v) for v in values]
        return cls(tuple(vals), QQ, label or "(" + ",".join(str(v) for v in vals) + ")")

    @classmethod
    def isotropic(cls, n: int, j: int = 1, scale=1, perm=None) -> "AlphaDirection":
        """``c_k = scale * zeta_n^(j * perm[k])``; ``j`` must be a unit mod n."""
        if gcd(j, n) != 1:
            raise ValueError(f"exponent {j} is not a unit mod {n}")
        K = CyclotomicField(n)
        perm = list(range(n)) if perm is None else list(perm)
        s = to_rational(scale)
        c = tuple(K.zeta_power(j * perm[k]) * s for k in range(n))
        return cls(c, K, f"zeta_{n}^{j}*{s} perm={perm}")

    def eps(self) -> "RationalFunctionField":
        return eps_field(self.field)

    @property
    def alphas(self) -> tuple:
        E = eps_field(self.field)
        e = E.gen()
        return tuple(e * x for x in self.c)

    def sigma(self, r: int):
        """``r``-th elementary symmetric function of the entries ``c``."""
        e = [self.field.one] + [self.field.zero] * self.n
        for x in self.c:
            for j in range(self.n, 0, -1):
                e[j] = e[j] + e[j - 1] * x
        return e[r]


@lru_cache(maxsize=None)
def eps_field(K) -> RationalFunctionField:
    return RationalFunctionField(K, "eps")


@lru_cache(maxsize=None)
def _hbar_field(K) -> RationalFunctionField:
    return RationalFunctionField(eps_field(K), "hbar")


@lru_cache(maxsize=None)
def _laurent_ring(K) -> LaurentRing:
    return LaurentRing(eps_field(K), "hbar")


def default_directions(n: int, seed: int = 0) -> list:
    """``(1, 2, .., n)`` and one seeded pseudorandom distinct-entry rational vector."""
    rng = random.Random(seed)
    vals = set()
    while len(vals) < n:
        v = mpq(rng.randint(-40, 40), rng.randint(1, 9))
        if v != 0:
            vals.add(v)
    vals = sorted(vals)
    rng.shuffle(vals)
    return [AlphaDirection.rational(range(1, n + 1), "1..n"),
            AlphaDirection.rational(vals, f"random(seed={seed})")]


def isotropic_directions(n: int, seed: int = 0) -> list:
    """Standard isotropic ray plus a seeded one (random unit exponent, scale, permutation)."""
    rng = random.Random(seed)
    units = [j for j in range(1, max(n, 2)) if gcd(j, n) == 1] or [1]
    j = rng.choice(units)
    scale = mpq(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9))
    perm = list(range(n))
    rng.shuffle(perm)
    return [AlphaDirection.isotropic(n),
            AlphaDirection.isotropic(n, j, scale, perm)]


# ---------------------------------------------------------------------------

def s_tilde(direction: AlphaDirection, r: int, y, eps=None):
    """``r``-th elementary symmetric polynomial in ``{y - alpha_k}``.

    ``eps`` defaults to the ray parameter; pass a value (e.g. 0) to specialise.
    """
    n = direction.n
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n (got r={r})")
    alphas = direction.alphas if eps is None else tuple(eps * x for x in direction.c)
    e = [1] + [0] * r
    for a in alphas:
        t = y - a
        for j in range(r, 0, -1):
            e[j] = e[j] + e[j - 1] * t
    return e[r]


def vertex_weight(direction: AlphaDirection, i: int):
    """``prod_{k != i} (alpha_i - alpha_k)`` in ``K(eps)``."""
    al = direction.alphas
    return prod((al[i] - al[k] for k in range(direction.n) if k != i), start=eps_field(direction.field).one)


def _check_model(params: ModelParams, direction: AlphaDirection):
    if direction.n != params.n:
        raise ValueError(f"direction has {direction.n} entries, model needs n={params.n}")


@lru_cache(maxsize=None)
def solve_xi(params: ModelParams, direction: AlphaDirection, i: int):
    """``(L_i, xi_i)`` at ``x = alpha_i``: solve the functional equation, integrate ``L_i - alpha_i``."""
    _check_model(params, direction)
    E = eps_field(direction.field)
    x = direction.alphas[i]
    N, aa, n = params.N, params.aa, params.n
    q = QSeries.q(N, E)
    rhs = s_tilde(direction, n, x)

    def G(y):
        return s_tilde(direction, n, y) - q * (y ** n) * aa - rhs

    L = newton_solve(G, x, N, E)
    residual = G(L)
    if not residual.is_zero():
        raise ArithmeticError("functional equation residual is nonzero")
    xi = (L - x).integrate_du_over_u()
    return L, xi


def functional_residual(params: ModelParams, direction: AlphaDirection, i: int) -> QSeries:
    """``s~_n(L) - q a^a L^n - s~_n(x)`` at the computed solution (identically 0)."""
    L, _ = solve_xi(params, direction, i)
    E = eps_field(direction.field)
    x = direction.alphas[i]
    q = QSeries.q(params.N, E)
    return s_tilde(direction, params.n, L) - q * (L ** params.n) * params.aa - s_tilde(direction, params.n, x)


@lru_cache(maxsize=None)
def ydot_coefficients(params: ModelParams, direction: AlphaDirection, i: int) -> tuple:
    """Unreduced ``(num, den)`` polynomials in hbar over ``K(eps)`` for each q^d of Ydot(alpha_i)."""
    _check_model(params, direction)
    E = eps_field(direction.field)
    al = direction.alphas
    x = al[i]
    out = [(Poly.const(1, E), Poly.const(1, E))]
    for d in range(1, params.N + 1):
        num = Poly.const(1, E)
        for ak in params.a:
            for l in range(1, ak * d + 1):
                num = num * Poly([x * ak, l], E)
        den = Poly.const(1, E)
        base = prod((x - a for a in al), start=E.one)
        for l in range(1, d + 1):
            factor = Poly.const(1, E)
            for a in al:
                factor = factor * Poly([x - a, l], E)
            den = den * (factor - base)
        out.append((num, den))
    return tuple(out)


def ydot_equivariant(params: ModelParams, direction: AlphaDirection, i: int) -> QSeries:
    """Ydot(alpha_i, hbar, q) with reduced rational-function coefficients in hbar."""
    Hf = _hbar_field(direction.field)
    return QSeries._raw([RatFunc(num, den, Hf) for num, den in
                         ydot_coefficients(params, direction, i)], Hf)


@lru_cache(maxsize=None)
def _phi_product(params: ModelParams, direction: AlphaDirection, i: int, m_max: int) -> QSeries:
    R = _laurent_ring(direction.field)
    E = eps_field(direction.field)
    N = params.N
    _, xi = solve_xi(params, direction, i)
    prec = m_max + 1 + N
    ys = []
    for d, (num, den) in enumerate(ydot_coefficients(params, direction, i)):
        co = laurent_quotient(num, den, E.zero, -d, prec - 1)
        ys.append(Laurent(R, -d, [co[k] for k in range(-d, prec)], prec))
    Y = QSeries._raw(ys, R)
    arg = QSeries._raw([R.monomial(-a, -1) if a != 0 else R.zero for a in xi], R)
    return arg.exp() * Y


def phi_expansion(params: ModelParams, direction: AlphaDirection, i: int, m_max: int = 0) -> list:
    """``[Phi^(0), .., Phi^(m_max)]`` with ``e^(-xi_i/hbar) Ydot = sum_m Phi^(m) hbar^m``.

    Raises :class:`PrincipalPartError` if any q-order has a pole at ``hbar = 0``.
    """
    P = _phi_product(params, direction, i, m_max)
    for d, c in enumerate(P):
        pp = c.principal_part()
        if pp:
            raise PrincipalPartError(f"q^{d}: principal part {pp} at hbar=0 (direction {direction.name}, i={i})")
    E = eps_field(direction.field)
    return [QSeries._raw([c.coeff(m) for c in P], E) for m in range(m_max + 1)]


def c_coeff(params: ModelParams, direction: AlphaDirection, i: int):
    """``sum_{k != i} 1/(alpha_k - alpha_i) + sum_k 1/(a_k alpha_i)``."""
    al = direction.alphas
    E = eps_field(direction.field)
    out = E.zero
    for k in range(direction.n):
        if k != i:
            out = out + 1 / (al[k] - al[i])
    for ak in params.a:
        out = out + 1 / (al[i] * ak)
    return out


# ---------------------------------------------------------------------------
# eps -> 0

def _rational_value(v, where: str):
    if isinstance(v, Cyc):
        if not v.is_rational():
            raise DirectionError(f"{where}: limit {v} is not rational")
        return v.to_rational()
    return to_rational(v)


def eps_limit(f: RatFunc, where: str = "value"):
    """Value at ``eps = 0``; raises :class:`DirectionError` at a pole."""
    d0 = f.den.coeff(0)
    if d0 == 0:
        raise DirectionError(f"{where}: pole at eps=0")
    return f.num.coeff(0) / d0


def directional_limit(per_direction, labels=None) -> QSeries:
    """``eps -> 0`` of q-series over ``K(eps)``, one per direction; limits must agree.

    Accepts a single series or a list (one per direction).
    """
    if isinstance(per_direction, QSeries):
        per_direction = [per_direction]
    labels = labels or [str(j) for j in range(len(per_direction))]
    results = []
    for S, lab in zip(per_direction, labels):
        vals = []
        for d, c in enumerate(S):
            v = eps_limit(c, f"direction {lab}, q^{d}") if isinstance(c, RatFunc) else c
            vals.append(_rational_value(v, f"direction {lab}, q^{d}"))
        results.append(QSeries(vals))
    first = results[0]
    for R, lab in zip(results[1:], labels[1:]):
        k = first.first_difference(R)
        if k is not None:
            raise DirectionError(
                f"direction dependence at q^{k}: {labels[0]} -> {first[k]}, {lab} -> {R[k]}")
    return first


# ---------------------------------------------------------------------------
# Residue-sum lemmas

def _eval_generator(term, direction: AlphaDirection, z, al):
    coef, r, t, mono = term
    E = eps_field(direction.field)
    sig = [E.one] + [E.zero] * direction.n
    for a in al:
        for j in range(direction.n, 0, -1):
            sig[j] = sig[j] + sig[j - 1] * a
    val = sig[r] * (z ** t) * to_rational(coef)
    if mono:
        for a, e in zip(al, mono):
            val = val * a ** e
    return val


def lemma_good0_value(direction: AlphaDirection, f_terms, m: int, allow_outside_ideal=False):
    """``sum_j f(alpha_j)/prod_{k != j}(alpha_j - alpha_k)^(m+1)`` in ``K(eps)``.

    ``f_terms`` is a list of ``(coef, r, t, mono)`` meaning
    ``coef * sigma_r(alpha) * z^t * prod alpha_k^mono_k``; ``r = 0`` (no sigma
    factor) is only accepted for control cases.
    """
    n = direction.n
    for coef, r, t, mono in f_terms:
        if not (1 <= r <= n - 1) and not allow_outside_ideal:
            raise ValueError(f"sigma_{r} is not a generator of the ideal (1 <= r <= n-1)")
        if mono and len(mono) != n:
            raise ValueError("monomial exponent vector must have n entries")
    al = direction.alphas
    E = eps_field(direction.field)
    total = E.zero
    for j in range(n):
        den = prod((al[j] - al[k] for k in range(n) if k != j), start=E.one) ** (m + 1)
        num = sum((_eval_generator(term, direction, al[j], al) for term in f_terms), E.zero)
        total = total + num / den
    return total


def lemma_good0_check(n: int, directions, f_terms, m: int, expect=0, name=None) -> CheckResult:
    name = name or f"J-sum vanishing n={n} m={m} f={f_terms}"
    anchor = "f in J Q[alpha][z] => (sum_j f(alpha_j)/prod(alpha_j-alpha_k)^(m+1))|alpha=0 = 0"
    try:
        vals = [lemma_good0_value(d, f_terms, m, allow_outside_ideal=expect != 0) for d in directions]
        lim = directional_limit([QSeries._raw([v], v.field) for v in vals],
                                [d.name for d in directions])
    except DirectionError as exc:
        return CheckResult(name, anchor, False, str(exc))
    ok = lim[0] == expect
    return CheckResult(name, anchor, ok, f"limit={lim[0]}, expected={expect}")


def residue_power_sum(direction: AlphaDirection, m: int, d: int):
    """``sum_j alpha_j^m / prod_{k != j}(alpha_j - alpha_k)^(d+1)`` in ``K(eps)``."""
    al = direction.alphas
    E = eps_field(direction.field)
    total = E.zero
    for j in range(direction.n):
        den = prod((al[j] - al[k] for k in range(direction.n) if k != j), start=E.one) ** (d + 1)
        total = total + al[j] ** m / den
    return total


def isotropic_power_sum(n: int, m: int, d: int):
    """Closed form of the power sum on the isotropic locus, as ``(eps-exponent, limit)``.

    There ``prod_{k != j}(alpha_j - alpha_k) = n alpha_j^(n-1)``, so the sum is
    ``n^-(d+1) sum_j alpha_j^e`` with ``e = m - (n-1)(d+1)``; the root-of-unity
    sum is ``n`` when ``n | e`` and 0 otherwise.  Returns ``(e, None)`` when
    the sum has a pole at ``eps = 0``.
    """
    e = m - (n - 1) * (d + 1)
    if e % n != 0 or e > 0:
        return e, mpq(0)
    if e == 0:
        return e, mpq(1, n ** d)
    return e, None


def lemma_goodprime0_check(n: int, directions, m: int, d: int, control: bool = False) -> CheckResult:
    """Vanishing of the power sum unless ``m = (n-1)(d+1)``.

    The control (``m = (n-1)(d+1)``, only for ``d = 0``) must give 1.
    """
    special = m == (n - 1) * (d + 1)
    if special and not control:
        raise ValueError("m = (n-1)(d+1) is excluded; use control=True")
    if control and not (special and d == 0):
        raise ValueError("the control case is m = n-1, d = 0")
    expect = 1 if special else 0
    name = f"power-sum vanishing n={n} m={m} d={d}" + (" (control)" if control else "")
    anchor = "m != (n-1)(d+1) => (sum_j alpha_j^m/prod(alpha_j-alpha_k)^(d+1))|alpha=0 = 0"
    try:
        vals = [residue_power_sum(dr, m, d) for dr in directions]
        lim = directional_limit([QSeries._raw([v], v.field) for v in vals],
                                [dr.name for dr in directions])
    except DirectionError as exc:
        return CheckResult(name, anchor, False, str(exc), {"m": m, "d": d})
    return CheckResult(name, anchor, lim[0] == expect, f"limit={lim[0]}, expected={expect}")


def power_sum_pole_check(n: int, directions, m: int, d: int) -> CheckResult:
    """Confirm the predicted pole of the power sum on isotropic rays.

    Used for the ``(m, d)`` where the vanishing statement cannot hold because
    ``e = m - (n-1)(d+1)`` is a negative multiple of ``n``.
    """
    e, lim = isotropic_power_sum(n, m, d)
    if lim is not None:
        raise ValueError(f"no pole predicted for n={n} m={m} d={d}")
    name = f"power-sum pole n={n} m={m} d={d}"
    anchor = "isotropic locus: sum = n^-(d+1) sum_j alpha_j^e, e = m-(n-1)(d+1); pole iff e<0, n|e"
    if not directions:
        raise ValueError("need at least one direction")
    for dr in directions:
        v = residue_power_sum(dr, m, d)
        # pole order in eps: valuation of den minus valuation of num
        order = v.den.valuation() - v.num.valuation()
        if order != -e:
            return CheckResult(name, anchor, False, f"direction {dr.name}: eps-order {-order}, predicted {e}")
    return CheckResult(name, anchor, True, f"eps^{e} pole on every isotropic ray (statement fails here)")


# ---------------------------------------------------------------------------
# B-block through the equivariant route

def b_block_sum(params: ModelParams, direction: AlphaDirection) -> QSeries:
    """``sum_i (c_i(alpha) xi_i - log Phi^(0)(alpha_i))`` over ``K(eps)``."""
    _check_model(params, direction)
    E = eps_field(direction.field)
    total = QSeries.const(0, params.N, E)
    for i in range(params.n):
        _, xi = solve_xi(params, direction, i)
        phi0 = phi_expansion(params, direction, i, 0)[0]
        total = total + xi * c_coeff(params, direction, i) - phi0.log()
    return total


def b_block_direct(params: ModelParams, directions=None, seed: int = 0) -> QSeries:
    """``(1/24) lim_{eps->0} sum_i (c_i xi_i - log Phi^(0)_i)``, agreeing across directions."""
    directions = directions or isotropic_directions(params.n, seed)
    sums = [b_block_sum(params, d) for d in directions]
    return directional_limit(sums, [d.name for d in directions]) / 24


def ydot_matches_fdot(params: ModelParams, direction: AlphaDirection, i: int) -> bool:
    """Ydot_d(alpha_i, hbar) == Fdot_d(alpha_i/hbar) coefficientwise."""
    Hf = _hbar_field(direction.field)
    Y = ydot_equivariant(params, direction, i)
    F = base_series(params, "dot")
    x = direction.alphas[i]
    for d in range(params.N + 1):
        c = F[d]
        num = Poly([a for a in c.num.c], Hf.base)
        den = Poly([a for a in c.den.c], Hf.base)
        lifted = RatFunc(num, den, Hf)
        if lifted.substitute_reciprocal(x) != Y[d]:
            return False
    return True


def xi_over_alpha(params: ModelParams, direction: AlphaDirection, i: int) -> QSeries:
    """``xi_i / alpha_i`` over ``K(eps)``; its eps -> 0 limit should be ``mu(q)``."""
    _, xi = solve_xi(params, direction, i)
    return xi * (1 / direction.alphas[i])
