"""Verification batteries: each returns a list of :class:`CheckResult` in a fixed order."""
from __future__ import annotations

import random
from math import factorial, prod

from gmpy2 import mpq

from .exactnum import (QQ, CyclotomicField, Poly, RationalFunctionField, laurent_at, residue_at,
                       residue_at_infinity)
from .equivariant import (DirectionError, PrincipalPartError, c_coeff,
                          default_directions, directional_limit, functional_residual,
                          isotropic_directions, isotropic_power_sum, lemma_good0_check,
                          lemma_goodprime0_check, phi_expansion, power_sum_pole_check, solve_xi,
                          xi_over_alpha, ydot_matches_fdot)
from .hypergeom import (W, ModelParams, I_series, L_mu_series, M_power, binom2, check_M_shift,
                        check_P_closure, frakD_F, series_Fdot)
from .mirror import (A_series, G10_series, a_sum_alpha0, a_sum_residue, b_block_closed,
                     b_block_literal, b_sum_alpha0, build_bbF, check_good2, main2_rhs)
from .qseries import QSeries, binomial_series
from .report import CheckResult

SUITES = ("hyper", "residue", "equivariant", "mirror")


def _series_check(name, anchor, lhs: QSeries, rhs: QSeries, ok_detail="") -> CheckResult:
    k = lhs.first_difference(rhs)
    if k is None:
        return CheckResult(name, anchor, True, ok_detail)
    return CheckResult(name, anchor, False, f"first difference at q^{k}: {lhs[k]} vs {rhs[k]}",
                       {"order": k, "lhs": lhs[k], "rhs": rhs[k]})


def _guard(name, anchor, fn) -> CheckResult:
    """Run ``fn``; arithmetic failures become failed checks instead of crashes."""
    try:
        return fn()
    except (ArithmeticError, ValueError) as exc:
        return CheckResult(name, anchor, False, f"{type(exc).__name__}: {exc}")


def split_directions(params: ModelParams, directions, seed: int):
    """User directions split into (rational, isotropic); empty groups fall back to defaults."""
    directions = list(directions or [])
    for d in directions:
        if d.n != params.n:
            raise ValueError(f"direction {d.name} has {d.n} entries, model needs n={params.n}")
    rat = [d for d in directions if d.field == QQ]
    iso = [d for d in directions if d.field != QQ]
    return rat or default_directions(params.n, seed), iso or isotropic_directions(params.n, seed)


# ---------------------------------------------------------------------------
# hypergeometric layer

def idot0_oracle(params: ModelParams) -> QSeries:
    """``sum_d prod_k (a_k d)! / (d!)^n q^d`` by direct summation."""
    return QSeries([mpq(prod(factorial(a * d) for a in params.a), factorial(d) ** params.n)
                    for d in range(params.N + 1)], params.N)


def idot_q1_taylor(params: ModelParams, s: int):
    """q^1 coefficient of I-dot_s from Taylor coefficients of Fdot_1 at w = 0.

    At first order in q, M acts as ``g -> (g - g(0)) (w + 1)/w``, i.e. drop the
    constant Taylor term, shift down, multiply by ``1 + w``.
    """
    f1 = series_Fdot(params)[1]
    t = laurent_at(f1, 0, 0, s)
    g = [t[k] for k in range(s + 1)]
    for _ in range(s):
        g = g[1:]
        g = [g[0]] + [g[k] + g[k - 1] for k in range(1, len(g))]
    return g[0]


def hyper_suite(params: ModelParams, seed: int = 0) -> list:
    n, ell, N = params.n, params.ell, params.N
    out = []
    L, mu = L_mu_series(params)
    out.append(_series_check(f"L binomial oracle {params.label()}",
                             "L(q) = (1 - a^a q)^(-1/n)", L,
                             binomial_series(-params.aa, mpq(-1, n), N), f"N={N}"))
    out.append(_series_check(f"L^n (1 - a^a q) = 1 {params.label()}", "L(q) = (1 - a^a q)^(-1/n)",
                             (L ** n) * QSeries([1, -params.aa], N), QSeries.const(1, N)))
    out.append(_series_check(f"q dmu/dq = L - 1 {params.label()}",
                             "mu(q) = int_0^q (L(u)-1) du/u", mu.q_ddq(), L - 1))
    out.append(_series_check(f"I-dot_0 direct summation {params.label()}",
                             "I-dot_0 = Fdot(0, q) = sum_d prod (a_k d)!/(d!)^n q^d",
                             I_series(params, "dot", 0), idot0_oracle(params)))
    if N >= 1:
        for s in range(1, min(n, 3)):
            got = I_series(params, "dot", s)[1]
            want = idot_q1_taylor(params, s)
            out.append(CheckResult(f"I-dot_{s} q^1 Taylor oracle {params.label()}",
                                   "I-dot_s(q) = M^s Fdot(0, q)", got == want,
                                   f"{got} vs {want}"))
    out.append(_guard(f"M-shift {params.label()}", "M^p Fdot = M^(p+l) Fddot",
                      lambda: check_M_shift(params, 3)))
    out.append(_guard(f"P-closure {params.label()}", "M: P -> P",
                      lambda: check_P_closure(params, n + ell)))
    for kind in ("dot", "ddot"):
        def frak(kind=kind):
            for s in range(min(n, 4)):
                lhs = frakD_F(params, kind, s)
                rhs = M_power(params, kind, s) * I_series(params, kind, s).inverse().map(W.coerce, W)
                k = lhs.first_difference(rhs)
                if k is not None:
                    return CheckResult(f"frakD recursion {kind} {params.label()}", anchor, False,
                                       f"s={s}: first difference at q^{k}")
            return CheckResult(f"frakD recursion {kind} {params.label()}", anchor, True,
                               f"s=0..{min(n, 4) - 1}")
        anchor = "frakD^s F = (1 + (q/w) d/dq) frakD^(s-1) F / I_s = M^s F / I_s"
        out.append(_guard(f"frakD recursion {kind} {params.label()}", anchor, frak))
    return out


# ---------------------------------------------------------------------------
# residue layer

def random_ratfunc_with_poles(rng: random.Random, field, roots_pool):
    """A random ``num / prod (z - r)^k`` over ``field`` with known pole set."""
    F = RationalFunctionField(field, "z")
    k = rng.randint(1, 3)
    roots = rng.sample(roots_pool, k)
    den = Poly.const(1, field)
    for r in roots:
        den = den * Poly([-r, 1], field) ** rng.randint(1, 3)
    deg = rng.randint(0, den.degree + 2)
    num = Poly([field.coerce(mpq(rng.randint(-9, 9), rng.randint(1, 5))) for _ in range(deg + 1)], field)
    if num.is_zero():
        num = Poly.const(1, field)
    return F(num, den), roots


def residue_theorem_check(count: int = 100, seed: int = 0) -> CheckResult:
    """Sum of finite residues plus residue at infinity vanishes, over Q and Q(zeta_3)."""
    rng = random.Random(seed)
    K = CyclotomicField(3)
    z3 = K.gen()
    q_pool = [mpq(a, b) for a in range(-6, 7) for b in (1, 2, 3)]
    q_pool = sorted(set(q_pool))
    k_pool = [z3 * a + b for a in (-1, 1, 2) for b in (-1, 0, 1)]
    anchor = "sum_p Res_{z=p} f + Res_{z=inf} f = 0, Res_inf f = -Res_{w=0} w^-2 f(1/w)"
    for j in range(count):
        field, pool = (QQ, q_pool) if j % 4 else (K, k_pool)
        f, roots = random_ratfunc_with_poles(rng, field, pool)
        total = sum((residue_at(f, r) for r in roots), field.zero) + residue_at_infinity(f)
        if total != 0:
            return CheckResult("global residue theorem", anchor, False, f"case {j}: {f} sums to {total}")
    return CheckResult("global residue theorem", anchor, True, f"{count} random rational functions, seed={seed}")


def good0_generators(n: int) -> list:
    """Generator choices for f in J Q[alpha][z] (J = (sigma_1, .., sigma_(n-1)))."""
    top = n - 1
    mono = tuple([2] + [0] * (n - 1))
    return [
        [(1, 1, 0, None)],
        [(1, 1, 1, None)],
        [(1, top, 2, None)],
        [(2, 1, 2, None), (-3, top, 1, None)],
        [(1, min(2, top), 3, None)],
        [(1, 1, n, None)],
        [(1, 1, 2, mono)],
        [(mpq(1, 2), top, 3 * top, None)],
    ]


def residue_suite(params: ModelParams, directions=None, seed: int = 0) -> list:
    n = params.n
    if n < 2:
        raise ValueError("the residue suite needs n >= 2")
    rat, iso = split_directions(params, directions, seed)
    out = [residue_theorem_check(100, seed)]
    for m in range(3):
        for f in good0_generators(n):
            out.append(lemma_good0_check(n, iso, f, m, name=f"J-sum vanishing n={n} m={m} f={f}"))
    # on rational rays the m = 0 case is the plain residue theorem
    for f in good0_generators(n):
        out.append(lemma_good0_check(n, rat, f, 0, name=f"J-sum vanishing (rational rays) n={n} m=0 f={f}"))
    out.append(lemma_good0_check(n, rat, [(1, 0, n - 1, None)], 0, expect=1,
                                 name=f"J-sum control z^(n-1) n={n}"))
    for d in range(3):
        for m in range(3):
            if m == (n - 1) * (d + 1):
                continue
            _, lim = isotropic_power_sum(n, m, d)
            if lim is None:
                out.append(power_sum_pole_check(n, iso, m, d))
            else:
                out.append(lemma_goodprime0_check(n, iso, m, d))
    for m in range(3):
        if m != n - 1:
            out.append(lemma_goodprime0_check(n, rat, m, 0))
    out.append(lemma_goodprime0_check(n, rat, n - 1, 0, control=True))
    return out


# ---------------------------------------------------------------------------
# equivariant layer

def _lim(series, dirs):
    return directional_limit(series, [d.name for d in dirs])


def equivariant_suite(params: ModelParams, directions=None, seed: int = 0) -> list:
    n, ell, N = params.n, params.ell, params.N
    if n < 2:
        raise ValueError("the equivariant suite needs n >= 2")
    rat, iso = split_directions(params, directions, seed)
    L, mu = L_mu_series(params)
    out = []
    lab = params.label()

    def residuals():
        for d in rat + iso:
            for i in range(n):
                r = functional_residual(params, d, i)
                if not r.is_zero():
                    return CheckResult(f"functional equation residual {lab}", anchor_fe, False,
                                       f"direction {d.name}, i={i}: {r}")
        return CheckResult(f"functional equation residual {lab}", anchor_fe, True,
                           f"{len(rat + iso)} directions, all i, N={N}")
    anchor_fe = "s~_n(L) - q a^a L^n = s~_n(x), L(0) = x = alpha_i"
    out.append(_guard(f"functional equation residual {lab}", anchor_fe, residuals))

    anchor_pp = "e^{-xi_i/h} Ydot(alpha_i, h, q) = sum_{m>=0} Phi^(m)(alpha_i, q) h^m"

    def principal():
        for d in rat + iso:
            for i in range(n):
                phi_expansion(params, d, i, 1)
        return CheckResult(f"principal part vanishes {lab}", anchor_pp, True,
                           f"{len(rat + iso)} directions, all i, N={N}")
    try:
        out.append(principal())
    except PrincipalPartError as exc:
        out.append(CheckResult(f"principal part vanishes {lab}", anchor_pp, False, str(exc)))

    anchor_y = "Ydot_d(alpha_i, h) = Fdot_d(alpha_i/h)"
    out.append(_guard(f"Ydot = Fdot(alpha/h) {lab}", anchor_y, lambda: CheckResult(
        f"Ydot = Fdot(alpha/h) {lab}", anchor_y,
        all(ydot_matches_fdot(params, d, i) for d in iso for i in range(n)),
        "isotropic rays, all i")))

    anchor_h = "Phi^(0) and c_i xi_i are homogeneous of degree 0 in alpha"

    def homog():
        for d in rat + iso:
            for i in range(n):
                _, xi = solve_xi(params, d, i)
                for S in (phi_expansion(params, d, i, 0)[0], xi * c_coeff(params, d, i)):
                    if not all(c.num.degree <= 0 and c.den.degree == 0 for c in S):
                        return CheckResult(f"degree-0 homogeneity {lab}", anchor_h, False,
                                           f"direction {d.name}, i={i}")
        return CheckResult(f"degree-0 homogeneity {lab}", anchor_h, True, "eps-free on every ray")
    out.append(_guard(f"degree-0 homogeneity {lab}", anchor_h, homog))

    anchor_xi = "xi_n(x, q) = mu(q) x + ..., g_d(x, 0) = 0"
    out.append(_guard(f"xi_i/alpha_i -> mu {lab}", anchor_xi, lambda: _series_check(
        f"xi_i/alpha_i -> mu {lab}", anchor_xi,
        _all_equal([_lim([xi_over_alpha(params, d, i) for d in iso], iso) for i in range(n)]), mu,
        "isotropic rays, all i")))

    anchor_phi = "Phi-dot^(0)(alpha_i, q)|alpha=0 = L(q)^((l+1)/2)"
    target = L.pow_rational(mpq(ell + 1, 2))
    out.append(_guard(f"Phi^(0) -> L^((l+1)/2) {lab}", anchor_phi, lambda: _series_check(
        f"Phi^(0) -> L^((l+1)/2) {lab}", anchor_phi,
        _all_equal([_lim([phi_expansion(params, d, i, 0)[0] for d in iso], iso) for i in range(n)]),
        target, "isotropic rays, all i")))

    anchor_s1 = "sum_i sum_{k != i} xi_i/(alpha_k - alpha_i) |alpha=0 = -C(n,2) mu"

    def pair_sum(d):
        al = d.alphas
        tot = QSeries.const(0, N, d.eps())
        for i in range(n):
            _, xi = solve_xi(params, d, i)
            w = sum((1 / (al[k] - al[i]) for k in range(n) if k != i), d.eps().zero)
            tot = tot + xi * w
        return tot
    out.append(_guard(f"pair sum -> -C(n,2) mu {lab}", anchor_s1, lambda: _series_check(
        f"pair sum -> -C(n,2) mu {lab}", anchor_s1, _lim([pair_sum(d) for d in iso], iso),
        mu * (-binom2(n)), "isotropic rays")))

    anchor_s2 = "sum_k sum_i xi_i/(a_k alpha_i) |alpha=0 = (sum_k n/a_k) mu"

    def deg_sum(d):
        tot = QSeries.const(0, N, d.eps())
        for i in range(n):
            _, xi = solve_xi(params, d, i)
            for ak in params.a:
                tot = tot + xi * (1 / (d.alphas[i] * ak))
        return tot
    out.append(_guard(f"degree sum -> (sum n/a_k) mu {lab}", anchor_s2, lambda: _series_check(
        f"degree sum -> (sum n/a_k) mu {lab}", anchor_s2, _lim([deg_sum(d) for d in iso], iso),
        mu * sum((mpq(n, a) for a in params.a), mpq(0)), "isotropic rays")))
    return out


def _all_equal(series: list) -> QSeries:
    first = series[0]
    for j, S in enumerate(series[1:], 1):
        k = first.first_difference(S)
        if k is not None:
            raise DirectionError(f"vertex {j} disagrees with vertex 0 at q^{k}")
    return first


# ---------------------------------------------------------------------------
# assembled genus-one series

def bbF_direct(params: ModelParams, alpha, d: int, h1, h2):
    """Brute-force value of the q^d coefficient of bbF(alpha/h1, alpha/h2) / (h1 h2 (h1 + h2))."""
    n, ell = params.n, params.ell
    w1, w2 = mpq(alpha) / h1, mpq(alpha) / h2

    def norm(kind, s, w):
        H = M_power(params, kind, s)
        inv = I_series(params, kind, s).inverse()
        return [sum((H[j](w) * inv[k - j] for j in range(k + 1)), mpq(0)) for k in range(d + 1)]

    total = mpq(0)
    blocks = [(("dot", p), ("ddot", n - 1 - p)) for p in range(n - ell)]
    blocks += [(("ddot", n - 1 + p), ("dot", n - p)) for p in range(1, ell + 1)]
    for (k1, s1), (k2, s2) in blocks:
        A, B = norm(k1, s1, w1), norm(k2, s2, w2)
        total += sum((A[j] * B[d - j] for j in range(d + 1)), mpq(0))
    return total / (mpq(h1) * h2 * (h1 + h2))


def mirror_suite(params: ModelParams, directions=None, seed: int = 0) -> list:
    lab = params.label()
    _, iso = split_directions(params, directions, seed)
    out = []
    anchor_bb = "bbF = sum_p M^p Fdot(w1)/I-dot_p M^(n-1-p) Fddot(w2)/I-ddot_(n-1-p) + ..."

    def bb():
        bi = build_bbF(params, 1)
        for d in range(min(params.N, 2) + 1):
            for h1, h2 in ((mpq(1), mpq(1)), (mpq(2), mpq(-1, 3))):
                a, b = bi.evaluate(d, h1, h2), bbF_direct(params, 1, d, h1, h2)
                if a != b:
                    return CheckResult(f"bbF brute force {lab}", anchor_bb, False,
                                       f"q^{d} at ({h1},{h2}): {a} vs {b}")
        return CheckResult(f"bbF brute force {lab}", anchor_bb, True, "q^0..q^2 at two points")
    out.append(_guard(f"bbF brute force {lab}", anchor_bb, bb))
    for alpha in (1, 2):
        out.append(_guard(f"double residue alpha={alpha} {lab}", "Res Res ... = alpha^-1 L^-1 q dA/dq",
                          lambda alpha=alpha: check_good2(params, alpha)))
    anchor_a = "sum_i A_i |alpha=0 = (1/2) q dA/dq"
    out.append(_guard(f"A-part residue route = closed form {lab}", anchor_a, lambda: _series_check(
        f"A-part residue route = closed form {lab}", anchor_a, a_sum_residue(params, 1),
        a_sum_alpha0(params), "alpha=1")))
    anchor_b = "(1/24)((sum_k n/a_k - C(n,2)) mu - n(l+1)/2 log L)"
    detail = "isotropic rays"
    if params.ell > 1:
        detail += f"; literal per-k C(n,2) variant q^1 = {b_block_literal(params)[1] if params.N else 0}"
    out.append(_guard(f"B-block direct = closed {lab}", anchor_b, lambda: _series_check(
        f"B-block direct = closed {lab}", anchor_b, b_sum_alpha0(params, "direct", iso, seed),
        b_block_closed(params), detail)))
    anchor_0 = "G_{1,0} = sum_{d>=1} q^d (...)"
    A, G = A_series(params), G10_series(params)
    out.append(CheckResult(f"zero constant terms {lab}", anchor_0, A[0] == 0 and G[0] == 0,
                           f"A_0={A[0]}, G_0={G[0]}"))
    anchor_m = "q d/dq G_{1,0} = sum_i (A_i + (1/24) q d/dq (c_i xi_i - log Phi^(0)_i)) |alpha=0"
    out.append(_guard(f"q dG/dq = assembled right side {lab}", anchor_m, lambda: _series_check(
        f"q dG/dq = assembled right side {lab}", anchor_m, G.q_ddq(),
        main2_rhs(params, "residue", "direct", 1, iso, seed), "residue A-part, direct B-part")))
    if len(set(params.a)) > 1:
        other = ModelParams(params.n, tuple(reversed(params.a)), params.N)
        out.append(_series_check(f"G10 invariant under permuting a {lab}", "a is a multiset",
                                 G, G10_series(other)))
    return out


def run_suite(suite: str, params: ModelParams, directions=None, seed: int = 0) -> list:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name == "hyper":
            out += hyper_suite(params, seed)
        elif name == "residue":
            out += residue_suite(params, directions, seed)
        elif name == "equivariant":
            out += equivariant_suite(params, directions, seed)
        elif name == "mirror":
            out += mirror_suite(params, directions, seed)
        else:
            raise ValueError(f"unknown suite {name!r}")
    return out
