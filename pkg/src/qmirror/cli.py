"""Command-line front end: ``series``, ``g1`` and ``verify``.

Exit codes: 0 success, 1 a verified identity failed, 2 usage/validation error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field

from gmpy2 import mpq

from .equivariant import AlphaDirection
from .exactnum import format_rational, to_rational
from .hypergeom import I_series, L_mu_series, ModelParams
from .mirror import A_series, G10_series, _Iddot, b_block_closed, main2_rhs
from .suites import SUITES, run_suite

SERIES_NAMES = ("L", "mu", "Idot:p", "Iddot:p", "A", "G10", "B_sum", "main2_rhs")


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int
    a: tuple
    order: int = 4
    directions: tuple = field(default=())
    seed: int = 0
    format: str = "json"
    suite: str = "all"

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.n, self.a, self.order)


def parse_int_list(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def parse_direction(text: str, n: int) -> AlphaDirection:
    """``c1,c2,..`` (rationals) or ``zeta:k:scale`` (isotropic ray)."""
    if text.startswith("zeta:"):
        parts = text.split(":")
        try:
            k = int(parts[1])
            scale = to_rational(parts[2]) if len(parts) > 2 else mpq(1)
        except (IndexError, ValueError, ZeroDivisionError):
            raise UsageError(f"bad isotropic direction {text!r}; expected zeta:k[:scale]") from None
        return AlphaDirection.isotropic(n, k, scale)
    try:
        vals = [to_rational(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad direction {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"direction {text!r} has {len(vals)} entries, model needs n={n}")
    return AlphaDirection.rational(vals)


def build_config(ns) -> RunConfig:
    a = parse_int_list(ns.a)
    if ns.order < 0:
        raise UsageError(f"order must be >= 0 (got {ns.order})")
    if not 0 <= ns.seed < 2 ** 64:
        raise UsageError("seed must be an unsigned 64-bit integer")
    ModelParams(ns.n, a, ns.order)  # validation
    try:
        dirs = tuple(parse_direction(t, ns.n) for t in (ns.direction or []))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return RunConfig(ns.n, a, ns.order, dirs, ns.seed, ns.format, getattr(ns, "suite", "all"))


def compute_series(cfg: RunConfig, name: str):
    P = cfg.params
    if name in ("L", "mu"):
        L, mu = L_mu_series(P)
        return L if name == "L" else mu
    if name.startswith(("Idot:", "Iddot:")):
        kind, _, p = name.partition(":")
        try:
            s = int(p)
        except ValueError:
            raise UsageError(f"bad I-series index in {name!r}") from None
        if s < 0:
            raise UsageError(f"I-series index must be >= 0 (got {s})")
        return I_series(P, "dot", s) if kind == "Idot" else _Iddot(P, s)
    if name == "A":
        return A_series(P)
    if name == "G10":
        return G10_series(P)
    if name == "B_sum":
        return b_block_closed(P)
    if name == "main2_rhs":
        return main2_rhs(P)
    raise UsageError(f"unknown series {name!r}; choose from {', '.join(SERIES_NAMES)}")


def _model(cfg: RunConfig) -> dict:
    return {"n": cfg.n, "a": list(cfg.a)}


def render_series(cfg: RunConfig, name: str, S) -> str:
    coeffs = [format_rational(c) for c in S]
    if cfg.format == "json":
        doc = {"model": _model(cfg), "order": cfg.order, "seed": cfg.seed,
               "series": {"name": name, "coeffs": coeffs}}
        return json.dumps(doc, indent=2) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "numerator", "denominator"])
        for k, c in enumerate(S):
            c = to_rational(c)
            w.writerow([k, int(c.numerator), int(c.denominator)])
        return buf.getvalue()
    lines = [f"# {name} for n={cfg.n} a={list(cfg.a)} order={cfg.order} seed={cfg.seed}"]
    lines += [f"q^{k}: {c}" for k, c in enumerate(coeffs)]
    return "\n".join(lines) + "\n"


def render_report(cfg: RunConfig, checks) -> str:
    if cfg.format == "json":
        doc = {"model": _model(cfg), "suite": cfg.suite,
               "checks": [{"name": c.name, "paper_ref": c.anchor, "status": c.status,
                           "detail": c.detail} for c in checks]}
        return json.dumps(doc, indent=2) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "paper_ref", "status", "detail"])
        for c in checks:
            w.writerow([c.name, c.anchor, c.status, c.detail])
        return buf.getvalue()
    lines = [f"{c.status.upper():4}  {c.name}  [{c.anchor}]  {c.detail}" for c in checks]
    failed = sum(not c.ok for c in checks)
    lines.append(f"{len(checks) - failed}/{len(checks)} passed")
    return "\n".join(lines) + "\n"


def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=5, help="projective space P^(n-1) (default 5)")
    p.add_argument("--a", default=None, help="comma-separated degrees a_k (default: n)")
    p.add_argument("--order", type=int, default=4, help="truncation order N (default 4)")
    p.add_argument("--direction", action="append",
                   help="ray for alpha: c1,..,cn or zeta:k[:scale]; repeatable")
    p.add_argument("--seed", type=int, default=0, help="seed for generated directions (default 0)")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmirror",
                                     description="Exact genus-one mirror series and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    ps = sub.add_parser("series", help="print the coefficients of a named series")
    ps.add_argument("name", help=", ".join(SERIES_NAMES))
    _common(ps)
    pg = sub.add_parser("g1", help="alias for 'series G10'")
    _common(pg)
    pv = sub.add_parser("verify", help="run identity checks")
    _common(pv)
    pv.add_argument("--suite", choices=("all",) + SUITES, default="all")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    ns = parser.parse_args(argv)
    if ns.a is None:
        ns.a = str(ns.n)
    try:
        cfg = build_config(ns)
        if ns.command == "verify":
            checks = run_suite(cfg.suite, cfg.params, cfg.directions, cfg.seed)
            sys.stdout.write(render_report(cfg, checks))
            return 0 if all(c.ok for c in checks) else 1
        name = "G10" if ns.command == "g1" else ns.name
        sys.stdout.write(render_series(cfg, name, compute_series(cfg, name)))
        return 0
    except ValueError as exc:
        # UsageError and model validation errors alike
        sys.stderr.write(f"qmirror: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
