"""Command-line front end: demos and invariant suites as text or JSON reports."""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import suites
from .calculus import (
    calculus_bound,
    conjugated_calculus,
    diagonal_calculus,
    homomorphism_check,
    idempotent_calculus,
    phi1,
    phi2,
)
from .catalog import CHI_LEQ_0, parse_rule, polynomial_catalog, standard_catalog
from .counterexamples import (
    banach_limit_demo,
    c0_obstruction_demo,
    ell1_iso_demo,
    nonunique_extensions_demo,
)
from .functions import (
    FunctionRule,
    UnsupportedRule,
    ac_norm_proxy,
    bv_norm,
    format_scalar,
    is_continuous_at_limit,
    restrict,
    variation,
)
from .operators import u_iso_c0
from .sets import InvalidArgument, parse_set, sigma0

SCHEMA_VERSION = 1
MAX_SEED = 2**64 - 1

# per-command default truncation size
DEFAULT_N = {
    "set build": 10,
    "norm": 10,
    "calculus check": 10,
    "demo c0-no-extension": 100,
    "demo ell1-iso": 100,
    "demo nonunique-extensions": 20,
    "demo banach-limit": 4,
    "demo extrapolate": 6,
    "check all": 100,
}


DEFAULT_TOL = {"calculus check": 1e-10, "demo ell1-iso": 1e-12}


class UsageError(Exception):
    """Bad parameter; the message names the offending field."""


@dataclass
class RunConfig:
    command: str
    n: int
    tol: float
    seed: int
    trials: int
    format: str = "text"
    output: str | None = None
    set: str | None = None
    rule: str | None = None
    eps: float | None = None

    def validate(self):
        if self.command not in DEFAULT_N:
            raise UsageError(f"command: unknown command {self.command!r}")
        if self.n < 1:
            raise UsageError(f"--n: must be >= 1, got {self.n}")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise UsageError(f"--tol: must be a positive finite number, got {self.tol}")
        if not 0 <= self.seed <= MAX_SEED:
            raise UsageError(f"--seed: must lie in [0, 2^64 - 1], got {self.seed}")
        if self.trials < 1:
            raise UsageError(f"--trials: must be >= 1, got {self.trials}")
        if self.format not in ("text", "json"):
            raise UsageError(f"--format: must be text or json, got {self.format!r}")
        if self.eps is not None and not self.eps >= 0:
            raise UsageError(f"--eps: must be >= 0, got {self.eps}")
        return self

    def to_json(self):
        # the destination does not affect results, so it stays out of the report
        return {k: v for k, v in asdict(self).items() if v is not None and k != "output"}


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, help="truncation size (default depends on the command)")
    p.add_argument("--tol", type=float, help="numerical tolerance")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (64-bit)")
    p.add_argument("--trials", type=int, default=100, help="random trials per check")
    p.add_argument("--format", default="text", help="text or json")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--set", help="sigma0:N, grid:a,b,N or points:t1,t2,...")
    p.add_argument("--rule", help="catalog rule id, e.g. chi_leq_0 or poly:1,0")
    p.add_argument("--eps", type=float, help="constraint slack for the c0 demo")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="wellbounded",
        description="BV/AC functional calculi at finite truncation scale.")
    sub = parser.add_subparsers(dest="group", metavar="COMMAND")

    set_p = sub.add_parser("set", help="set models")
    set_sub = set_p.add_subparsers(dest="action", metavar="ACTION")
    set_sub.add_parser("build", parents=[common], help="build and print a set model")

    sub.add_parser("norm", parents=[common], help="BV/AC norms of a rule on a set")

    calc_p = sub.add_parser("calculus", help="functional calculi")
    calc_sub = calc_p.add_subparsers(dest="action", metavar="ACTION")
    calc_sub.add_parser("check", parents=[common], help="homomorphism and bound reports")

    demo_p = sub.add_parser("demo", help="counterexample demonstrations")
    demo_sub = demo_p.add_subparsers(dest="action", metavar="ACTION")
    for name, text in [
        ("c0-no-extension", "tail and constraint defects on c0"),
        ("ell1-iso", "l^1 = AC(sigma0) isomorphism bounds"),
        ("nonunique-extensions", "two BV extensions that differ on chi_{0}"),
        ("banach-limit", "limit-functional model operators"),
        ("extrapolate", "Riesz-Thorin, duality and calculus transfer"),
    ]:
        demo_sub.add_parser(name, parents=[common], help=text)

    check_p = sub.add_parser("check", help="invariant suites")
    check_sub = check_p.add_subparsers(dest="action", metavar="ACTION")
    check_sub.add_parser("all", parents=[common], help="run every suite")
    return parser


# ---------------------------------------------------------------------------
# commands


def _rule(cfg: RunConfig, default: str | None = None) -> FunctionRule:
    text = cfg.rule or default
    if text is None:
        raise UsageError("--rule: required for this command")
    try:
        return parse_rule(text)
    except (InvalidArgument, UnsupportedRule, ValueError) as exc:
        raise UsageError(f"--rule: {exc}") from None


def _set(cfg: RunConfig):
    if cfg.set is None:
        return sigma0(cfg.n)
    try:
        return parse_set(cfg.set)
    except InvalidArgument as exc:
        raise UsageError(f"--set: {exc}") from None


def cmd_set_build(cfg):
    s = _set(cfg)
    return [{"check": "set build", "size": len(s), "set": s.to_json(), "pass": True}]


def cmd_norm(cfg):
    s = _set(cfg)
    rule = _rule(cfg)
    f = restrict(rule, s)
    ac = ac_norm_proxy(rule, s)
    cont = is_continuous_at_limit(rule, 10**9, 3, 1e-6)
    return [{
        "check": "norm",
        "rule": rule.rule_id,
        "set": s.family,
        "supNorm": f.sup_norm,
        "variation": variation(f),
        "bvNorm": bv_norm(f),
        "acNorm": ac,
        "continuity": cont.to_json(),
        "pass": True,
    }]


def cmd_calculus_check(cfg):
    tol = cfg.tol
    s = _set(cfg)
    catalog = [_rule(cfg)] if cfg.rule else standard_catalog() + polynomial_catalog()
    diag = diagonal_calculus(s)
    calculi = [diag]
    if cfg.set is None:
        U, Ui = u_iso_c0(cfg.n)
        calculi.append(conjugated_calculus(diag, U, Ui))
    calculi += [phi1(max(2, cfg.n)), phi2(max(2, cfg.n)),
                idempotent_calculus(seed=cfg.seed % 2**32)]
    out = []
    for c in calculi:
        rep = homomorphism_check(c, catalog, tol).to_json()
        rep["bvBound"] = calculus_bound(c, catalog, "bv")
        try:
            rep["acBound"] = calculus_bound(c, catalog, "ac")
        except InvalidArgument:
            rep["acBound"] = None
        out.append(rep)
    return out


def cmd_c0(cfg):
    rule = _rule(cfg, default=None) if cfg.rule else CHI_LEQ_0
    eps = cfg.eps if cfg.eps is not None else 0.0
    return [c0_obstruction_demo(cfg.n, eps, rule=rule).to_json()]


def cmd_ell1(cfg):
    n = cfg.n + cfg.n % 2
    if n < 4:
        raise UsageError(f"--n: the l^1 isomorphism needs n >= 4, got {cfg.n}")
    tol = cfg.tol
    return [ell1_iso_demo(n, cfg.trials, seed=cfg.seed, tol=tol).to_json()]


def cmd_nonunique(cfg):
    if cfg.n < 2:
        raise UsageError(f"--n: must be >= 2 for this demo, got {cfg.n}")
    return [nonunique_extensions_demo(cfg.n).to_json()]


def cmd_banach(cfg):
    return [banach_limit_demo(cfg.n).to_json()]


def cmd_extrapolate(cfg):
    tol = cfg.tol
    rep = suites.extrapolation_suite(n_rt=cfg.trials, n_dual=max(1, cfg.trials // 4),
                                     trials=cfg.trials, seed=cfg.seed, tol=tol)
    return [rep.to_json()]


def cmd_check_all(cfg):
    tol = cfg.tol
    return [r.to_json() for r in suites.check_all(cfg.seed, tol, cfg.trials, cfg.n)]


COMMANDS = {
    "set build": cmd_set_build,
    "norm": cmd_norm,
    "calculus check": cmd_calculus_check,
    "demo c0-no-extension": cmd_c0,
    "demo ell1-iso": cmd_ell1,
    "demo nonunique-extensions": cmd_nonunique,
    "demo banach-limit": cmd_banach,
    "demo extrapolate": cmd_extrapolate,
    "check all": cmd_check_all,
}


# ---------------------------------------------------------------------------
# output


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_scalar(x)
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    return str(x)


def render_json(cfg: RunConfig, results: list) -> str:
    doc = {
        "schemaVersion": SCHEMA_VERSION,
        "command": cfg.command,
        "config": cfg.to_json(),
        "results": results,
        "pass": all(r.get("pass", False) for r in results),
    }
    return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def render_text(cfg: RunConfig, results: list) -> str:
    lines = [f"wellbounded {cfg.command}"]
    for r in results:
        status = "PASS" if r.get("pass") else "FAIL"
        label = r.get("check", "?")
        if "calculus" in r:
            label += f" [{r['calculus']}]"
        lines.append(f"{status}  {label}")
        for key, val in r.items():
            if key in ("check", "pass", "checks", "calculus") or isinstance(val, (dict, list)):
                continue
            if val is not None:
                lines.append(f"      {key} {_fmt(val)}")
        for name, ok in r.get("checks", {}).items():
            lines.append(f"      [{'ok' if ok else 'FAILED'}] {name}")
    overall = all(r.get("pass", False) for r in results)
    lines.append("all checks passed" if overall else "SOME CHECKS FAILED")
    return "\n".join(lines) + "\n"


def _config_from_args(ns) -> RunConfig:
    command = ns.group if ns.group in ("norm",) else f"{ns.group} {ns.action}"
    n = ns.n if ns.n is not None else DEFAULT_N[command]
    tol = ns.tol if ns.tol is not None else DEFAULT_TOL.get(command, 1e-9)
    return RunConfig(command=command, n=n, tol=tol, seed=ns.seed, trials=ns.trials,
                     format=ns.format, output=ns.output, set=ns.set, rule=ns.rule,
                     eps=ns.eps)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.group is None or (ns.group != "norm" and getattr(ns, "action", None) is None):
        parser.print_usage(sys.stderr)
        print("wellbounded: error: missing command", file=sys.stderr)
        return 2
    try:
        cfg = _config_from_args(ns).validate()
        results = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"wellbounded: error: {exc}", file=sys.stderr)
        return 2
    except InvalidArgument as exc:
        print(f"wellbounded: error: invalid parameter: {exc}", file=sys.stderr)
        return 2

    text = render_json(cfg, results) if cfg.format == "json" else render_text(cfg, results)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(r.get("pass", False) for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
