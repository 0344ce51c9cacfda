"""String identifiers for catalog rules and the shared test catalogs."""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .functions import (
    IDENTITY,
    ONE,
    ZERO,
    FunctionRule,
    IntervalIndicator,
    Named,
    PointIndicator,
    Polynomial,
)
from .sets import InvalidArgument

_NUM = r"-?(?:inf|\d+(?:/\d+)?(?:\.\d+)?)"
_HALF_LINE = re.compile(rf"chi_(leq|lt|geq|gt)_({_NUM})$")
_POINT = re.compile(rf"chi_point_({_NUM})$")
_INTERVAL = re.compile(rf"chi:([\[(])({_NUM}),({_NUM})([\])])$")


def _number(s: str):
    if s in ("inf", "-inf"):
        return math.inf if s == "inf" else -math.inf
    return Fraction(s)


def chi_leq(a) -> FunctionRule:
    return IntervalIndicator(-math.inf, a, True, True)


def chi_gt(a) -> FunctionRule:
    return IntervalIndicator(a, math.inf, False, True)


CHI_LEQ_0 = chi_leq(0)
CHI_GT_0 = chi_gt(0)
CHI_POINT_0 = PointIndicator(0)
CHI_0_1 = IntervalIndicator(0, 1, False, True)

ALIASES = {
    "one": ONE,
    "zero": ZERO,
    "id": IDENTITY,
    "chi_0_1": Named("chi_0_1", CHI_0_1),
    "ramp_pos": Named("ramp_pos", IDENTITY * CHI_GT_0),
    "complex_mix": Named("complex_mix", 1j * Polynomial((1, 0, 0)) + CHI_LEQ_0),
}


def parse_rule(text: str) -> FunctionRule:
    """Turn a rule identifier such as ``chi_leq_0`` or ``poly:1,0`` into a rule."""
    text = text.strip()
    if text in ALIASES:
        return ALIASES[text]
    try:
        if text.startswith("poly:"):
            return Polynomial(tuple(Fraction(c) for c in text[5:].split(",")))
        if m := _HALF_LINE.match(text):
            kind, a = m.group(1), _number(m.group(2))
            if kind in ("leq", "lt"):
                return IntervalIndicator(-math.inf, a, True, kind == "leq")
            return IntervalIndicator(a, math.inf, kind == "geq", True)
        if m := _POINT.match(text):
            return PointIndicator(_number(m.group(1)))
        if m := _INTERVAL.match(text):
            return IntervalIndicator(_number(m.group(2)), _number(m.group(3)),
                                     m.group(1) == "[", m.group(4) == "]")
    except (ValueError, ZeroDivisionError):
        pass
    raise InvalidArgument(f"unknown rule identifier {text!r}")


STANDARD_IDS = (
    "one",
    "id",
    "poly:1,0,0",
    "poly:2,0,-1,1/3",
    "chi_leq_0",
    "chi_gt_0",
    "chi_point_0",
    "chi_point_-1",
    "chi_leq_-1/3",
    "chi:[-1/3,1/4]",
    "ramp_pos",
    "complex_mix",
)


def standard_catalog() -> list[FunctionRule]:
    """Twelve rules mixing polynomials, indicators, products and a complex member."""
    return [parse_rule(r) for r in STANDARD_IDS]


def polynomial_catalog(max_degree: int = 5) -> list[FunctionRule]:
    rules = [ONE]
    for d in range(1, max_degree + 1):
        rules.append(Polynomial((1,) + (0,) * d))
    rules.append(Polynomial((Fraction(1, 2), -1, 3)))
    rules.append(Polynomial((-2, 0, Fraction(1, 3), 1)))
    return rules


def continuous_catalog() -> list[FunctionRule]:
    return [r for r in standard_catalog() if r.is_continuous_at_zero()]
