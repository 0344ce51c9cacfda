"""Rule-defined scalar functions and their restrictions to compact set models.

Rules are evaluated exactly whenever the argument and the coefficients are
rational, so that indicator boundaries are never blurred by rounding.  Every
rule also knows its one-sided limits at 0, which the Phi_2 calculus and the
continuity checks use instead of numerical extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .sets import CompactRealSet, InvalidArgument


class SetMismatch(ValueError):
    """Raised when combining functions living on different sets."""


class UnsupportedRule(ValueError):
    """Raised when a rule cannot provide an exact limit."""


def format_scalar(c) -> str:
    if isinstance(c, GaussianRational):
        return f"({c.re}{'+' if c.im >= 0 else '-'}{abs(c.im)}j)"
    if isinstance(c, complex) or isinstance(c, np.complexfloating):
        c = complex(c)
        if c.imag == 0:
            return format_scalar(c.real)
        return f"({c.real:g}{c.imag:+g}j)"
    if isinstance(c, float):
        if math.isinf(c):
            return "inf" if c > 0 else "-inf"
        if c.is_integer():
            return str(int(c))
        return repr(c)
    return str(Fraction(c))


class GaussianRational:
    """Exact complex number re + im*i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return None

    def _simplify(self):
        return self.re if self.im == 0 else self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)._simplify()

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)._simplify()

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def conjugate(self):
        return GaussianRational(self.re, -self.im)._simplify()

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


def _exact(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    if isinstance(c, float) and math.isfinite(c):
        return Fraction(c)
    if isinstance(c, complex):
        return GaussianRational(Fraction(c.real), Fraction(c.imag))._simplify()
    return c


class FunctionRule:
    """Closed-form scalar function on R from a fixed catalog.

    Subclasses implement ``__call__`` and ``limit(side)``, the one-sided limit
    at 0 (``side=+1`` is the limit along 1/k, ``side=-1`` along -1/k).
    """

    def __call__(self, t):
        raise NotImplementedError

    def limit(self, side: int = 1):
        raise NotImplementedError

    @property
    def rule_id(self) -> str:
        raise NotImplementedError

    def __add__(self, other):
        return Sum(self, as_rule(other))

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, FunctionRule):
            return Product(self, other)
        return Scale(_exact(other), self)

    __rmul__ = __mul__

    def __sub__(self, other):
        return Sum(self, Scale(Fraction(-1), as_rule(other)))

    def __rsub__(self, other):
        return Sum(as_rule(other), Scale(Fraction(-1), self))

    def __neg__(self):
        return Scale(Fraction(-1), self)

    def __repr__(self):
        return f"<rule {self.rule_id}>"

    def is_continuous_at_zero(self) -> bool:
        """Exact test: both one-sided limits at 0 equal the value at 0."""
        v = self(Fraction(0))
        return self.limit(1) == v and self.limit(-1) == v


def as_rule(x) -> FunctionRule:
    if isinstance(x, FunctionRule):
        return x
    return Polynomial((_exact(x),))


@dataclass(frozen=True, repr=False)
class Polynomial(FunctionRule):
    """Polynomial with coefficients listed from the highest degree down.

    ``Polynomial((1, 0))`` is t -> t, matching the ``poly:1,0`` identifier.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(_exact(c) for c in self.coeffs) or (Fraction(0),)
        object.__setattr__(self, "coeffs", cs)

    def __call__(self, t):
        acc = Fraction(0) if isinstance(t, (int, Fraction)) else 0.0
        for c in self.coeffs:
            acc = acc * t + c
        return acc

    def limit(self, side=1):
        return self(Fraction(0))

    @property
    def rule_id(self):
        return "poly:" + ",".join(format_scalar(c) for c in self.coeffs)


@dataclass(frozen=True, repr=False)
class IntervalIndicator(FunctionRule):
    """Characteristic function of an interval; endpoints may be +-inf."""

    a: object
    b: object
    closed_left: bool = True
    closed_right: bool = True

    def __post_init__(self):
        object.__setattr__(self, "a", _exact(self.a))
        object.__setattr__(self, "b", _exact(self.b))

    def __call__(self, t):
        lo = t >= self.a if self.closed_left else t > self.a
        hi = t <= self.b if self.closed_right else t < self.b
        return Fraction(1) if (lo and hi) else Fraction(0)

    def limit(self, side=1):
        # (0, d) or (-d, 0) lies inside the interval for small d
        if side > 0:
            inside = self.a <= 0 < self.b
        else:
            inside = self.a < 0 <= self.b
        return Fraction(1) if inside else Fraction(0)

    @property
    def rule_id(self):
        a, b = format_scalar(self.a), format_scalar(self.b)
        if self.a == -math.inf:
            return f"chi_{'leq' if self.closed_right else 'lt'}_{b}"
        if self.b == math.inf:
            return f"chi_{'geq' if self.closed_left else 'gt'}_{a}"
        left = "[" if self.closed_left else "("
        right = "]" if self.closed_right else ")"
        return f"chi:{left}{a},{b}{right}"


@dataclass(frozen=True, repr=False)
class PointIndicator(FunctionRule):
    a: object

    def __post_init__(self):
        object.__setattr__(self, "a", _exact(self.a))

    def __call__(self, t):
        return Fraction(1) if t == self.a else Fraction(0)

    def limit(self, side=1):
        return Fraction(0)

    @property
    def rule_id(self):
        return f"chi_point_{format_scalar(self.a)}"


@dataclass(frozen=True, repr=False)
class Sum(FunctionRule):
    f: FunctionRule
    g: FunctionRule

    def __call__(self, t):
        return self.f(t) + self.g(t)

    def limit(self, side=1):
        return self.f.limit(side) + self.g.limit(side)

    @property
    def rule_id(self):
        return f"({self.f.rule_id}+{self.g.rule_id})"


@dataclass(frozen=True, repr=False)
class Product(FunctionRule):
    f: FunctionRule
    g: FunctionRule

    def __call__(self, t):
        return self.f(t) * self.g(t)

    def limit(self, side=1):
        return self.f.limit(side) * self.g.limit(side)

    @property
    def rule_id(self):
        return f"({self.f.rule_id}*{self.g.rule_id})"


@dataclass(frozen=True, repr=False)
class Scale(FunctionRule):
    c: object
    f: FunctionRule

    def __post_init__(self):
        object.__setattr__(self, "c", _exact(self.c))

    def __call__(self, t):
        return self.c * self.f(t)

    def limit(self, side=1):
        return self.c * self.f.limit(side)

    @property
    def rule_id(self):
        return f"{format_scalar(self.c)}*{self.f.rule_id}"


@dataclass(frozen=True, repr=False)
class Named(FunctionRule):
    """A rule carrying a stable registry identifier."""

    name: str
    rule: FunctionRule

    def __call__(self, t):
        return self.rule(t)

    def limit(self, side=1):
        return self.rule.limit(side)

    @property
    def rule_id(self):
        return self.name


ONE = Polynomial((1,))
ZERO = Polynomial((0,))
IDENTITY = Polynomial((1, 0))


# ---------------------------------------------------------------------------
# functions on a set


@dataclass(frozen=True)
class BVFunction:
    """Values of a scalar function at the points of a ``CompactRealSet``."""

    set: CompactRealSet
    values: tuple
    source_rule: FunctionRule | None = None

    def __post_init__(self):
        if len(self.values) != len(self.set):
            raise InvalidArgument(
                f"{len(self.values)} values for a set with {len(self.set)} points"
            )
        object.__setattr__(self, "values", tuple(self.values))

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array([complex(v) for v in self.values], dtype=complex)
        if not np.any(arr.imag):
            arr = arr.real.copy()
        arr.flags.writeable = False
        return arr

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.array)))

    def vanishes_on(self, pred) -> bool:
        return all(v == 0 for p, v in zip(self.set.points, self.values) if pred(p))

    def to_json(self) -> dict:
        doc = self.set.to_json()
        doc["values"] = [[_part_to_json(re), _part_to_json(im)]
                         for re, im in map(_parts, self.values)]
        if self.source_rule is not None:
            doc["rule"] = self.source_rule.rule_id
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> BVFunction:
        s = CompactRealSet.from_json(doc)
        vals = []
        for re, im in doc["values"]:
            re, im = _part_from_json(re), _part_from_json(im)
            if im == 0:
                vals.append(re)
            elif isinstance(re, Fraction) and isinstance(im, Fraction):
                vals.append(GaussianRational(re, im))
            else:
                vals.append(complex(re, im))
        return cls(s, tuple(vals))


def _parts(v):
    if isinstance(v, GaussianRational):
        return v.re, v.im
    if isinstance(v, complex):
        return v.real, v.imag
    return v, Fraction(0)


def _part_to_json(x):
    # Fractions keep the {"num","den"} form used for set points
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return {"num": x.numerator, "den": x.denominator}
    return float(x)


def _part_from_json(x):
    if isinstance(x, dict):
        return Fraction(x["num"], x["den"])
    return x


def restrict(rule: FunctionRule, s: CompactRealSet) -> BVFunction:
    return BVFunction(s, tuple(rule(t) for t in s.points), rule)


def variation(f: BVFunction) -> float:
    """Total variation over the ordered points (sum of consecutive jumps).

    Rational values are summed exactly and rounded once, so the result does
    not depend on summation order.  Gaussian rationals get exact differences
    and one rounding per jump; float input goes straight through fsum.
    """
    vals = f.values
    if all(isinstance(v, (int, Fraction, GaussianRational)) for v in vals):
        return exact_total(exact_abs(_exact(b) - _exact(a)) for a, b in zip(vals, vals[1:]))
    return math.fsum(np.abs(np.diff(f.array)).tolist())


def _rational_sqrt(q: Fraction):
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def exact_abs(z):
    """|z| as a Fraction when it is rational, else the correctly rounded float."""
    if isinstance(z, (int, Fraction)):
        return abs(Fraction(z))
    sq = z.re * z.re + z.im * z.im
    root = _rational_sqrt(sq)
    return root if root is not None else math.hypot(z.re, z.im)


def exact_total(terms) -> float:
    # floats are dyadic rationals, so the whole sum is exact and rounded once
    return float(sum((Fraction(t) for t in terms), Fraction(0)))


def bv_norm(f: BVFunction) -> float:
    return f.sup_norm + variation(f)


def _check_same_set(f: BVFunction, g: BVFunction):
    if f.set != g.set:
        raise SetMismatch("functions live on different sets")


def _combine(f, g, op, rule_op):
    rule = None
    if f.source_rule is not None and g.source_rule is not None:
        rule = rule_op(f.source_rule, g.source_rule)
    return BVFunction(f.set, tuple(op(a, b) for a, b in zip(f.values, g.values)), rule)


def add(f: BVFunction, g: BVFunction) -> BVFunction:
    _check_same_set(f, g)
    return _combine(f, g, lambda a, b: a + b, Sum)


def mul(f: BVFunction, g: BVFunction) -> BVFunction:
    _check_same_set(f, g)
    return _combine(f, g, lambda a, b: a * b, Product)


def scale(c, f: BVFunction) -> BVFunction:
    c = _exact(c)
    rule = Scale(c, f.source_rule) if f.source_rule is not None else None
    return BVFunction(f.set, tuple(c * v for v in f.values), rule)


@dataclass(frozen=True)
class ContinuityReport:
    continuous: bool
    defect: float
    n: int
    m: int
    tol: float

    def __bool__(self):
        return self.continuous

    def to_json(self):
        return {"continuous": self.continuous, "defect": self.defect,
                "n": self.n, "m": self.m, "tol": self.tol}


def sigma0_tail(n: int, m: int) -> tuple[list, list]:
    """The ``m`` negative and ``m`` positive points of sigma0(n) nearest to 0."""
    neg, pos = [], []
    k = n
    while k >= 1 and (len(neg) < m or len(pos) < m):
        t = Fraction((-1) ** k, k)
        (pos if k % 2 == 0 else neg).append(t)
        k -= 1
    return neg[:m], pos[:m]


def is_continuous_at_limit(rule: FunctionRule, n: int, m: int, tol: float) -> ContinuityReport:
    """Compare ``rule`` at the ``m`` points of each sign of sigma0(n) closest to 0 with rule(0).

    Only the tail points are generated, so ``n`` can be very large.
    """
    if m >= n:
        raise InvalidArgument(f"need m < n tail samples, got m={m}, n={n}")
    if m < 1:
        raise InvalidArgument("m must be at least 1")
    neg, pos = sigma0_tail(n, m)
    at0 = rule(Fraction(0))
    defect = max(abs(complex(rule(t) - at0)) for t in neg + pos)
    return ContinuityReport(defect <= tol, float(defect), n, m, tol)


def ac_norm_proxy(rule: FunctionRule, s: CompactRealSet, n: int = 10**9, m: int = 3,
                  tol: float = 1e-6) -> float | None:
    """BV norm of ``rule`` on ``s`` if the rule passes the continuity test, else None."""
    if not is_continuous_at_limit(rule, n, m, tol):
        return None
    return bv_norm(restrict(rule, s))

