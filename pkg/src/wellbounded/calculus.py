"""Functional calculi f -> f(T) for the shipped operator models.

Each calculus can evaluate a rule to a floating point ``OperatorModel`` and,
where the model allows it, to an exact matrix of Fractions (``exact``) used
by the checks that must hold with zero defect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

import numpy as np

from .functions import (
    ONE,
    BVFunction,
    FunctionRule,
    UnsupportedRule,
    ac_norm_proxy,
    bv_norm,
    restrict,
)
from .operators import (
    OperatorModel,
    lp_model,
    matrix_p_norm,
    multiplication_operator,
    operator_norm,
    sup_model,
)
from .sets import CompactRealSet, InvalidArgument


def to_numeric(values) -> np.ndarray:
    """Exact scalars (Fractions, ints, complex) to a float or complex array."""
    arr = np.array(values, dtype=object)
    out = np.array([complex(v) for v in arr.ravel()], dtype=complex).reshape(arr.shape)
    if not np.any(out.imag):
        return out.real.copy()
    return out


def exact_identity(k: int) -> np.ndarray:
    I = np.full((k, k), Fraction(0), dtype=object)
    for i in range(k):
        I[i, i] = Fraction(1)
    return I


def exact_diag(values) -> np.ndarray:
    D = np.full((len(values), len(values)), Fraction(0), dtype=object)
    for i, v in enumerate(values):
        D[i, i] = v
    return D


def exact_adjoint(M: np.ndarray) -> np.ndarray:
    return np.vectorize(lambda v: v.conjugate(), otypes=[object])(M).T


class CalculusMap:
    """Base class: subclasses define ``exact`` or override ``evaluate``."""

    name = "calculus"

    def __init__(self, operator: OperatorModel | None, s: CompactRealSet):
        if operator is not None:
            self.operator = operator
        self.set = s

    def exact(self, f) -> np.ndarray | None:
        return None

    def evaluate(self, f) -> OperatorModel:
        M = self.exact(f)
        return OperatorModel(to_numeric(M), self.operator.domain, self.operator.codomain)

    def __call__(self, f) -> np.ndarray:
        return self.evaluate(f).matrix

    def apply(self, f, x) -> np.ndarray:
        return self(f) @ np.asarray(x)

    def restrict(self, f) -> BVFunction:
        if isinstance(f, BVFunction):
            return f
        return restrict(f, self.set)

    def __repr__(self):
        return f"<{self.name} on {self.operator.domain.label()}>"


class DiagonalCalculus(CalculusMap):
    """f(T) = diag(f(t_1), ..., f(t_k)) for a multiplication-type model."""

    name = "diagonal"

    def __init__(self, operator: OperatorModel, s: CompactRealSet | None = None):
        if operator.diagonal is None:
            raise InvalidArgument("diagonal calculus needs a model with an exact diagonal")
        if s is None:
            s = CompactRealSet(tuple(sorted(set(operator.diagonal))))
        super().__init__(operator, s)

    def entries(self, f) -> list:
        if isinstance(f, BVFunction):
            if f.set != self.set:
                raise InvalidArgument("function lives on a different set")
            lookup = dict(zip(f.set.points, f.values))
            return [lookup[t] for t in self.operator.diagonal]
        return [f(t) for t in self.operator.diagonal]

    def exact(self, f):
        return exact_diag(self.entries(f))

    def evaluate(self, f):
        return OperatorModel(np.diag(to_numeric(self.entries(f))),
                             self.operator.domain, self.operator.codomain)

    def apply(self, f, x):
        return to_numeric(self.entries(f)) * np.asarray(x)


def diagonal_calculus(s: CompactRealSet) -> DiagonalCalculus:
    return DiagonalCalculus(multiplication_operator(s), s)


class ConjugatedCalculus(CalculusMap):
    """f(T) = iso_inv . base(f) . iso, the base calculus seen through an isomorphism."""

    name = "conjugated"

    def __init__(self, base: CalculusMap, iso: OperatorModel, iso_inv: OperatorModel,
                 tol: float = 1e-12, probes: int = 4):
        if iso_inv.shape != iso.shape[::-1] or iso.shape[0] != iso.shape[1]:
            raise InvalidArgument("iso and iso_inv must be square and of matching size")
        # random probes keep the check O(k^2); a failed inverse shows up in any of them
        rng = np.random.default_rng(12345)
        for _ in range(probes):
            x = rng.standard_normal(iso.shape[1])
            y = rng.standard_normal(iso.shape[0])
            scale = 1 + np.abs(x).max() + np.abs(y).max()
            if (np.max(np.abs(iso_inv.matrix @ (iso.matrix @ x) - x)) > tol * scale
                    or np.max(np.abs(iso.matrix @ (iso_inv.matrix @ y) - y)) > tol * scale):
                raise InvalidArgument("iso and iso_inv are not mutually inverse")
        super().__init__(None, base.set)
        self.base, self.iso, self.iso_inv = base, iso, iso_inv

    @cached_property
    def operator(self) -> OperatorModel:
        M = self.iso_inv.matrix @ self.base.operator.matrix @ self.iso.matrix
        return OperatorModel(M, self.iso.domain, self.iso.domain)

    def evaluate(self, f):
        M = self.iso_inv.matrix @ self.base(f) @ self.iso.matrix
        return OperatorModel(M, self.iso.domain, self.iso.domain)

    def apply(self, f, x):
        return self.iso_inv.matrix @ self.base.apply(f, self.iso.matrix @ np.asarray(x))


def conjugated_calculus(base, iso, iso_inv) -> ConjugatedCalculus:
    return ConjugatedCalculus(base, iso, iso_inv)


class PhiCalculus(DiagonalCalculus):
    """Two BV extensions for T(x_0, x_1, ...) = (0, x_1, x_2/2, ...) on l^2.

    Coordinate 0 receives f(0) (``use_limit=False``) or the limit of
    f(1/k) (``use_limit=True``); coordinate k >= 1 receives f(1/k).
    """

    def __init__(self, n: int, use_limit: bool):
        if n < 2:
            raise InvalidArgument(f"n must be at least 2, got {n}")
        pts = (Fraction(0),) + tuple(Fraction(1, k) for k in range(1, n + 1))
        tag = lp_model(2, n + 1)
        T = OperatorModel(np.diag([float(t) for t in pts]), tag, tag, diagonal=pts)
        CalculusMap.__init__(self, T, CompactRealSet(tuple(sorted(pts)), (Fraction(0),)))
        self.use_limit = use_limit
        self.name = "phi2" if use_limit else "phi1"

    def entries(self, f):
        if isinstance(f, BVFunction):
            raise UnsupportedRule(f"{self.name} needs a catalog rule, not sampled values")
        vals = [f(t) for t in self.operator.diagonal]
        if self.use_limit:
            try:
                vals[0] = f.limit(1)
            except NotImplementedError:
                raise UnsupportedRule(f"rule {f!r} has no exact limit along 1/k") from None
        return vals


def phi1(n: int) -> PhiCalculus:
    return PhiCalculus(n, use_limit=False)


def phi2(n: int) -> PhiCalculus:
    return PhiCalculus(n, use_limit=True)


class IdempotentCalculus(CalculusMap):
    """f -> f(0)(I - P) + f(1)P for an idempotent P, a calculus over {0, 1}."""

    name = "idempotent"

    def __init__(self, P, tag=None):
        P = np.array(P, dtype=object)
        P = np.vectorize(Fraction, otypes=[object])(P)
        if not np.all(P.dot(P) == P):
            raise InvalidArgument("P is not idempotent")
        k = P.shape[0]
        tag = tag or sup_model(k)
        super().__init__(OperatorModel(to_numeric(P), tag, tag),
                         CompactRealSet((Fraction(0), Fraction(1))))
        self.P = P

    def exact(self, f):
        I = exact_identity(self.P.shape[0])
        if isinstance(f, BVFunction):
            f0, f1 = f.values
        else:
            f0, f1 = f(Fraction(0)), f(Fraction(1))
        return f0 * (I - self.P) + f1 * self.P


def _unit_triangular_inverse(L: np.ndarray, lower: bool) -> np.ndarray:
    # exact inverse of a unit triangular integer matrix by substitution
    k = L.shape[0]
    inv = exact_identity(k)
    order = range(k) if lower else range(k - 1, -1, -1)
    for col in range(k):
        for i in order:
            if i == col:
                continue
            js = range(i) if lower else range(i + 1, k)
            inv[i, col] = -sum((L[i, j] * inv[j, col] for j in js), Fraction(0))
    return inv


def random_idempotent(k: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Integer idempotent S D S^-1 with S unimodular and D a 0/1 diagonal."""
    if not 0 <= rank <= k:
        raise InvalidArgument("rank must lie in [0, k]")
    L = np.tril(rng.integers(-1, 2, size=(k, k)), -1) + np.eye(k, dtype=int)
    U = np.triu(rng.integers(-1, 2, size=(k, k)), 1) + np.eye(k, dtype=int)
    L = L.astype(object)
    U = U.astype(object)
    S = L.dot(U)
    S_inv = _unit_triangular_inverse(U, lower=False).dot(_unit_triangular_inverse(L, lower=True))
    D = exact_diag([Fraction(1)] * rank + [Fraction(0)] * (k - rank))
    return S.dot(D).dot(S_inv)


def idempotent_calculus(k: int = 6, rank: int = 3, seed: int = 0, tag=None) -> IdempotentCalculus:
    return IdempotentCalculus(random_idempotent(k, rank, np.random.default_rng(seed)), tag)


# ---------------------------------------------------------------------------
# checks


def defect_norm(D: np.ndarray) -> float:
    """max(||D||_1, ||D||_inf), an upper bound for every ||D||_p."""
    return max(matrix_p_norm(D, 1).value, matrix_p_norm(D, math.inf).value)


@dataclass
class HomomorphismReport:
    calculus: str
    worst_defect: float
    witness: tuple
    unit_exact: bool
    catalog_size: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.unit_exact and self.worst_defect <= self.tol

    def to_json(self):
        return {
            "check": "homomorphism",
            "calculus": self.calculus,
            "worstDefect": self.worst_defect,
            "witness": list(self.witness),
            "unitExact": self.unit_exact,
            "catalogSize": self.catalog_size,
            "pass": self.passed,
        }


def homomorphism_check(c: CalculusMap, catalog, tol: float = 1e-10) -> HomomorphismReport:
    """Worst linearity/multiplicativity defect of ``c`` over all catalog pairs."""
    catalog = list(catalog)
    k = c.operator.shape[0]
    unit_exact = bool(np.array_equal(c(ONE), np.eye(k)))
    vals = {id(f): c(f) for f in catalog}
    worst, witness = 0.0, ("", "")
    for f, g in product(catalog, repeat=2):
        Ff, Fg = vals[id(f)], vals[id(g)]
        d = max(defect_norm(c(f * g) - Ff @ Fg), defect_norm(c(f + g) - Ff - Fg))
        if d > worst:
            worst, witness = d, (f.rule_id, g.rule_id)
    return HomomorphismReport(c.name, worst, witness, unit_exact, len(catalog), tol)


def calculus_bound(c: CalculusMap, catalog, norm: str = "bv") -> float:
    """sup over the catalog of ||c(f)|| / ||f||, a lower bound for the calculus norm."""
    ratios = []
    for f in catalog:
        if norm == "bv":
            denom = bv_norm(c.restrict(f))
        elif norm == "ac":
            denom = ac_norm_proxy(f, c.set)
            if denom is None:
                continue
        else:
            raise InvalidArgument(f"unknown norm {norm!r}")
        if denom == 0:
            continue
        ratios.append(operator_norm(c.evaluate(f)).value / denom)
    if not ratios:
        raise InvalidArgument("catalog has no usable member for the bound")
    return max(ratios)

