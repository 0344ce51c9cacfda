"""Finite-scale demonstrations of the non-extension mechanisms.

Nothing here proves that an extension fails to exist; each demo measures the
quantity that the obstruction argument drives to a contradiction and reports
it alongside the witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .calculus import (
    IdempotentCalculus,
    conjugated_calculus,
    diagonal_calculus,
    exact_identity,
    phi1,
    phi2,
)
from .catalog import CHI_LEQ_0, chi_gt, chi_leq, standard_catalog
from .functions import (
    IDENTITY,
    FunctionRule,
    IntervalIndicator,
    PointIndicator,
    Polynomial,
    bv_norm,
    restrict,
)
from .operators import ell1_iso_u, u_iso_c0, vector_norm
from .sets import CompactRealSet, InvalidArgument, sigma0


@dataclass
class DemoReport:
    """Common JSON shape for the demos; unused fields stay ``None``."""

    name: str
    n: int | None = None
    tail_defect: float | None = None
    constraint_defect: float | None = None
    ratios: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(all(self.checks.values()))

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "n": self.n,
            "tailDefect": self.tail_defect,
            "constraintDefect": self.constraint_defect,
            "ratios": self.ratios,
            "witnesses": self.witnesses,
            "checks": {k: bool(v) for k, v in self.checks.items()},
            "pass": self.passed,
        }


# ---------------------------------------------------------------------------
# ranges of P and Q


def range_catalog(lam, base=None) -> list[FunctionRule]:
    """``base`` plus members forced to vanish on each side of ``lam``."""
    base = list(base if base is not None else standard_catalog())
    right = IntervalIndicator(lam, math.inf, False, True)
    left = IntervalIndicator(-math.inf, lam, True, False)
    return base + [f * right for f in base] + [f * left for f in base]


def range_inclusion_check(s: CompactRealSet, lam, catalog, P=None) -> DemoReport:
    """f(T)P = 0 for f vanishing on sigma n (-inf, lam], f(T)Q = 0 for f vanishing on [lam, inf)."""
    lam = Fraction(lam) if not isinstance(lam, float) else lam
    if lam not in s:
        raise InvalidArgument(f"lambda={lam} is not a point of the set")
    c = diagonal_calculus(s)
    if P is None:
        P = c(chi_leq(lam))
    P = np.asarray(P)
    Q = np.eye(len(s)) - P
    worst, witness = 0.0, ""
    n_left = n_right = 0
    for f in catalog:
        bf = restrict(f, s)
        for vanishes, proj, side in ((lambda t: t <= lam, P, "L"), (lambda t: t >= lam, Q, "R")):
            if not bf.vanishes_on(vanishes):
                continue
            if side == "L":
                n_left += 1
            else:
                n_right += 1
            # f(T) is diagonal, so f(T) @ proj is a row scaling
            d = float(np.max(np.abs(bf.array[:, None] * proj)))
            if d > worst:
                worst, witness = d, f"{side}:{f.rule_id}"
    rep = DemoReport("range-inclusion", n=len(s))
    rep.witnesses = {"worst": witness, "lambda": str(lam), "leftMembers": n_left,
                     "rightMembers": n_right}
    rep.ratios = {"worstDefect": worst}
    rep.checks = {"fP=0 on L": worst == 0.0 or not witness.startswith("L"),
                  "fQ=0 on R": worst == 0.0 or not witness.startswith("R"),
                  "exact": worst == 0.0}
    return rep


# ---------------------------------------------------------------------------
# two inequivalent BV extensions on l^2


def nonunique_extensions_demo(n: int = 20, catalog=None) -> DemoReport:
    """phi1 and phi2 agree on rules continuous at 0 and split on some other rule."""
    catalog = list(catalog if catalog is not None else standard_catalog())
    p1, p2 = phi1(n), phi2(n)
    agree_cont = True
    split = []
    for f in catalog:
        d = float(np.max(np.abs(p1(f) - p2(f))))
        if f.is_continuous_at_zero():
            agree_cont &= d == 0.0
        elif d > 0:
            split.append((f.rule_id, d))
    rep = DemoReport("nonunique-extensions", n=n)
    chi0 = PointIndicator(0)
    e = np.zeros(n + 1)
    e[0] = 1.0
    witness = chi0.rule_id if np.any(p1(chi0) != p2(chi0)) else None
    rep.witnesses = {
        "rule": witness,
        "splitRules": [r for r, _ in split],
        "phi1(chi_point_0)": np.diag(p1(chi0)).tolist(),
        "phi2(chi_point_0)": np.diag(p2(chi0)).tolist(),
    }
    rep.ratios = {"maxSplit": max((d for _, d in split), default=0.0)}
    rep.checks = {
        "agree on continuous rules": bool(agree_cont),
        "phi1(chi_point_0) = diag(1,0,...)": bool(np.array_equal(p1(chi0), np.diag(e))),
        "phi2(chi_point_0) = 0": not np.any(p2(chi0)),
        "witness found": witness is not None,
    }
    return rep


# ---------------------------------------------------------------------------
# c0 obstruction


def default_tail_start(n: int) -> int:
    return max(1, n // 4)


def tail_defect(rule: FunctionRule, n: int, K: int | None = None) -> tuple[float, int]:
    """sup_{k >= K} |(f(T) e_0)_k| in c0 coordinates, with the attaining index."""
    K = default_tail_start(n) if K is None else K
    U, Uinv = u_iso_c0(n)
    cc = conjugated_calculus(diagonal_calculus(sigma0(n)), U, Uinv)
    e0 = np.zeros(n + 1)
    e0[0] = 1.0
    v = np.abs(cc.apply(rule, e0))[K:]
    i = int(np.argmax(v))
    return float(v[i]), K + i


def tail_sequence(rule: FunctionRule, ns) -> list[float]:
    return [tail_defect(rule, n)[0] for n in ns]


def _forced_zero(s: CompactRealSet, killers) -> np.ndarray:
    # f(T) is diagonal on C(sigma), so the common kernel of the stacked
    # matrices is spanned by the coordinates where every f vanishes
    c = diagonal_calculus(s)
    M = np.vstack([c(f) for f in killers])
    return np.any(M != 0, axis=0)


def _max_value_at_zero(s, forced, tail_idx, eps):
    i0 = s.index(Fraction(0))
    if forced[i0]:
        bound = 0.0
    else:
        bound = 1.0
        for i in tail_idx:
            if forced[i]:
                bound = min(bound, eps)
    x = np.where(forced, 0.0, bound)
    return bound, x


def _side_killers(s: CompactRealSet, positive: bool):
    pts = [t for t in s.points if (t > 0 if positive else t < 0)]
    hats = [PointIndicator(t) for t in pts]
    ramp = IDENTITY * (chi_gt(0) if positive else IntervalIndicator(-math.inf, 0, True, False))
    return hats + [ramp]


def c0_obstruction_demo(n: int, eps: float, K: int | None = None,
                        rule: FunctionRule = CHI_LEQ_0) -> DemoReport:
    """Measure both halves of the contradiction on the n-truncation.

    (a) ``tail_defect``: the would-be projection rule(T) applied to e_0 in c0
    coordinates keeps entries of size |jump| arbitrarily far out.
    (b) ``constraint_defect``: the largest |x(0)| over unit-sup x killed by
    every f vanishing on one side of 0 and within ``eps`` of x(0) at the K
    points of each sign nearest 0.
    """
    K = default_tail_start(n) if K is None else K
    rep = DemoReport("c0-no-extension", n=n)
    if not (1 <= K < n / 2) or eps < 0:
        rep.witnesses = {"reason": f"need 1 <= K < n/2 and eps >= 0 (K={K}, eps={eps})"}
        rep.checks = {"feasible": False}
        return rep

    td, k_star = tail_defect(rule, n, K)
    jump = max(abs(complex(rule.limit(side) - rule(Fraction(0)))) for side in (1, -1))

    s = sigma0(n)
    neg = [s.index(t) for t in s.points if t < 0][-K:]
    pos = [s.index(t) for t in s.points if t > 0][:K]
    tails = neg + pos
    i0 = s.index(Fraction(0))
    defects, witness_ok = {}, True
    for label, positive in (("L0", True), ("R0", False)):
        killers = _side_killers(s, positive)
        forced = _forced_zero(s, killers)
        bound, x = _max_value_at_zero(s, forced, tails, eps)
        c = diagonal_calculus(s)
        witness_ok &= all(not np.any(c.apply(f, x)) for f in killers)
        witness_ok &= bool(np.all(np.abs(x[tails] - x[i0]) <= eps)) and vector_norm(x, math.inf) <= 1
        defects[label] = bound

    rep.tail_defect = td
    rep.constraint_defect = max(defects.values())
    rep.ratios = {"jump": jump, "L0": defects["L0"], "R0": defects["R0"], "K": K, "eps": eps}
    rep.witnesses = {"rule": rule.rule_id, "tailIndex": k_star}
    rep.checks = {
        "tail persists": td >= jump - 1e-12,
        "constraint <= eps": rep.constraint_defect <= eps,
        "witness feasible": bool(witness_ok),
    }
    return rep


# ---------------------------------------------------------------------------
# l^1 = AC(sigma0)


def random_rule(rng: np.random.Generator, s: CompactRealSet) -> FunctionRule:
    """Random polynomial plus weighted indicators anchored at points of ``s``."""
    deg = int(rng.integers(0, 4))
    coeffs = tuple(Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))
                   for _ in range(deg + 1))
    f = Polynomial(coeffs)
    pts = s.points
    a = pts[int(rng.integers(len(pts)))]
    b = pts[int(rng.integers(len(pts)))]
    f = f + Fraction(int(rng.integers(-3, 4))) * chi_leq(a)
    f = f + Fraction(int(rng.integers(-3, 4))) * PointIndicator(b)
    return f


def ell1_iso_demo(n: int, trials: int = 100, seed: int = 0, tol: float = 1e-12) -> DemoReport:
    """||U g||_1 <= ||g||_BV and ||U^-1 x||_BV <= 2 ||x||_1 over random trials."""
    F, G = ell1_iso_u(n)
    s = sigma0(n)
    rng = np.random.default_rng(seed)
    fwd = inv = resid = 0.0
    fwd_w = inv_w = ""
    for t in range(trials):
        g = restrict(random_rule(rng, s), s)
        nb = bv_norm(g)
        if nb > 0:
            r = vector_norm(F @ g.array, 1) / nb
            if r > fwd:
                fwd, fwd_w = r, g.source_rule.rule_id
        resid = max(resid, float(np.max(np.abs(G @ (F @ g.array) - g.array))))

        x = rng.standard_normal(n + 1) * (rng.random(n + 1) < 0.5)
        if t % 2:
            x = x + 1j * rng.standard_normal(n + 1)
        nx = vector_norm(x, 1)
        if nx > 0:
            y = G @ x
            r = (vector_norm(y, math.inf) + float(np.sum(np.abs(np.diff(y))))) / nx
            if r > inv:
                inv, inv_w = r, f"trial {t}"
        resid = max(resid, float(np.max(np.abs(F @ (G @ x) - x))))

    rep = DemoReport("ell1-iso", n=n)
    rep.ratios = {"forward": fwd, "inverse": inv, "roundTrip": resid}
    rep.witnesses = {"forward": fwd_w, "inverse": inv_w, "trials": trials, "seed": seed}
    rep.checks = {
        "forward <= 1": fwd <= 1 + tol,
        "inverse <= 2": inv <= 2 + tol,
        "round trip": resid <= tol,
    }
    return rep


# ---------------------------------------------------------------------------
# convergent-sequence model of the Banach limit examples


@dataclass(frozen=True)
class ConvergentSeqModel:
    """The sequence (head_0, ..., head_{m-1}, tail, tail, ...)."""

    head: tuple
    tail: object = 0

    def limit(self):
        return self.tail

    @property
    def vector(self) -> np.ndarray:
        return np.array(list(self.head) + [self.tail], dtype=object)

    @classmethod
    def from_vector(cls, v) -> ConvergentSeqModel:
        v = list(v)
        return cls(tuple(v[:-1]), v[-1])

    def sup_norm(self):
        return max(abs(v) for v in self.vector)


def limit_shift(m: int) -> np.ndarray:
    """Tx = (Lx, 0, 0, ...) in (head, tail) coordinates."""
    T = np.full((m + 1, m + 1), Fraction(0), dtype=object)
    T[0, m] = Fraction(1)
    return T


def limit_spread(m: int) -> np.ndarray:
    """Sx = (Lx, Lx, Lx, ...) in (head, tail) coordinates."""
    S = np.full((m + 1, m + 1), Fraction(0), dtype=object)
    S[:, m] = Fraction(1)
    return S


def _model_norm(M) -> Fraction:
    # the model's sup norm is the max over head and tail coordinates
    return max(sum(abs(v) for v in row) for row in M)


def banach_limit_demo(m: int = 4, catalog=None) -> DemoReport:
    """Identities of T = (L, 0, ...) and S = (L, L, ...) on convergent sequences."""
    if m < 1:
        raise InvalidArgument("head length m must be at least 1")
    catalog = list(catalog if catalog is not None else standard_catalog())
    T, S = limit_shift(m), limit_spread(m)
    zero = np.full_like(T, Fraction(0))
    ones = ConvergentSeqModel((Fraction(1),) * m, Fraction(1))
    finite = ConvergentSeqModel((Fraction(5),) + (Fraction(0),) * (m - 1), Fraction(0))

    c_inf = IdempotentCalculus(S)
    head_I = exact_identity(m)
    mult_p = mult_inf = True
    for f in catalog:
        for g in catalog:
            fg = f * g
            # f -> f(0) I on the finitely supported (tail 0) submodel
            mult_p &= bool(np.all(fg(Fraction(0)) * head_I
                                  == (f(Fraction(0)) * head_I).dot(g(Fraction(0)) * head_I)))
            mult_inf &= bool(np.all(c_inf.exact(fg) == c_inf.exact(f).dot(c_inf.exact(g))))

    chi1 = PointIndicator(1)
    via_inf = c_inf.exact(chi1).dot(ones.vector)
    via_p = chi1(Fraction(0)) * ones.vector

    rep = DemoReport("banach-limit", n=m)
    rep.ratios = {"normT": float(_model_norm(T)), "normS": float(_model_norm(S))}
    rep.witnesses = {
        "Tx(finite)": [str(v) for v in T.dot(finite.vector)],
        "Sx(finite)": [str(v) for v in S.dot(finite.vector)],
        "Tx(ones)": [str(v) for v in T.dot(ones.vector)],
        "chi_point_1(S_inf)ones": [str(v) for v in via_inf],
        "chi_point_1(0)I ones": [str(v) for v in via_p],
    }
    rep.checks = {
        "T^2 = 0": bool(np.all(T.dot(T) == zero)),
        "T != 0": bool(np.any(T != zero)),
        "||T|| = 1": _model_norm(T) == 1,
        "S^2 = S": bool(np.all(S.dot(S) == S)),
        "S kills tail-0": bool(np.all(S[:, :m] == 0)) and not np.any(S.dot(finite.vector)),
        "T kills tail-0": not np.any(T.dot(finite.vector)),
        "S ones = ones": bool(np.all(S.dot(ones.vector) == ones.vector)),
        "f(0)I multiplicative": mult_p,
        "f(S_inf) multiplicative": mult_inf,
        "calculi differ on chi_point_1": bool(np.all(via_inf == ones.vector))
        and not np.any(via_p),
    }
    return rep
