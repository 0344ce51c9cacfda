"""Moving calculi across the l^p scale on finite matrix models.

At finite dimension every matrix is bounded on every l^p, so the density
half of the endpoint extension is automatic.  What remains checkable is
that the action does not depend on the norm tag, the bi-adjoint pairing
identity behind the l^inf endpoint, the reversed product law of the
pre-adjoints, and Riesz-Thorin bounds between exact endpoint norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import (
    CalculusMap,
    DiagonalCalculus,
    diagonal_calculus,
    exact_adjoint,
)
from .functions import bv_norm, restrict
from .operators import (
    OperatorModel,
    adjoint,
    format_p,
    lp_model,
    matrix_p_norm,
    multiplication_operator,
    sup_model,
)
from .sets import CompactRealSet, InvalidArgument

EXACT_P = (1.0, 2.0, math.inf)


@dataclass
class ExtrapolationReport:
    name: str
    margin: float | None = None
    worst_defect: float = 0.0
    exact_flags: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(all(self.checks.values()))

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "margin": self.margin,
            "worstDefect": self.worst_defect,
            "exactFlags": self.exact_flags,
            "checks": {k: bool(v) for k, v in self.checks.items()},
            "details": self.details,
            "pass": self.passed,
        }


def interpolated_exponent(p0: float, p1: float, theta: float) -> float:
    inv = (1 - theta) / p0 + theta / p1
    return math.inf if inv == 0 else 1 / inv


def p_norm_profile(A, ps, seed: int = 0) -> list[dict]:
    """||A||_p for each sampled p, flagged exact or lower-bound estimate."""
    rows = []
    for p in ps:
        value, exact = matrix_p_norm(A, float(p), seed=seed)
        rows.append({"p": format_p(float(p)), "value": value, "exact": exact})
    return rows


@dataclass
class PScaleFamily:
    """One matrix viewed on every l^p, with its sampled norm profile."""

    matrix: np.ndarray
    p_range: tuple
    norm_table: list

    @classmethod
    def build(cls, A, r: float = 1.0, s: float = math.inf, ps=(1, 1.5, 2, 3, 4, math.inf)):
        if not 1 <= r < s:
            raise InvalidArgument("need 1 <= r < s")
        ps = [p for p in ps if r <= p <= s]
        return cls(np.asarray(A), (r, s), p_norm_profile(A, ps))

    def uniform_bound(self) -> float:
        return max(row["value"] for row in self.norm_table)


def riesz_thorin_check(A, p0: float, p1: float, theta: float,
                       tol: float = 1e-9) -> ExtrapolationReport:
    """||A||_{p_theta} <= ||A||_{p0}^(1-theta) ||A||_{p1}^theta with exact endpoints."""
    p0, p1 = float(p0), float(p1)
    if p0 not in EXACT_P or p1 not in EXACT_P:
        raise InvalidArgument(f"endpoints must be in {{1, 2, inf}}, got {p0}, {p1}")
    if not 0 <= theta <= 1:
        raise InvalidArgument("theta must lie in [0, 1]")
    pt = interpolated_exponent(p0, p1, theta)
    n0 = matrix_p_norm(A, p0)
    n1 = matrix_p_norm(A, p1)
    mid = matrix_p_norm(A, pt)
    rhs = n0.value ** (1 - theta) * n1.value ** theta
    margin = rhs - mid.value
    rep = ExtrapolationReport("riesz-thorin", margin=margin)
    rep.exact_flags = [n0.exact, mid.exact, n1.exact]
    rep.details = {"p0": format_p(p0), "p1": format_p(p1), "theta": theta,
                   "ptheta": format_p(pt), "lhs": mid.value, "rhs": rhs}
    rep.checks = {"interpolation bound": margin >= -tol}
    return rep


def _random_vec(rng, k, complex_=True):
    v = rng.standard_normal(k)
    if complex_:
        v = v + 1j * rng.standard_normal(k)
    return v / np.linalg.norm(v)


def duality_identity_check(A, trials: int = 100, seed: int = 0,
                           tol: float = 1e-12) -> ExtrapolationReport:
    """<y, Vx> = <S*y, x> = <y, Sx> with V the bi-adjoint of S = A."""
    S = A if isinstance(A, OperatorModel) else OperatorModel(
        np.asarray(A), sup_model(np.shape(A)[1]), sup_model(np.shape(A)[0]))
    S_star = adjoint(S)
    V = adjoint(S_star)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for t in range(trials):
        x = _random_vec(rng, S.shape[1]) if t else np.zeros(S.shape[1])
        y = _random_vec(rng, S.shape[0])
        a = np.vdot(y, V.matrix @ x)
        b = np.vdot(S_star.matrix @ y, x)
        c = np.vdot(y, S.matrix @ x)
        worst = max(worst, abs(a - b), abs(b - c))
    rep = ExtrapolationReport("duality", worst_defect=float(worst))
    rep.details = {"trials": trials, "seed": seed,
                   "tags": [S.domain.label(), S_star.domain.label(), V.domain.label()]}
    rep.checks = {"pairing chain": worst <= tol,
                  "bi-adjoint tags": V.domain == S.domain and V.codomain == S.codomain}
    return rep


def extend_calculus_left(s: CompactRealSet, catalog, ps=(1, 1.5, 2, 3, math.inf),
                         tol: float = 1e-12, seed: int = 0) -> ExtrapolationReport:
    """Cross-p consistency, uniform bound M = 1 and the product law for diag calculi."""
    catalog = list(catalog)
    T = multiplication_operator(s)
    calculi = {p: DiagonalCalculus(T.retag(lp_model(p, len(s))), s) for p in ps}
    base = calculi[ps[0]]
    rng = np.random.default_rng(seed)
    probes = [_random_vec(rng, len(s)) for _ in range(4)]

    consistent = True
    worst_ratio = 0.0
    flags = set()
    for f in catalog:
        mats = {p: c(f) for p, c in calculi.items()}
        ref = mats[ps[0]]
        for p, M in mats.items():
            consistent &= np.array_equal(M, ref)
            consistent &= all(np.array_equal(M @ x, ref @ x) for x in probes)
        nb = bv_norm(restrict(f, s))
        for p, M in mats.items():
            value, exact = matrix_p_norm(M, float(p), seed=seed)
            flags.add(exact)
            if nb > 0:
                worst_ratio = max(worst_ratio, value / nb)

    product_defect = 0
    for f in catalog:
        for g in catalog:
            D = base.exact(f * g) - base.exact(f).dot(base.exact(g))
            product_defect = max(product_defect, max(abs(v) for v in D.ravel()))

    rep = ExtrapolationReport("extend-left", margin=1.0 - worst_ratio,
                              worst_defect=float(product_defect))
    rep.exact_flags = sorted(flags)
    rep.details = {"ps": [format_p(float(p)) for p in ps], "M": worst_ratio,
                   "catalogSize": len(catalog)}
    rep.checks = {
        "cross-p consistency": bool(consistent),
        "uniform bound M <= 1": worst_ratio <= 1 + tol,
        "product law exact": product_defect == 0,
    }
    return rep


def adjoint_calculus_right(model, catalog, tol: float = 1e-12, trials: int = 20,
                           seed: int = 0) -> ExtrapolationReport:
    """Pre-adjoints U_f on l^1 reverse products; their adjoints V_f on l^inf keep them.

    ``model`` is a ``CompactRealSet`` (diagonal model) or any calculus with
    an exact evaluation, for instance an ``IdempotentCalculus``.
    """
    c: CalculusMap = diagonal_calculus(model) if isinstance(model, CompactRealSet) else model
    catalog = list(catalog)
    U = {id(f): exact_adjoint(c.exact(f)) for f in catalog}
    V = {id(f): exact_adjoint(U[id(f)]) for f in catalog}
    rng = np.random.default_rng(seed)
    k = c.operator.shape[0]

    sum_ok = anti_ok = hom_ok = True
    chain = 0.0
    for f in catalog:
        for g in catalog:
            Uf, Ug, Vf, Vg = U[id(f)], U[id(g)], V[id(f)], V[id(g)]
            Ufg = exact_adjoint(c.exact(f * g))
            Vfg = exact_adjoint(Ufg)
            sum_ok &= bool(np.all(exact_adjoint(c.exact(f + g)) == Uf + Ug))
            anti_ok &= bool(np.all(Ufg == Ug.dot(Uf)))
            hom_ok &= bool(np.all(Vfg == Vf.dot(Vg)))
        for _ in range(max(1, trials // max(1, len(catalog)))):
            x = _random_vec(rng, k)
            y = _random_vec(rng, k)
            g = catalog[int(rng.integers(len(catalog)))]
            num = {key: _numeric(M) for key, M in (
                ("Uf", U[id(f)]), ("Ug", U[id(g)]), ("Vf", V[id(f)]), ("Vg", V[id(g)]),
                ("Ufg", exact_adjoint(c.exact(f * g))))}
            Vfg = num["Ufg"].conj().T
            links = [
                np.vdot(y, Vfg @ x),
                np.vdot(num["Ufg"] @ y, x),
                np.vdot(num["Ug"] @ (num["Uf"] @ y), x),
                np.vdot(num["Uf"] @ y, num["Vg"] @ x),
                np.vdot(y, num["Vf"] @ (num["Vg"] @ x)),
            ]
            chain = max(chain, max(abs(a - b) for a, b in zip(links, links[1:])))

    rep = ExtrapolationReport("adjoint-right", worst_defect=float(chain))
    rep.exact_flags = [True]
    rep.details = {"model": c.name, "dimension": k, "catalogSize": len(catalog)}
    rep.checks = {
        "U_{f+g} = U_f + U_g": sum_ok,
        "U_{fg} = U_g U_f": anti_ok,
        "V_{fg} = V_f V_g": hom_ok,
        "pairing chain": chain <= tol,
    }
    return rep


def _numeric(M) -> np.ndarray:
    return np.array([[complex(v) for v in row] for row in M])


def random_complex_matrix(rng: np.random.Generator, k: int = 20) -> np.ndarray:
    return rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))

