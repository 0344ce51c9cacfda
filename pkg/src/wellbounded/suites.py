"""Invariant suites aggregated by ``check all``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

import numpy as np

from .calculus import (
    DiagonalCalculus,
    calculus_bound,
    conjugated_calculus,
    diagonal_calculus,
    homomorphism_check,
    idempotent_calculus,
    phi1,
    phi2,
)
from .catalog import CHI_LEQ_0, polynomial_catalog, standard_catalog
from .counterexamples import (
    banach_limit_demo,
    c0_obstruction_demo,
    ell1_iso_demo,
    nonunique_extensions_demo,
    range_catalog,
    range_inclusion_check,
    tail_defect,
)
from .extrapolation import (
    adjoint_calculus_right,
    duality_identity_check,
    extend_calculus_left,
    random_complex_matrix,
    riesz_thorin_check,
)
from .functions import (
    GaussianRational,
    IntervalIndicator,
    add,
    bv_norm,
    exact_abs,
    exact_total,
    mul,
    restrict,
    variation,
)
from .operators import direct_sum, multiplication_operator, operator_norm, u_iso_c0
from .sets import finite_set, interval_grid, sigma0


@dataclass
class SuiteReport:
    name: str
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(all(self.checks.values()))

    def to_json(self):
        return {"check": self.name, "details": self.details,
                "checks": {k: bool(v) for k, v in self.checks.items()}, "pass": self.passed}


def partition_variation(values) -> float:
    """Brute force: the largest jump sum over every sub-partition keeping both endpoints."""
    vals = list(values)
    exact = all(isinstance(v, (int, Fraction, GaussianRational)) for v in vals)
    k = len(vals)
    best = 0.0
    for r in range(max(0, k - 1)):
        for keep in combinations(range(1, k - 1), r):
            idx = (0,) + keep + (k - 1,)
            if exact:
                total = exact_total(exact_abs(vals[b] - vals[a])
                                    for a, b in zip(idx, idx[1:]))
            else:
                total = math.fsum(abs(complex(vals[b]) - complex(vals[a]))
                                  for a, b in zip(idx, idx[1:]))
            best = max(best, total)
    return best


def oracle_sets() -> list:
    """Every sigma0 truncation and interval grid with at most 10 points."""
    grids = [interval_grid(-1, 1, k) for k in range(2, 11)]
    return [sigma0(n) for n in range(1, 10)] + [finite_set([0])] + grids


def algebra_suite(ns=(4, 10, 100), catalog=None, tol: float = 1e-12,
                  oracle=None) -> SuiteReport:
    catalog = list(catalog if catalog is not None else standard_catalog())
    worst_sub = worst_mult = 0.0
    for n in ns:
        s = sigma0(n)
        fs = [restrict(f, s) for f in catalog]
        for f, g in product(fs, repeat=2):
            worst_sub = max(worst_sub, variation(add(f, g)) - variation(f) - variation(g))
            worst_mult = max(worst_mult, bv_norm(mul(f, g)) - bv_norm(f) * bv_norm(g))
    oracle_gap = 0.0
    for s in (oracle if oracle is not None else oracle_sets()):
        for f in catalog:
            bf = restrict(f, s)
            oracle_gap = max(oracle_gap, abs(partition_variation(bf.values) - variation(bf)))
    rep = SuiteReport("function-algebra")
    rep.details = {"ns": list(ns), "catalogSize": len(catalog),
                   "worstSubadditivity": worst_sub, "worstSubmultiplicativity": worst_mult,
                   "oracleGap": oracle_gap}
    rep.checks = {
        "subadditive": worst_sub <= tol,
        "submultiplicative": worst_mult <= tol,
        "partition oracle": oracle_gap == 0.0,
    }
    return rep


def isomorphism_suite(ns=(10, 100), trials: int = 1000, seed: int = 0,
                      tol: float = 1e-12) -> SuiteReport:
    rng = np.random.default_rng(seed)
    rt = 0.0
    reports = []
    for n in ns:
        U, Ui = u_iso_c0(n)
        for _ in range(trials):
            x = rng.standard_normal(n + 1)
            rt = max(rt, float(np.max(np.abs(Ui @ (U @ x) - x))))
            y = rng.standard_normal(n + 1)
            rt = max(rt, float(np.max(np.abs(U @ (Ui @ y) - y))))
        if n % 2 == 0:
            reports.append(ell1_iso_demo(n, trials, seed=int(rng.integers(2**31)), tol=tol))
    rep = SuiteReport("isomorphisms")
    rep.details = {"uIsoC0RoundTrip": rt, "ell1": [r.to_json() for r in reports]}
    rep.checks = {"uIsoC0 round trip": rt <= tol, "ell1": all(r.passed for r in reports)}
    return rep


def calculus_suite(n: int = 10, phi_n: int = 20, tol: float = 1e-10) -> SuiteReport:
    catalog = standard_catalog() + polynomial_catalog()
    s = sigma0(n)
    diag = diagonal_calculus(s)
    norm_gap = max(abs(operator_norm(diag.evaluate(f)).value - restrict(f, s).sup_norm)
                   for f in catalog)
    U, Ui = u_iso_c0(n)
    conj = conjugated_calculus(diag, U, Ui)
    calculi = [diag, conj, phi1(phi_n), phi2(phi_n), idempotent_calculus(seed=n)]
    homs = [homomorphism_check(c, catalog, tol) for c in calculi]
    b_diag = calculus_bound(diag, catalog)
    b_conj = calculus_bound(conj, catalog)
    conj_cap = operator_norm(U).value * operator_norm(Ui).value
    rep = SuiteReport("calculus")
    rep.details = {"normIdentityGap": norm_gap, "homomorphism": [h.to_json() for h in homs],
                   "boundDiagonal": b_diag, "boundConjugated": b_conj, "conjugatedCap": conj_cap}
    rep.checks = {
        "diagonal norm = sup norm": norm_gap == 0.0,
        "homomorphisms": all(h.passed for h in homs),
        "diagonal bound <= 1": b_diag <= 1.0,
        "conjugated bound <= |U||U^-1|": b_conj <= conj_cap,
    }
    return rep


def c0_suite(ns=range(4, 1001), eps_values=(0.1, 0.01), n_eps: int = 100) -> SuiteReport:
    tails = [tail_defect(CHI_LEQ_0, n)[0] for n in ns]
    zero = c0_obstruction_demo(n_eps, 0.0)
    eps_reports = [c0_obstruction_demo(n_eps, e) for e in eps_values]
    rep = SuiteReport("c0-obstruction")
    rep.details = {"nRange": [min(ns), max(ns)], "minTail": min(tails), "maxTail": max(tails),
                   "constraintAtZero": zero.constraint_defect,
                   "constraint": {str(e): r.constraint_defect for e, r in zip(eps_values, eps_reports)}}
    rep.checks = {
        "tail defect = 1": all(t == 1.0 for t in tails),
        "constraint(eps=0) = 0": zero.constraint_defect == 0.0,
        "constraint <= eps": all(r.constraint_defect <= e for e, r in zip(eps_values, eps_reports)),
        "demos pass": zero.passed and all(r.passed for r in eps_reports),
    }
    return rep


def range_suite(ns=(6, 10, 100), lambdas=(Fraction(0), Fraction(-1, 3), Fraction(1, 4))) -> SuiteReport:
    results = []
    for n in ns:
        s = sigma0(n)
        for lam in lambdas:
            if lam in s:
                results.append(range_inclusion_check(s, lam, range_catalog(lam)))
    # direct sum: chi_sigma(T') is the projection onto the first block
    s = sigma0(6)
    T2 = direct_sum(multiplication_operator(s), m=2)
    chi_sigma = IntervalIndicator(s.min, s.max)
    P = DiagonalCalculus(T2)(chi_sigma)
    expected = np.diag([1.0] * len(s) + [0.0, 0.0])
    rep = SuiteReport("range-inclusion")
    rep.details = {"cases": len(results), "omega": str(T2.diagonal[-1])}
    rep.checks = {"range inclusion exact": all(r.passed for r in results),
                  "chi_sigma(T') = I (+) 0": bool(np.array_equal(P, expected))}
    return rep


def extrapolation_suite(n_rt: int = 200, n_dual: int = 50, trials: int = 100, seed: int = 0,
                        tol: float = 1e-9) -> SuiteReport:
    rng = np.random.default_rng(seed)
    margins = []
    for _ in range(n_rt):
        A = random_complex_matrix(rng)
        margins.append(riesz_thorin_check(A, 1, math.inf, 0.5, tol).margin)
    duals = [duality_identity_check(random_complex_matrix(rng), trials,
                                    seed=int(rng.integers(2**31))).worst_defect
             for _ in range(n_dual)]
    cat = standard_catalog()
    left = extend_calculus_left(sigma0(6), cat)
    right_d = adjoint_calculus_right(sigma0(6), cat)
    right_i = adjoint_calculus_right(idempotent_calculus(seed=seed % 1000), cat)
    rep = SuiteReport("extrapolation")
    rep.details = {"minMargin": min(margins), "worstDuality": max(duals),
                   "left": left.to_json(), "rightDiagonal": right_d.to_json(),
                   "rightIdempotent": right_i.to_json()}
    rep.checks = {
        "riesz-thorin margin": min(margins) >= -tol,
        "duality defect": max(duals) <= 1e-12,
        "extend left": left.passed,
        "adjoint right (diagonal)": right_d.passed,
        "adjoint right (idempotent)": right_i.passed,
    }
    return rep


def check_all(seed: int = 0, tol: float = 1e-9, trials: int = 100, n: int = 100) -> list:
    """Every suite at CLI scale; sizes follow ``n`` and ``trials``."""
    return [
        algebra_suite(ns=sorted({4, 10, n})),
        isomorphism_suite(ns=(10, n + n % 2), trials=trials, seed=seed),
        calculus_suite(tol=min(tol, 1e-10)),
        nonunique_extensions_demo(20),
        c0_suite(ns=range(4, max(5, n + 1))),
        range_suite(ns=(6, 10, n)),
        extrapolation_suite(n_rt=trials, n_dual=max(1, trials // 4), trials=trials,
                            seed=seed, tol=tol),
        banach_limit_demo(4),
    ]
