"""Acceptance criteria, one test each, at full scale.

Every test prints a single ``PASS``/``FAIL`` line (visible in ``pytest -v``
output and when run directly with ``python3 tests/test_acceptance.py``).
"""

from __future__ import annotations

import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from wellbounded import suites
from wellbounded.calculus import diagonal_calculus, phi1, phi2
from wellbounded.catalog import continuous_catalog, polynomial_catalog, standard_catalog
from wellbounded.counterexamples import (
    banach_limit_demo,
    nonunique_extensions_demo,
    range_catalog,
    range_inclusion_check,
)
from wellbounded.functions import PointIndicator, restrict
from wellbounded.operators import operator_norm
from wellbounded.sets import sigma0


def _report(number: int, title: str, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})"


def criterion_1():
    rep = suites.algebra_suite(ns=(4, 10, 100), tol=1e-12)
    d = rep.details
    assert d["catalogSize"] == 12
    return rep.passed, (f"worst subadditivity {d['worstSubadditivity']:.2e}, "
                        f"submultiplicativity {d['worstSubmultiplicativity']:.2e}, "
                        f"oracle gap {d['oracleGap']:.1e} over {len(suites.oracle_sets())} sets")


def criterion_2():
    rep = suites.isomorphism_suite(ns=(10, 100), trials=1000, seed=0, tol=1e-12)
    ratios = [r["ratios"] for r in rep.details["ell1"]]
    ok = rep.passed and len(ratios) == 2
    return ok, (f"c0 round trip {rep.details['uIsoC0RoundTrip']:.1e}, "
                f"worst forward {max(r['forward'] for r in ratios):.16g}, "
                f"worst inverse {max(r['inverse'] for r in ratios):.6g}, "
                f"l1 round trip {max(r['roundTrip'] for r in ratios):.1e}")


def criterion_3():
    rep = suites.calculus_suite(n=10, phi_n=20, tol=1e-10)
    # the norm identity again on a larger truncation, every catalog rule
    s = sigma0(100)
    c = diagonal_calculus(s)
    big_gap = max(abs(operator_norm(c.evaluate(f)).value - restrict(f, s).sup_norm)
                  for f in standard_catalog() + polynomial_catalog())
    worst = max(h["worstDefect"] for h in rep.details["homomorphism"])
    ok = rep.passed and big_gap == 0.0
    names = ",".join(h["calculus"] for h in rep.details["homomorphism"])
    return ok, f"norm gap {max(rep.details['normIdentityGap'], big_gap)}, worst defect {worst:.1e} [{names}]"


def criterion_4():
    n = 20
    rep = nonunique_extensions_demo(n)
    chi0 = PointIndicator(0)
    e = np.zeros((n + 1, n + 1))
    e[0, 0] = 1
    exact_split = np.array_equal(phi1(n)(chi0), e) and not np.any(phi2(n)(chi0))
    cont = continuous_catalog() + [f for f in standard_catalog() if f.is_continuous_at_zero()]
    agree = all(np.array_equal(phi1(n)(f), phi2(n)(f)) for f in cont)
    ok = rep.passed and exact_split and agree and rep.witnesses["rule"] == "chi_point_0"
    return ok, f"witness {rep.witnesses['rule']}, agree on {len(cont)} continuous rules"


def criterion_5():
    rep = suites.c0_suite(ns=range(4, 1001), eps_values=(0.1, 0.01), n_eps=100)
    d = rep.details
    return rep.passed, (f"tail in [{d['minTail']}, {d['maxTail']}] for n=4..1000, "
                        f"constraint(0)={d['constraintAtZero']}, constraint(eps)={d['constraint']}")


def criterion_6():
    lambdas = (Fraction(0), Fraction(-1, 3), Fraction(1, 4))
    cases = 0
    ok = True
    for n in range(1, 101):
        s = sigma0(n)
        for lam in lambdas:
            if lam in s:
                cases += 1
                ok &= range_inclusion_check(s, lam, range_catalog(lam)).passed
    rep = suites.range_suite(ns=(6,), lambdas=lambdas)
    ok = ok and rep.checks["chi_sigma(T') = I (+) 0"]
    return ok, f"{cases} (n, lambda) cases exact, direct sum projection exact"


def criterion_7():
    rep = suites.extrapolation_suite(n_rt=200, n_dual=50, trials=100, seed=0, tol=1e-9)
    d = rep.details
    return rep.passed, (f"min margin {d['minMargin']:.2e}, worst duality {d['worstDuality']:.1e}, "
                        f"adjoint product laws exact on diagonal and idempotent models")


def criterion_8():
    rep = banach_limit_demo(4)
    return rep.passed, f"{sum(rep.checks.values())}/{len(rep.checks)} identities, ||T|| = {rep.ratios['normT']}"


def criterion_9():
    cmd = [sys.executable, "-m", "wellbounded", "check", "all", "--seed", "7",
           "--tol", "1e-9", "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    codes = [r.returncode for r in runs]
    return same and codes == [0, 0], f"{len(runs[0].stdout)} bytes, identical={same}, exit codes {codes}"


CRITERIA = [
    (1, "function algebra suite", criterion_1),
    (2, "isomorphism suite", criterion_2),
    (3, "calculus suite", criterion_3),
    (4, "non-uniqueness of extensions", criterion_4),
    (5, "c0 obstruction", criterion_5),
    (6, "range inclusion", criterion_6),
    (7, "extrapolation suite", criterion_7),
    (8, "Banach-limit model", criterion_8),
    (9, "determinism of check all", criterion_9),
]


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _report(number, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        try:
            ok, detail = fn()
        except Exception as exc:  # report and keep going
            ok, detail = False, f"error: {exc!r}"
        failed += not ok
        print(_report(number, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
