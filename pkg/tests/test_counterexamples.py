from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wellbounded.calculus import diagonal_calculus
from wellbounded.catalog import CHI_LEQ_0, continuous_catalog, parse_rule
from wellbounded.counterexamples import (
    ConvergentSeqModel,
    banach_limit_demo,
    c0_obstruction_demo,
    ell1_iso_demo,
    limit_shift,
    limit_spread,
    nonunique_extensions_demo,
    range_catalog,
    range_inclusion_check,
    tail_defect,
    tail_sequence,
)
from wellbounded.functions import bv_norm, restrict
from wellbounded.operators import ell1_iso_u, vector_norm
from wellbounded.sets import InvalidArgument, sigma0


def test_range_inclusion_examples():
    s = sigma0(6)
    assert range_inclusion_check(s, 0, range_catalog(F(0))).passed
    top = s.max
    rep = range_inclusion_check(s, top, range_catalog(top))
    assert rep.passed


def test_range_inclusion_negative_control():
    s = sigma0(6)
    P = diagonal_calculus(s)(CHI_LEQ_0).copy()
    P[0, 5] = 0.25
    assert not range_inclusion_check(s, 0, range_catalog(F(0)), P=P).passed


def test_range_inclusion_needs_a_set_point():
    with pytest.raises(InvalidArgument):
        range_inclusion_check(sigma0(6), F(1, 3), range_catalog(F(1, 3)))


def test_chi_l_applied_to_e0():
    # the conjugated projection sends e_0 to (1, 0, -1, 0, -1, ...): -1 at every even index
    from wellbounded.calculus import conjugated_calculus
    from wellbounded.operators import u_iso_c0

    n = 12
    U, Ui = u_iso_c0(n)
    v = conjugated_calculus(diagonal_calculus(sigma0(n)), U, Ui).apply(CHI_LEQ_0, np.eye(n + 1)[0])
    expected = [1.0] + [0.0 if k % 2 else -1.0 for k in range(1, n + 1)]
    assert np.allclose(v, expected, atol=1e-15)


@pytest.mark.parametrize("K", [1, 5, 10])
def test_c0_tail_defect_is_one(K):
    rep = c0_obstruction_demo(100, 0.0, K)
    assert rep.tail_defect == 1 and rep.constraint_defect == 0 and rep.passed
    assert rep.witnesses["tailIndex"] % 2 == 0


@pytest.mark.parametrize("eps", [0.5, 0.1, 0.01, 0.0])
def test_c0_constraint_within_eps(eps):
    rep = c0_obstruction_demo(100, eps)
    assert rep.constraint_defect <= eps
    assert rep.passed


def test_c0_infeasible_parameters_are_reported():
    rep = c0_obstruction_demo(10, 0.1, K=5)
    assert not rep.passed and "reason" in rep.witnesses
    assert not c0_obstruction_demo(10, -1.0).passed


def test_tail_decreases_for_continuous_rules():
    ns = [8, 16, 32, 64, 128, 256]
    for f in continuous_catalog():
        seq = tail_sequence(f, ns)
        assert all(b <= a + 1e-15 for a, b in zip(seq, seq[1:])), f.rule_id
        assert seq[-1] < 0.05
    assert tail_sequence(CHI_LEQ_0, ns) == [1.0] * len(ns)


def test_ell1_examples():
    n = 10
    Fw, G = ell1_iso_u(n)
    g = restrict(parse_rule("one"), sigma0(n))
    assert vector_norm(Fw @ g.array, 1) == 1 == bv_norm(g)
    y = G @ np.eye(n + 1)[1]
    assert set(np.unique(y)) <= {0.0, 1.0}
    assert np.max(np.abs(y)) + np.sum(np.abs(np.diff(y))) <= 2


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([4, 10, 50, 100]), st.integers(0, 2**32 - 1))
def test_ell1_demo_bounds(n, seed):
    rep = ell1_iso_demo(n, 50, seed)
    assert rep.passed, rep.ratios
    assert rep.ratios["forward"] <= 1 + 1e-12 and rep.ratios["inverse"] <= 2 + 1e-12


def test_nonunique_demo():
    rep = nonunique_extensions_demo(20)
    assert rep.passed
    assert rep.witnesses["rule"] == "chi_point_0"
    assert rep.witnesses["phi1(chi_point_0)"][0] == 1
    assert not any(rep.witnesses["phi2(chi_point_0)"])


def test_banach_examples():
    m = 3
    T, S = limit_shift(m), limit_spread(m)
    finite = ConvergentSeqModel((F(5), F(0), F(0)), F(0))
    assert not np.any(T.dot(finite.vector)) and not np.any(S.dot(finite.vector))
    ones = ConvergentSeqModel((F(1),) * m, F(1))
    assert list(T.dot(ones.vector)) == [1, 0, 0, 0]
    assert list(S.dot(ones.vector)) == list(ones.vector)
    assert ConvergentSeqModel.from_vector(ones.vector) == ones


@pytest.mark.parametrize("m", [1, 2, 4, 9])
def test_banach_demo_passes(m):
    rep = banach_limit_demo(m)
    assert rep.passed, rep.checks
    assert rep.ratios["normT"] == 1


def test_tail_defect_rejects_nothing_silently():
    v, k = tail_defect(parse_rule("poly:1,0"), 40)
    assert v == pytest.approx(1 / k)
