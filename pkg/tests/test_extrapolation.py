import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wellbounded.calculus import diagonal_calculus, idempotent_calculus
from wellbounded.catalog import CHI_LEQ_0, parse_rule
from wellbounded.extrapolation import (
    PScaleFamily,
    adjoint_calculus_right,
    duality_identity_check,
    extend_calculus_left,
    interpolated_exponent,
    p_norm_profile,
    random_complex_matrix,
    riesz_thorin_check,
)
from wellbounded.operators import lp_model, matrix_p_norm, operator_norm
from wellbounded.sets import InvalidArgument, sigma0


def test_interpolated_exponent():
    assert interpolated_exponent(1, math.inf, 0.5) == 2
    assert interpolated_exponent(2, math.inf, 1) == math.inf
    assert interpolated_exponent(1, 2, 0) == 1


@pytest.mark.parametrize("theta", [0, 0.25, 0.5, 1])
def test_riesz_thorin_identity_is_tight(theta):
    rep = riesz_thorin_check(np.eye(5), 1, math.inf, theta)
    assert rep.margin == pytest.approx(0, abs=1e-12) and rep.passed


def test_riesz_thorin_diagonal():
    A = np.diag([3.0, -1, 0.5])
    rep = riesz_thorin_check(A, 1, 2, 0.3)
    assert rep.details["lhs"] == pytest.approx(3) and rep.details["rhs"] == pytest.approx(3)
    assert rep.margin >= -1e-12


def test_riesz_thorin_rejects_inexact_endpoints():
    with pytest.raises(InvalidArgument):
        riesz_thorin_check(np.eye(2), 3, math.inf, 0.5)
    with pytest.raises(InvalidArgument):
        riesz_thorin_check(np.eye(2), 1, 2, 1.5)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([(1, 2), (2, math.inf), (1, math.inf)]),
       st.floats(0.1, 0.9))
def test_riesz_thorin_margin(seed, ends, theta):
    A = random_complex_matrix(np.random.default_rng(seed), 8)
    assert riesz_thorin_check(A, *ends, theta).margin >= -1e-9


def test_duality_examples():
    rep = duality_identity_check(random_complex_matrix(np.random.default_rng(1)), 100, 1)
    assert rep.passed and rep.worst_defect <= 1e-12
    # x = 0 on the first trial
    assert duality_identity_check(np.eye(3), 1).worst_defect == 0


def test_duality_coordinate_case():
    A = np.diag([2.0, -1, 4])
    for i in range(3):
        for j in range(3):
            y, x = np.eye(3)[i], np.eye(3)[j]
            assert np.vdot(y, A.conj().T.conj().T @ x) == np.vdot(A.conj().T @ y, x) \
                == np.vdot(y, A @ x) == (A[i, i] if i == j else 0)


def test_extend_left_examples(catalog):
    s = sigma0(6)
    rep = extend_calculus_left(s, catalog)
    assert rep.passed and rep.details["M"] <= 1
    c = diagonal_calculus(s)
    P = c(CHI_LEQ_0)
    for p in (1, 1.5, 2, 3, math.inf):
        assert np.array_equal(c.evaluate(parse_rule("one")).retag(lp_model(p, 7)).matrix, np.eye(7))
        assert matrix_p_norm(P, p).value == pytest.approx(1)


def test_adjoint_right(catalog):
    assert adjoint_calculus_right(sigma0(6), catalog).passed
    rep = adjoint_calculus_right(idempotent_calculus(seed=5), catalog)
    assert rep.passed and rep.worst_defect <= 1e-12


def test_p_norm_profile_examples():
    ps = (1, 1.5, 2, 3, math.inf)
    assert all(r["value"] == pytest.approx(1) for r in p_norm_profile(np.eye(3), ps))
    assert all(r["value"] == pytest.approx(2) for r in p_norm_profile(np.diag([2.0, 1]), ps))
    prof = {r["p"]: r for r in p_norm_profile(np.array([[1.0, 1], [0, 1]]), ps)}
    assert prof["1"]["value"] == prof["inf"]["value"] == 2
    assert prof["2"]["value"] == pytest.approx((1 + math.sqrt(5)) / 2, rel=1e-12)
    assert prof["2"]["exact"] and not prof["3"]["exact"]


def test_pscale_family():
    fam = PScaleFamily.build(np.array([[1.0, 1], [0, 1]]))
    assert fam.uniform_bound() == 2
    with pytest.raises(InvalidArgument):
        PScaleFamily.build(np.eye(2), 3, 2)
