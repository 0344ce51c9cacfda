from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wellbounded.catalog import CHI_LEQ_0, parse_rule, standard_catalog
from wellbounded.functions import (
    BVFunction,
    GaussianRational,
    PointIndicator,
    Polynomial,
    SetMismatch,
    add,
    bv_norm,
    is_continuous_at_limit,
    mul,
    restrict,
    scale,
    variation,
)
from wellbounded.sets import InvalidArgument, finite_set, interval_grid, sigma0

IDENTITY = parse_rule("id")


def oracle_variation(values):
    # independent brute force over every sub-partition that keeps both endpoints
    k = len(values)
    best = 0
    for r in range(max(0, k - 1)):
        for keep in combinations(range(1, k - 1), r):
            idx = (0, *keep, k - 1)
            best = max(best, sum(abs(values[b] - values[a]) for a, b in zip(idx, idx[1:])))
    return best


def test_restrict_examples():
    s = sigma0(4)
    assert restrict(IDENTITY, s).values == (F(-1), F(-1, 3), F(0), F(1, 4), F(1, 2))
    assert restrict(CHI_LEQ_0, s).values == (1, 1, 1, 0, 0)
    assert all(v == 0 for v in restrict(parse_rule("zero"), sigma0(9)).values)


def test_variation_examples():
    s = sigma0(4)
    assert variation(restrict(parse_rule("one"), s)) == 0
    assert variation(restrict(IDENTITY, s)) == pytest.approx(1.5, abs=1e-15)
    assert variation(restrict(CHI_LEQ_0, s)) == 1


def test_bv_norm_examples():
    s = sigma0(4)
    assert bv_norm(restrict(parse_rule("one"), s)) == 1
    assert bv_norm(restrict(IDENTITY, s)) == pytest.approx(2.5, abs=1e-15)
    assert bv_norm(restrict(CHI_LEQ_0, s)) == 2


@pytest.mark.parametrize("n", [1, 2, 4, 6, 9])
def test_variation_matches_partition_oracle(n, catalog):
    s = sigma0(n)
    for f in catalog:
        bf = restrict(f, s)
        exact = oracle_variation([complex(v) for v in bf.values])
        assert variation(bf) == pytest.approx(exact, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(-5, 5, max_denominator=20), min_size=1, max_size=8))
def test_variation_oracle_random_values(vals):
    s = interval_grid(0, 1, len(vals)) if len(vals) > 1 else finite_set([0])
    f = BVFunction(s, tuple(vals))
    assert variation(f) == pytest.approx(float(oracle_variation(vals)), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([4, 10, 100]), st.data())
def test_subadditive_and_submultiplicative(n, data):
    cat = standard_catalog()
    f = restrict(data.draw(st.sampled_from(cat)), sigma0(n))
    g = restrict(data.draw(st.sampled_from(cat)), sigma0(n))
    assert variation(add(f, g)) <= variation(f) + variation(g) + 1e-12
    assert bv_norm(mul(f, g)) <= bv_norm(f) * bv_norm(g) + 1e-12


def test_scale_is_homogeneous():
    f = restrict(IDENTITY, sigma0(6))
    assert bv_norm(scale(F(-3), f)) == pytest.approx(3 * bv_norm(f))
    assert bv_norm(scale(2j, f)) == pytest.approx(2 * bv_norm(f))


def test_set_mismatch():
    with pytest.raises(SetMismatch):
        add(restrict(IDENTITY, sigma0(4)), restrict(IDENTITY, sigma0(5)))


def test_continuity_examples():
    poly = parse_rule("poly:2,0,-1,1/3")
    assert is_continuous_at_limit(poly, 10**9, 5, 1e-6).continuous
    rep = is_continuous_at_limit(CHI_LEQ_0, 100, 5, 0.5)
    assert not rep.continuous and rep.defect == 1
    rep = is_continuous_at_limit(parse_rule("chi_point_-1"), 100, 5, 1e-9)
    assert rep.continuous and rep.defect == 0
    with pytest.raises(InvalidArgument):
        is_continuous_at_limit(poly, 4, 4, 1e-6)


def test_one_sided_limits():
    assert CHI_LEQ_0.limit(-1) == 1 and CHI_LEQ_0.limit(1) == 0
    assert PointIndicator(0).limit(1) == 0 and PointIndicator(0)(0) == 1
    assert Polynomial((1, 0)).limit(1) == 0


def test_gaussian_rational_exact():
    z = GaussianRational(F(1, 3), F(2))
    w = z * z.conjugate()
    assert w == F(37, 9)
    assert z + 0 == z and z - z == 0
    assert complex(z) == pytest.approx(1 / 3 + 2j)
    assert abs(GaussianRational(3, 4)) == 5


def test_complex_rule_values_stay_exact():
    f = restrict(parse_rule("complex_mix"), sigma0(4))
    assert f.array.dtype == complex
    assert f.values[-1] == GaussianRational(0, F(1, 4))


def test_bvfunction_json_round_trip(catalog):
    for f in catalog:
        bf = restrict(f, sigma0(5))
        back = BVFunction.from_json(bf.to_json())
        assert back.set == bf.set and back.values == bf.values


def test_rule_ids_round_trip(catalog):
    for f in catalog:
        g = parse_rule(f.rule_id)
        s = sigma0(12)
        assert restrict(g, s).values == restrict(f, s).values


def test_rule_arithmetic_consistent():
    f, g = parse_rule("chi_gt_0"), parse_rule("poly:1,0,0")
    s = sigma0(8)
    assert restrict(f * g, s).values == mul(restrict(f, s), restrict(g, s)).values
    assert np.array_equal(restrict(f + g, s).array, restrict(f, s).array + restrict(g, s).array)
