from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from wellbounded.sets import (
    CompactRealSet,
    InvalidArgument,
    interval_grid,
    parse_set,
    sigma0,
    sigma0_index,
)


def test_sigma0_four():
    s = sigma0(4)
    assert s.points == (F(-1), F(-1, 3), F(0), F(1, 4), F(1, 2))
    assert s.limit_markers == (F(0),)
    assert s.family == "sigma0-truncation(4)"


def test_sigma0_one_and_six():
    assert sigma0(1).points == (F(-1), F(0))
    assert sigma0(6).points == (F(-1), F(-1, 3), F(-1, 5), F(0), F(1, 6), F(1, 4), F(1, 2))


@pytest.mark.parametrize("bad", [0, -3, 2.5, "4"])
def test_sigma0_rejects_bad_n(bad):
    with pytest.raises(InvalidArgument):
        sigma0(bad)


@given(st.integers(1, 300))
def test_sigma0_shape(n):
    s = sigma0(n)
    assert len(s) == n + 1
    assert list(s.points) == sorted(s.points)
    assert s.min == -1 and (n == 1 or s.max == F(1, 2))
    for k in range(n + 1):
        t = F(0) if k == 0 else F((-1) ** k, k)
        assert s.points[sigma0_index(n, k)] == t


def test_points_must_increase():
    with pytest.raises(InvalidArgument):
        CompactRealSet((F(0), F(0)))
    with pytest.raises(InvalidArgument):
        CompactRealSet((F(1), F(0)))
    with pytest.raises(InvalidArgument):
        CompactRealSet(())


def test_limit_marker_must_be_a_point():
    with pytest.raises(InvalidArgument):
        CompactRealSet((F(0), F(1)), (F(1, 2),))


def test_grid():
    g = interval_grid(0, 1, 3)
    assert g.points == (F(0), F(1, 2), F(1))
    assert interval_grid(2, 2, 1).points == (F(2),)
    with pytest.raises(InvalidArgument):
        interval_grid(1, 0, 3)


def test_json_round_trip():
    for s in (sigma0(7), interval_grid(-1, 3, 5), CompactRealSet((0.25, 1.5))):
        assert CompactRealSet.from_json(s.to_json()) == s


def test_subset_and_union():
    s = sigma0(4)
    sub = s.subset([F(0), F(1, 2)])
    assert sub.points == (F(0), F(1, 2)) and sub.limit_markers == (F(0),)
    assert sub.issubset(s) and not s.issubset(sub)
    assert s.union([F(3)]).max == 3


def test_parse_set():
    assert parse_set("sigma0:4") == sigma0(4)
    assert parse_set("grid:0,1,3").points == (F(0), F(1, 2), F(1))
    assert parse_set("points:1/2,-1,0").points == (F(-1), F(0), F(1, 2))
    for bad in ("sigma0:x", "blob:3", "grid:1,2", "points:1/0"):
        with pytest.raises(InvalidArgument):
            parse_set(bad)
