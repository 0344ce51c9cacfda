"""Finite models of compact subsets of the real line."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Real

import numpy as np


class InvalidArgument(ValueError):
    """Raised when an operation receives a parameter outside its domain."""


def _as_exact(x):
    # ints and Fractions stay exact; floats are kept as given.
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, Real):
        return float(x)
    raise InvalidArgument(f"set points must be real scalars, got {x!r}")


@dataclass(frozen=True)
class CompactRealSet:
    """Strictly increasing point list standing in for a compact set in R.

    ``family`` records how the set was generated: ``"generic-finite"``,
    ``"sigma0-truncation(n)"`` or ``"interval-grid(a,b,n)"``.
    """

    points: tuple
    limit_markers: tuple = ()
    family: str = "generic-finite"
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = tuple(_as_exact(p) for p in self.points)
        if not pts:
            raise InvalidArgument("a compact set model needs at least one point")
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise InvalidArgument("points must be strictly increasing")
        markers = tuple(_as_exact(m) for m in self.limit_markers)
        index = {p: i for i, p in enumerate(pts)}
        for m in markers:
            if m not in index:
                raise InvalidArgument(f"limit marker {m} is not a point of the set")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "limit_markers", markers)
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.points)

    def __contains__(self, t):
        return t in self._index

    def index(self, t) -> int:
        try:
            return self._index[t]
        except KeyError:
            raise InvalidArgument(f"{t} is not a point of the set") from None

    @property
    def min(self):
        return self.points[0]

    @property
    def max(self):
        return self.points[-1]

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.points])

    def issubset(self, other: CompactRealSet) -> bool:
        return all(p in other for p in self.points)

    def union(self, extra) -> CompactRealSet:
        pts = sorted(set(self.points) | {_as_exact(e) for e in extra})
        return CompactRealSet(tuple(pts), self.limit_markers, "generic-finite")

    def subset(self, keep) -> CompactRealSet:
        """Restrict to the points in ``keep`` (limit markers are kept when present)."""
        keep = {_as_exact(k) for k in keep}
        pts = tuple(p for p in self.points if p in keep)
        markers = tuple(m for m in self.limit_markers if m in keep)
        return CompactRealSet(pts, markers, "generic-finite")

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "points": [_point_to_json(p) for p in self.points],
            "limitMarkers": [_point_to_json(m) for m in self.limit_markers],
            "family": self.family,
        }

    @classmethod
    def from_json(cls, doc: dict) -> CompactRealSet:
        return cls(
            tuple(_point_from_json(p) for p in doc["points"]),
            tuple(_point_from_json(m) for m in doc.get("limitMarkers", [])),
            doc.get("family", "generic-finite"),
        )


def _point_to_json(p):
    if isinstance(p, Fraction):
        return {"num": p.numerator, "den": p.denominator}
    return p


def _point_from_json(p):
    if isinstance(p, dict):
        return Fraction(p["num"], p["den"])
    return p


def sigma0(n: int) -> CompactRealSet:
    """Truncation {0} U {(-1)^k / k : 1 <= k <= n} with 0 marked as the limit point."""
    if not isinstance(n, int) or n < 1:
        raise InvalidArgument(f"n must be a positive integer, got {n!r}")
    return _sigma0(n)


@lru_cache(maxsize=128)
def _sigma0(n: int) -> CompactRealSet:
    # already sorted: -1, -1/3, ..., 0, ..., 1/4, 1/2
    neg = [Fraction(-1, k) for k in range(1, n + 1, 2)]
    pos = [Fraction(1, k) for k in range(n - n % 2, 0, -2)]
    pts = tuple(neg + [Fraction(0)] + pos)
    return CompactRealSet(pts, (Fraction(0),), f"sigma0-truncation({n})")


def sigma0_index(n: int, k: int) -> int:
    """Position of (-1)^k/k in sigma0(n); k = 0 stands for the point 0."""
    n_neg = (n + 1) // 2
    if k == 0:
        return n_neg
    if k % 2:
        return (k - 1) // 2
    return n_neg + 1 + (n - n % 2 - k) // 2


def interval_grid(a, b, n: int) -> CompactRealSet:
    """``n`` equally spaced points from ``a`` to ``b`` inclusive."""
    a, b = Fraction(a), Fraction(b)
    if n < 1 or (n == 1 and a != b) or (n > 1 and not a < b):
        raise InvalidArgument(f"bad interval grid ({a}, {b}, {n})")
    if n == 1:
        pts = (a,)
    else:
        pts = tuple(a + (b - a) * Fraction(i, n - 1) for i in range(n))
    return CompactRealSet(pts, (), f"interval-grid({a},{b},{n})")


def finite_set(points) -> CompactRealSet:
    return CompactRealSet(tuple(sorted(_as_exact(p) for p in points)))


def parse_set(spec: str) -> CompactRealSet:
    """Parse ``sigma0:N``, ``grid:a,b,N`` or ``points:t1,t2,...``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "sigma0":
            return sigma0(int(arg))
        if kind == "grid":
            a, b, n = arg.split(",")
            return interval_grid(Fraction(a), Fraction(b), int(n))
        if kind == "points":
            return finite_set(Fraction(x) for x in arg.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"cannot parse set {spec!r}: {exc}") from None
    raise InvalidArgument(f"unknown set family in {spec!r}")
