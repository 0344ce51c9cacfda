"""Matrix models of operators on finite truncations of c0, l^p and C(sigma)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .sets import CompactRealSet, InvalidArgument, sigma0, sigma0_index

KINDS = ("c0", "lp", "sup", "csigma")


@dataclass(frozen=True)
class SpaceTag:
    """Which normed space a coordinate vector lives in.

    ``c0``, ``sup`` and ``csigma`` all carry the sup norm; ``lp`` carries the
    p-norm with ``p`` in [1, inf].
    """

    kind: str
    dimension: int
    p: float | None = None
    set: CompactRealSet | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidArgument(f"unknown space kind {self.kind!r}")
        if self.dimension < 1:
            raise InvalidArgument("dimension must be positive")
        if self.kind == "lp":
            if self.p is None or not self.p >= 1:
                raise InvalidArgument(f"lp model needs p >= 1, got {self.p!r}")
        if self.kind == "csigma":
            if self.set is None or len(self.set) != self.dimension:
                raise InvalidArgument("csigma model dimension must equal the number of points")

    @property
    def exponent(self) -> float:
        return float(self.p) if self.kind == "lp" else math.inf

    def label(self) -> str:
        if self.kind == "lp":
            return f"lp({format_p(self.p)})[{self.dimension}]"
        return f"{self.kind}[{self.dimension}]"


def format_p(p) -> str:
    return "inf" if p == math.inf else f"{p:g}"


def c0_model(dim: int) -> SpaceTag:
    return SpaceTag("c0", dim)


def sup_model(dim: int) -> SpaceTag:
    return SpaceTag("sup", dim)


def lp_model(p: float, dim: int) -> SpaceTag:
    return SpaceTag("lp", dim, p=float(p))


def csigma_model(s: CompactRealSet) -> SpaceTag:
    return SpaceTag("csigma", len(s), set=s)


def conjugate_exponent(p: float) -> float:
    if p == 1:
        return math.inf
    if p == math.inf:
        return 1.0
    return p / (p - 1)


def dual_tag(tag: SpaceTag) -> SpaceTag:
    """l^p -> l^p', with the sup-normed kinds and l^inf going to l^1."""
    q = conjugate_exponent(tag.exponent)
    if q == math.inf:
        return sup_model(tag.dimension)
    return lp_model(q, tag.dimension)


@dataclass(frozen=True)
class VectorModel:
    coords: np.ndarray
    space: SpaceTag

    def __post_init__(self):
        if len(self.coords) != self.space.dimension:
            raise InvalidArgument("vector length does not match its space")

    def norm(self) -> float:
        return vector_norm(self.coords, self.space.exponent)


@dataclass(frozen=True, eq=False)
class OperatorModel:
    """Dense matrix together with domain/codomain tags.

    ``diagonal`` holds the exact diagonal entries when the model is a
    multiplication operator, so functions can be evaluated on them exactly.
    """

    matrix: np.ndarray
    domain: SpaceTag
    codomain: SpaceTag
    diagonal: tuple | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.ndim != 2 or m.shape != (self.codomain.dimension, self.domain.dimension):
            raise InvalidArgument(
                f"matrix shape {m.shape} does not match "
                f"{self.codomain.label()} x {self.domain.label()}"
            )
        object.__setattr__(self, "matrix", m)

    @property
    def shape(self):
        return self.matrix.shape

    def __matmul__(self, other):
        if isinstance(other, OperatorModel):
            return OperatorModel(self.matrix @ other.matrix, other.domain, self.codomain)
        return self.matrix @ other

    def retag(self, domain: SpaceTag, codomain: SpaceTag | None = None) -> OperatorModel:
        return OperatorModel(self.matrix, domain, codomain or domain, self.diagonal)


def vector_norm(x: np.ndarray, p: float) -> float:
    a = np.abs(np.asarray(x))
    if a.size == 0:
        return 0.0
    if p == math.inf:
        return float(a.max())
    if p == 1:
        return float(a.sum())
    top = a.max()
    if top == 0:
        return 0.0
    return float(top * np.sum((a / top) ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# concrete models


def multiplication_operator(s: CompactRealSet) -> OperatorModel:
    """Tx(t) = t x(t) on the C(sigma) model of ``s``."""
    tag = csigma_model(s)
    return OperatorModel(np.diag(s.as_array()), tag, tag, diagonal=s.points)


def u_iso_c0(n: int) -> tuple[OperatorModel, OperatorModel]:
    """Isomorphism c0 -> C(sigma0) and its inverse on the n-truncation.

    U(x)(0) = x_0 and U(x)((-1)^k/k) = x_0 + x_k.
    """
    s = sigma0(n)
    rows = np.array([sigma0_index(n, k) for k in range(n + 1)])
    i0 = rows[0]
    U = np.zeros((n + 1, n + 1))
    Uinv = np.zeros((n + 1, n + 1))
    U[rows, 0] = 1.0
    U[rows[1:], np.arange(1, n + 1)] = 1.0
    Uinv[0, i0] = 1.0
    Uinv[np.arange(1, n + 1), rows[1:]] = 1.0
    Uinv[1:, i0] = -1.0
    c0, cs = c0_model(n + 1), csigma_model(s)
    return OperatorModel(U, c0, cs), OperatorModel(Uinv, cs, c0)


def ell1_iso_u(n: int) -> tuple[OperatorModel, OperatorModel]:
    """Isomorphism from functions on sigma0(n) to l^1 coordinates, and its inverse.

    Coordinates are 1-based in the formulas below (row j-1 holds x_j):
    odd coordinates telescope along -1, -1/3, ..., -1/(n-1), 0 and even ones
    along 1/2, 1/4, ..., 1/n, 0.  The truncation needs n+1 coordinates; the
    last odd one, g(0) - g(-1/(n-1)), and the last even one, g(1/n) - g(0),
    carry the tails of the infinite sequence.
    """
    if not isinstance(n, int) or n < 4 or n % 2:
        raise InvalidArgument(f"ell1_iso_u needs an even n >= 4, got {n!r}")
    s = sigma0(n)
    dim = n + 1
    idx = {t: i for i, t in enumerate(s.points)}

    def neg(k):  # index of -1/k, k odd
        return idx[Fraction(-1, k)]

    def pos(k):  # index of 1/k, k even
        return idx[Fraction(1, k)]

    zero = idx[Fraction(0)]
    F = np.zeros((dim, dim))

    F[0, neg(1)] = 1.0
    for j in range(1, n // 2):
        F[2 * j, neg(2 * j + 1)] += 1.0
        F[2 * j, neg(2 * j - 1)] -= 1.0
        F[2 * j - 1, pos(2 * j)] += 1.0
        F[2 * j - 1, pos(2 * j + 2)] -= 1.0
    F[n, zero] += 1.0
    F[n, neg(n - 1)] -= 1.0
    F[n - 1, pos(n)] += 1.0
    F[n - 1, zero] -= 1.0

    # inverse: partial sums of the coordinates, written out point by point
    G = np.zeros((dim, dim))
    odd = [j for j in range(1, dim + 1) if j % 2 == 1]
    for m in range(1, n // 2 + 1):
        for j in range(1, m + 1):
            G[neg(2 * m - 1), 2 * j - 2] = 1.0
    for j in odd:
        G[zero, j - 1] = 1.0
    for m in range(1, n // 2 + 1):
        row = pos(2 * m)
        G[row, :] = 1.0
        for j in range(1, m):
            G[row, 2 * j - 1] -= 1.0

    cs, l1 = csigma_model(s), lp_model(1, dim)
    return OperatorModel(F, cs, l1), OperatorModel(G, l1, cs)


def direct_sum(A: OperatorModel, omega=None, m: int = 1) -> OperatorModel:
    """Block model A (+) omega I_m; omega defaults to 1 + max of A's diagonal."""
    if m < 0:
        raise InvalidArgument("m must be nonnegative")
    if m == 0:
        return A
    if A.diagonal is not None:
        top = max(A.diagonal)
        if omega is None:
            omega = 1 + top
        if not omega > top:
            raise InvalidArgument(f"omega={omega} must exceed max of the spectrum {top}")
    elif omega is None:
        raise InvalidArgument("omega is required for non-multiplication models")
    k = A.shape[1]
    M = np.zeros((k + m, k + m), dtype=np.result_type(A.matrix, float(omega)))
    M[: A.shape[0], :k] = A.matrix
    M[k:, k:] = float(omega) * np.eye(m)
    dom = _extended_tag(A.domain, k + m)
    cod = _extended_tag(A.codomain, A.shape[0] + m)
    diag = None if A.diagonal is None else tuple(A.diagonal) + (omega,) * m
    return OperatorModel(M, dom, cod, diag)


def _extended_tag(tag: SpaceTag, dim: int) -> SpaceTag:
    if tag.kind == "lp":
        return lp_model(tag.p, dim)
    return sup_model(dim)


def model_spectrum(A: OperatorModel) -> CompactRealSet:
    """The point set sigma carried by a multiplication-type model."""
    if A.diagonal is None:
        raise InvalidArgument("model has no exact diagonal")
    return CompactRealSet(tuple(sorted(set(A.diagonal))))


def adjoint(A: OperatorModel) -> OperatorModel:
    diag = None
    if A.diagonal is not None:
        diag = tuple(d.conjugate() for d in A.diagonal)
    return OperatorModel(A.matrix.conj().T, dual_tag(A.codomain), dual_tag(A.domain), diag)


# ---------------------------------------------------------------------------
# norms


class NormResult(NamedTuple):
    value: float
    exact: bool


def power_norm2(A: np.ndarray, rtol: float = 1e-10, maxiter: int = 100_000) -> float:
    """Largest singular value by power iteration on A^H A.

    The returned value is ||A x||_2 for a unit vector x, so it never exceeds
    the true norm beyond rounding.
    """
    A = np.asarray(A)
    if A.size == 0 or not np.any(A):
        return 0.0
    G = A.conj().T @ A
    rng = np.random.default_rng(0)
    x = rng.standard_normal(A.shape[1]) + 0.5
    if np.iscomplexobj(G):
        x = x + 1j * rng.standard_normal(A.shape[1])
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(maxiter):
        y = G @ x
        ny = np.linalg.norm(y)
        if ny == 0:
            break
        x = y / ny
        new = ny
        # the per-step change underestimates the remaining error when the
        # leading singular values are close, hence the extra margin
        if abs(new - lam) <= 1e-3 * rtol * new:
            lam = new
            break
        lam = new
    return float(np.linalg.norm(A @ x))


def _dual_vector(y: np.ndarray, p: float) -> np.ndarray:
    # unit vector in the conjugate norm attaining <dual, y> = ||y||_p
    a = np.abs(y)
    ny = vector_norm(y, p)
    if ny == 0:
        return np.zeros_like(y)
    phase = np.where(a > 0, y / np.where(a > 0, a, 1), 0)
    return phase * (a / ny) ** (p - 1)


def estimate_p_norm(A: np.ndarray, p: float, seed: int = 0, random_starts: int = 8,
                    maxiter: int = 200) -> float:
    """Certified lower bound for ||A||_p by multi-start dual-vector ascent.

    Every candidate is the ratio ||Ax||_p / ||x||_p of an actual vector, so
    the result can only under-estimate the norm.
    """
    A = np.asarray(A)
    ncols = A.shape[1]
    if A.size == 0 or not np.any(A):
        return 0.0
    q = conjugate_exponent(p)
    rng = np.random.default_rng(seed)
    starts = [np.ones(ncols)] + [np.eye(ncols)[j] for j in range(min(ncols, 32))]
    for _ in range(random_starts):
        v = rng.standard_normal(ncols)
        if np.iscomplexobj(A):
            v = v + 1j * rng.standard_normal(ncols)
        starts.append(v)
    best = 0.0
    for x in starts:
        x = x / vector_norm(x, p)
        for _ in range(maxiter):
            y = A @ x
            best = max(best, vector_norm(y, p))
            z = A.conj().T @ _dual_vector(y, p)
            if vector_norm(z, q) <= np.real(np.vdot(z, x)) * (1 + 1e-13):
                break
            x = _dual_vector(z, q)
            nx = vector_norm(x, p)
            if nx == 0:
                break
            x = x / nx
        best = max(best, vector_norm(A @ x, p))
    return float(best)


def matrix_p_norm(A, p: float, seed: int = 0) -> NormResult:
    A = np.asarray(A)
    if p == math.inf:
        return NormResult(float(np.abs(A).sum(axis=1).max(initial=0.0)), True)
    if p == 1:
        return NormResult(float(np.abs(A).sum(axis=0).max(initial=0.0)), True)
    if p == 2:
        return NormResult(power_norm2(A), True)
    return NormResult(estimate_p_norm(A, p, seed=seed), False)


def operator_norm(A: OperatorModel, p: float | None = None) -> NormResult:
    """Norm of the model for its domain tag (or the exponent ``p`` if given)."""
    return matrix_p_norm(A.matrix, A.domain.exponent if p is None else p)
