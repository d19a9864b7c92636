"""Exact scalars and dense linear algebra over the rationals.

Matrices are plain ``list[list[Fraction]]``. Subspaces are stored by their
canonical (reduced row-echelon) basis, so equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _config, _kernels

Matrix = list[list[Fraction]]


class DimensionError(ValueError):
    """Raised when operands live in spaces of different dimension."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'p/q' strings")
    return Fraction(x)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[to_fraction(v) for v in row] for row in rows]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m: Sequence[Sequence[Fraction]], cols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def _rref_pivots(m: Sequence[Sequence], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    a = to_matrix(m)
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        prow = [v * inv for v in a[r]]
        a[r] = prow
        for i in range(rows):
            if i != r:
                f = a[i][col]
                if f:
                    row = a[i]
                    a[i] = [x - f * y if y else x for x, y in zip(row, prow)]
        pivots.append(col)
        r += 1
    return a, pivots


def rref(m: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Reduced row-echelon form and rank. Zero rows are kept at the bottom."""
    reduced, pivots = _rref_pivots(m)
    return reduced, len(pivots)


def _to_modp(m: Sequence[Sequence], p: int) -> np.ndarray:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = np.zeros((rows, cols), dtype=np.int64)
    for i, row in enumerate(m):
        for j, v in enumerate(row):
            v = to_fraction(v)
            if v.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {v} vanishes mod {p}")
            out[i, j] = (v.numerator % p) * pow(v.denominator, -1, p) % p
    return out


def rank_exact(m: Sequence[Sequence]) -> int:
    return len(_rref_pivots(m)[1])


def rank(m: Sequence[Sequence]) -> int:
    """Rank of ``m``; reduced mod p when the prime-field mode is on (advisory)."""
    p = _config.prime_modulus()
    if p is None:
        return rank_exact(m)
    if not m or not len(m[0]):
        return 0
    return _kernels.rank_modp(_to_modp(m, p), p)


def det(m: Sequence[Sequence]) -> Fraction:
    a = to_matrix(m)
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return sign * result


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(row) + e for row, e in zip(to_matrix(m), identity(n))]
    reduced, pivots = _rref_pivots(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in reduced]


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^ambient_dim held by its reduced row-echelon basis."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, labels=None) -> Subspace:
        rows = [list(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not rows:
            return cls(ambient_dim, (), labels)
        reduced, pivots = _rref_pivots(rows)
        return cls(ambient_dim, tuple(tuple(r) for r in reduced[: len(pivots)]), labels)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, tuple(tuple(r) for r in identity(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(j for j, v in enumerate(row) if v) for row in self.basis]

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        w = [to_fraction(x) for x in v]
        for row, piv in zip(self.basis, self.pivots()):
            f = w[piv]
            if f:
                w = [x - f * y for x, y in zip(w, row)]
        return not any(w)

    def issubspace(self, other: Subspace) -> bool:
        _check_ambient(self, other)
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: Subspace) -> Subspace:
        _check_ambient(self, other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim, self.labels)


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient_dim != v.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}")


def subspace_equal(u: Subspace, v: Subspace) -> bool:
    _check_ambient(u, v)
    return u.basis == v.basis


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> Subspace:
    """Right kernel {v : m v = 0}. ``ncols`` is required when ``m`` has no rows."""
    if not m:
        if ncols is None:
            raise DimensionError("ncols needed for a matrix without rows")
        return Subspace.full(ncols)
    cols = len(m[0])
    reduced, pivots = _rref_pivots(m)
    pivset = set(pivots)
    vecs = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for row, piv in zip(reduced, pivots):
            v[piv] = -row[free]
        vecs.append(v)
    return Subspace.span(vecs, cols)


def left_kernel(m: Sequence[Sequence]) -> Subspace:
    return kernel_basis(transpose(m), ncols=len(m))


@dataclass(frozen=True)
class DualNumber:
    """value + eps * epsilon with eps**2 = 0."""

    value: Fraction
    epsilon: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", to_fraction(self.value))
        object.__setattr__(self, "epsilon", to_fraction(self.epsilon))

    def _lift(self, other) -> DualNumber:
        return other if isinstance(other, DualNumber) else DualNumber(other)

    def __add__(self, other):
        o = self._lift(other)
        return DualNumber(self.value + o.value, self.epsilon + o.epsilon)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.value, -self.epsilon)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        return dual_mul(self, self._lift(other))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"DualNumber({self.value}, {self.epsilon})"


def dual_mul(u: DualNumber, v: DualNumber) -> DualNumber:
    return DualNumber(u.value * v.value, u.value * v.epsilon + u.epsilon * v.value)
