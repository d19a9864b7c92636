"""Wedge and symmetric-power bookkeeping.

Index subsets are sorted tuples of 0-based indices; they are printed and
serialised 1-based. Every sign is the parity of an inversion count.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .exact_linalg import DimensionError, to_fraction

IndexSubset = tuple[int, ...]
ExponentVector = tuple[int, ...]


def inversions(seq: Sequence[int]) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def complement(beta: Sequence[int], n: int) -> IndexSubset:
    s = set(beta)
    return tuple(i for i in range(n) if i not in s)


def shuffle_sign(beta: Sequence[int], n: int) -> int:
    """Sign of the permutation (beta, complement(beta)) of range(n)."""
    if any(not 0 <= i < n for i in beta) or list(beta) != sorted(set(beta)):
        raise ValueError(f"{beta} is not a sorted subset of range({n})")
    return -1 if inversions(list(beta) + list(complement(beta, n))) % 2 else 1


def subsets(n: int, k: int) -> list[IndexSubset]:
    return list(combinations(range(n), k))


@lru_cache(maxsize=None)
def sym_basis(b: int, d: int) -> tuple[ExponentVector, ...]:
    """Exponent vectors of degree d in b variables, descending lexicographic."""
    if b < 1 or d < 0:
        raise ValueError("sym_basis needs b >= 1 and d >= 0")
    if b == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        out.extend((first,) + rest for rest in sym_basis(b - 1, d - first))
    return tuple(out)


@lru_cache(maxsize=None)
def sym_index(b: int, d: int) -> dict[ExponentVector, int]:
    return {e: i for i, e in enumerate(sym_basis(b, d))}


def sym_dim(b: int, d: int) -> int:
    return comb(b + d - 1, d)


def key_of(subset: Sequence[int]) -> str:
    return ",".join(str(i + 1) for i in subset)


def subset_of_key(key: str) -> IndexSubset:
    key = key.strip()
    if not key:
        return ()
    return tuple(int(p) - 1 for p in key.split(","))


class MultiVector:
    """Element of the grade-k exterior power of Q^ambient."""

    __slots__ = ("grade", "ambient", "coords")

    def __init__(self, grade: int, ambient: int, coords: Mapping[IndexSubset, Fraction] | None = None):
        self.grade = grade
        self.ambient = ambient
        self.coords: dict[IndexSubset, Fraction] = {}
        for s, v in (coords or {}).items():
            s = tuple(s)
            if len(s) != grade:
                raise ValueError(f"key {s} does not have grade {grade}")
            v = to_fraction(v)
            if v:
                self.coords[s] = v

    @classmethod
    def from_vector(cls, vec: Sequence) -> MultiVector:
        return cls(1, len(vec), {(i,): v for i, v in enumerate(vec)})

    @classmethod
    def one(cls, ambient: int) -> MultiVector:
        return cls(0, ambient, {(): Fraction(1)})

    @classmethod
    def basis(cls, subset: Sequence[int], ambient: int) -> MultiVector:
        return cls(len(subset), ambient, {tuple(subset): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coords

    def coefficient(self, subset: Sequence[int]) -> Fraction:
        return self.coords.get(tuple(subset), Fraction(0))

    def wedge(self, other: MultiVector) -> MultiVector:
        return wedge(self, other)

    def __add__(self, other: MultiVector) -> MultiVector:
        if (self.grade, self.ambient) != (other.grade, other.ambient):
            raise DimensionError("adding multivectors of different grade or ambient")
        out = dict(self.coords)
        for s, v in other.coords.items():
            out[s] = out.get(s, Fraction(0)) + v
        return MultiVector(self.grade, self.ambient, out)

    def __neg__(self) -> MultiVector:
        return self.scale(-1)

    def __sub__(self, other: MultiVector) -> MultiVector:
        return self + (-other)

    def scale(self, f) -> MultiVector:
        f = to_fraction(f)
        return MultiVector(self.grade, self.ambient, {s: f * v for s, v in self.coords.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiVector):
            return NotImplemented
        return (self.grade, self.ambient, self.coords) == (other.grade, other.ambient, other.coords)

    def __repr__(self) -> str:
        if not self.coords:
            return "0"
        return " + ".join(f"({v})*e[{key_of(s)}]" for s, v in sorted(self.coords.items()))

    def to_json(self) -> dict[str, str]:
        return {key_of(s): str(v) for s, v in sorted(self.coords.items())}


def _wedge_basis(s: IndexSubset, t: IndexSubset) -> tuple[int, IndexSubset | None]:
    if set(s) & set(t):
        return 0, None
    seq = s + t
    return (-1 if inversions(seq) % 2 else 1), tuple(sorted(seq))


def wedge(u: MultiVector, v: MultiVector) -> MultiVector:
    if u.ambient != v.ambient:
        raise DimensionError("wedge of multivectors over different ambient spaces")
    grade = u.grade + v.grade
    out: dict[IndexSubset, Fraction] = {}
    if grade <= u.ambient:
        for s, x in u.coords.items():
            for t, y in v.coords.items():
                sign, st = _wedge_basis(s, t)
                if sign:
                    out[st] = out.get(st, Fraction(0)) + sign * x * y
    return MultiVector(grade, u.ambient, out)


def wedge_all(vectors: Iterable[Sequence], ambient: int) -> MultiVector:
    vectors = list(vectors)
    acc = MultiVector.one(ambient)
    for vec in vectors:
        acc = wedge(acc, MultiVector.from_vector(vec))
        if acc.is_zero():
            return MultiVector(len(vectors), ambient)
    return acc
