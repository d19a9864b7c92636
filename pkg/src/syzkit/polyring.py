"""Polynomials over Q, graded pieces of ideals, and a Buchberger engine.

A ``Poly`` is a dict from exponent tuples to nonzero Fractions. The only
monomial order is graded reverse lexicographic with c1 > c2 > ... .
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import heapq
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exact_linalg import DimensionError, DualNumber, Matrix, Subspace, to_fraction
from .multilin import sym_basis, sym_index

Monomial = tuple[int, ...]


@lru_cache(maxsize=1 << 16)
def grevlex_key(e: Monomial) -> tuple:
    return (sum(e), tuple(-x for x in reversed(e)))


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Monomial, object] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise DimensionError(f"monomial {e} has length {len(e)}, expected {nvars}")
            c = to_fraction(c)
            if c:
                self.terms[e] = c

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> Poly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, value, nvars: int) -> Poly:
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def var(cls, i: int, nvars: int) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> Poly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise DimensionError(f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.nvars)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, f) -> Poly:
        f = to_fraction(f)
        if not f:
            return Poly.zero(self.nvars)
        return Poly._raw(self.nvars, {e: c * f for e, c in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff: Fraction) -> Poly:
        return Poly._raw(
            self.nvars,
            {tuple(x + y for x, y in zip(e, mono)): c * coeff for e, c in self.terms.items()},
        )

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        out = Poly.constant(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (degree is None or degs == {degree})

    def leading_monomial(self) -> Monomial:
        return max(self.terms, key=grevlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def monic(self) -> Poly:
        return self.scale(1 / self.leading_coeff()) if self.terms else self

    def diff(self, i: int) -> Poly:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Poly._raw(self.nvars, out)

    def __call__(self, x: Sequence):
        return evaluate(self, x)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"c{i + 1}" if k == 1 else f"c{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[dict]:
        return [
            {"exponents": list(e), "coeff": str(self.terms[e])}
            for e in sorted(self.terms, key=grevlex_key, reverse=True)
        ]

    @classmethod
    def from_json(cls, data: list[dict], nvars: int) -> Poly:
        return cls(nvars, {tuple(t["exponents"]): Fraction(t["coeff"]) for t in data})


def poly_add(f: Poly, g: Poly) -> Poly:
    f._check(g)
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    f._check(g)
    return f * g


def _monomial_divides(m: Monomial, e: Monomial) -> bool:
    return all(x <= y for x, y in zip(m, e))


def poly_divexact(f: Poly, g: Poly) -> Poly:
    """Quotient f / g, raising ArithmeticError unless g divides f."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lm, lc = g.leading_monomial(), g.leading_coeff()
    rem = f
    q: dict[Monomial, Fraction] = {}
    while rem.terms:
        e = rem.leading_monomial()
        if not _monomial_divides(lm, e):
            raise ArithmeticError("division is not exact")
        mono = tuple(x - y for x, y in zip(e, lm))
        c = rem.terms[e] / lc
        q[mono] = c
        rem = rem - g.mul_term(mono, c)
    return Poly._raw(f.nvars, q)


def poly_det(rows: Sequence[Sequence[Poly]], nvars: int) -> Poly:
    """Determinant of a square polynomial matrix by fraction-free Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return Poly.constant(1, nvars)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly.constant(1, nvars)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Poly.zero(nvars)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = poly_divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def evaluate(f: Poly, x: Sequence) -> Fraction:
    if len(x) != f.nvars:
        raise DimensionError(f"point has {len(x)} coordinates, polynomial has {f.nvars} variables")
    xs = [to_fraction(v) for v in x]
    total = Fraction(0)
    for e, c in f.terms.items():
        t = c
        for v, k in zip(xs, e):
            if k:
                t *= v**k
        total += t
    return total


def evaluate_dual(f: Poly, x: Sequence, y: Sequence) -> DualNumber:
    """f(x + eps*y) computed in the dual numbers: f(x) + eps * grad f(x) . y."""
    if len(x) != f.nvars or len(y) != f.nvars:
        raise DimensionError("point/direction length does not match the variable count")
    pts = [DualNumber(a, b) for a, b in zip(x, y)]
    total = DualNumber(0)
    for e, c in f.terms.items():
        t = DualNumber(c)
        for v, k in zip(pts, e):
            for _ in range(k):
                t = t * v
        total = total + t
    return total


def jacobian_at(gens: Sequence[Poly], x: Sequence) -> Matrix:
    if not gens:
        return []
    n = gens[0].nvars
    if any(g.nvars != n for g in gens):
        raise DimensionError("generators in different polynomial rings")
    return [[evaluate(g.diff(i), x) for i in range(n)] for g in gens]


# graded pieces


@dataclass(frozen=True)
class GradedPiece:
    degree: int
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


def poly_to_vector(f: Poly, d: int) -> list[Fraction]:
    idx = sym_index(f.nvars, d)
    v = [Fraction(0)] * len(idx)
    for e, c in f.terms.items():
        try:
            v[idx[e]] = c
        except KeyError:
            raise ValueError(f"{f} is not homogeneous of degree {d}") from None
    return v


def vector_to_poly(v: Sequence, nvars: int, d: int) -> Poly:
    return Poly(nvars, {e: c for e, c in zip(sym_basis(nvars, d), v)})


def graded_piece(gens: Sequence[Poly], d: int, nvars: int | None = None) -> GradedPiece:
    """Degree-d part of the ideal generated by homogeneous ``gens`` (all of one degree)."""
    gens = [g for g in gens if g]
    if nvars is None:
        if not gens:
            raise ValueError("nvars required when there are no nonzero generators")
        nvars = gens[0].nvars
    labels = tuple(
        "*".join(f"c{i + 1}^{k}" if k > 1 else f"c{i + 1}" for i, k in enumerate(e) if k) or "1"
        for e in sym_basis(nvars, d)
    )
    if not gens:
        return GradedPiece(d, Subspace(len(labels), (), labels))
    degs = {g.degree() for g in gens}
    if len(degs) != 1 or not all(g.is_homogeneous() for g in gens):
        raise ValueError("graded_piece needs homogeneous generators of a single degree")
    b = degs.pop()
    if d < b:
        raise ValueError(f"degree {d} is below the generator degree {b}")
    vecs = []
    for mono in sym_basis(nvars, d - b):
        for g in gens:
            vecs.append(poly_to_vector(g.mul_term(mono, Fraction(1)), d))
    return GradedPiece(d, Subspace.span(vecs, len(labels), labels))


# Groebner bases


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Poly, ...]
    order: str = "grevlex"
    reduced: bool = True

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial() for g in self.generators]


def _lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(m1, m2))


def s_polynomial(f: Poly, g: Poly) -> Poly:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    lcm = _lcm(lf, lg)
    uf = tuple(x - y for x, y in zip(lcm, lf))
    ug = tuple(x - y for x, y in zip(lcm, lg))
    return f.mul_term(uf, 1 / f.leading_coeff()) - g.mul_term(ug, 1 / g.leading_coeff())


def normal_form(f: Poly, basis: Sequence[Poly]) -> Poly:
    """Fully reduced remainder of f modulo ``basis`` (grevlex)."""
    leads = [(g.leading_monomial(), g.leading_coeff(), g) for g in basis if g]
    p = dict(f.terms)
    rem: dict[Monomial, Fraction] = {}
    while p:
        e = max(p, key=grevlex_key)
        c = p[e]
        for lm, lc, g in leads:
            if _monomial_divides(lm, e):
                mono = tuple(x - y for x, y in zip(e, lm))
                q = c / lc
                for ge, gc in g.terms.items():
                    t = tuple(x + y for x, y in zip(ge, mono))
                    v = p.get(t, 0) - q * gc
                    if v:
                        p[t] = v
                    else:
                        p.pop(t, None)
                break
        else:
            rem[e] = c
            del p[e]
    return Poly._raw(f.nvars, rem)


def _reduce_basis(basis: list[Poly]) -> list[Poly]:
    basis = [g.monic() for g in basis if g]
    minimal: list[Poly] = []
    for i, g in enumerate(basis):
        lm = g.leading_monomial()
        redundant = False
        for j, h in enumerate(basis):
            if i == j:
                continue
            lh = h.leading_monomial()
            if _monomial_divides(lh, lm) and (lh != lm or j < i):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    out = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        out.append(normal_form(g, others).monic())
    return sorted(out, key=lambda g: grevlex_key(g.leading_monomial()))


def buchberger(gens: Iterable[Poly]) -> GroebnerBasis:
    """Reduced Groebner basis under grevlex.

    Pairs are processed in the normal strategy (smallest lcm first). A pair
    is skipped when its leading monomials are coprime, or when a third
    leading monomial divides their lcm and both of its pairs with the
    current two are already done (Buchberger's chain criterion).
    """
    basis = [g.monic() for g in gens if g]
    if not basis:
        return GroebnerBasis(())
    leads = [g.leading_monomial() for g in basis]
    heap: list = []
    pending: set[tuple[int, int]] = set()

    def push(i: int, j: int) -> None:
        heapq.heappush(heap, (grevlex_key(_lcm(leads[i], leads[j])), i, j))
        pending.add((i, j))

    for i, j in combinations(range(len(basis)), 2):
        push(i, j)
    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        lcm = _lcm(li, lj)
        if any(
            k != i
            and k != j
            and _monomial_divides(lk, lcm)
            and (min(i, k), max(i, k)) not in pending
            and (min(j, k), max(j, k)) not in pending
            for k, lk in enumerate(leads)
        ):
            continue
        r = normal_form(s_polynomial(basis[i], basis[j]), basis)
        if r:
            basis.append(r.monic())
            leads.append(basis[-1].leading_monomial())
            k = len(basis) - 1
            for m in range(k):
                push(m, k)
    return GroebnerBasis(tuple(_reduce_basis(basis)))


def is_groebner(gb: GroebnerBasis) -> bool:
    g = gb.generators
    return all(not normal_form(s_polynomial(g[i], g[j]), g) for i, j in combinations(range(len(g)), 2))


def _require_homogeneous(gens: Sequence[Poly]) -> None:
    if not all(g.is_homogeneous() for g in gens):
        raise ValueError("generators must be homogeneous")


def is_projectively_empty(gens: Sequence[Poly], nvars: int) -> bool:
    """True iff the homogeneous ``gens`` have no common zero in P^(nvars-1)."""
    _require_homogeneous(gens)
    gb = buchberger(gens)
    leads = gb.leading_monomials()
    if any(sum(m) == 0 for m in leads):
        return True
    for i in range(nvars):
        if not any(m[i] > 0 and sum(m) == m[i] for m in leads):
            return False
    return True


def ideal_dimension(gens: Sequence[Poly], nvars: int | None = None) -> int:
    """Affine Krull dimension of the ideal, read off the leading-term ideal.

    The unit ideal has dimension -1.
    """
    _require_homogeneous(gens)
    if nvars is None:
        nvars = gens[0].nvars
    leads = buchberger(gens).leading_monomials()
    supports = [frozenset(i for i, k in enumerate(m) if k) for m in leads]
    if any(not s for s in supports):
        return -1
    for size in range(nvars, -1, -1):
        for s in combinations(range(nvars), size):
            ss = set(s)
            if not any(sup <= ss for sup in supports):
                return size
    return -1  # pragma: no cover - the empty subset always qualifies above
