"""Triple tensors A (x) B -> C and their matrices of linear forms.

``t.coeffs[i][j][k]`` is the c_k-coordinate of gamma(a_i (x) b_j). All
indices are 0-based in code and 1-based in anything printed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

import numpy as np

from . import _config
from .exact_linalg import DimensionError, Matrix, rank, to_fraction
from .multilin import ExponentVector, IndexSubset, MultiVector, subsets, sym_basis, wedge
from .polyring import Poly, is_projectively_empty, poly_det

LinearFormMatrix = list[list[Poly]]


@dataclass(frozen=True)
class TripleTensor:
    a: int
    b: int
    c: int
    coeffs: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1:
            raise ValueError("tensor dimensions must be at least 1")
        rows = tuple(
            tuple(tuple(to_fraction(v) for v in entry) for entry in row) for row in self.coeffs
        )
        if len(rows) != self.a or any(len(r) != self.b for r in rows):
            raise DimensionError(f"coefficient grid is not {self.a}x{self.b}")
        if any(len(e) != self.c for r in rows for e in r):
            raise DimensionError(f"entries must be vectors of length {self.c}")
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def from_nested(cls, entries: Sequence[Sequence[Sequence]]) -> TripleTensor:
        a = len(entries)
        b = len(entries[0])
        c = len(entries[0][0])
        return cls(a, b, c, entries)

    @classmethod
    def from_linear_forms(cls, matrix: Sequence[Sequence[Sequence]]) -> TripleTensor:
        """Alias of ``from_nested``: entry (i, j) is the coefficient vector of a linear form."""
        return cls.from_nested(matrix)

    def entry(self, i: int, j: int) -> tuple[Fraction, ...]:
        return self.coeffs[i][j]

    def transpose(self) -> TripleTensor:
        return TripleTensor(
            self.b, self.a, self.c, [[self.coeffs[i][j] for i in range(self.a)] for j in range(self.b)]
        )

    def change_basis(self, rows: Matrix | None = None, cols: Matrix | None = None) -> TripleTensor:
        """Tensor in new bases; row r of ``rows`` (``cols``) is the r-th new basis vector of A (B).

        Fewer rows than a (or b) give the restriction to the spanned subspace.
        """
        t = self.coeffs
        if rows is not None:
            t = tuple(
                tuple(
                    tuple(sum((p * t[i][j][k] for i, p in enumerate(prow)), Fraction(0)) for k in range(self.c))
                    for j in range(self.b)
                )
                for prow in rows
            )
        if cols is not None:
            t = tuple(
                tuple(
                    tuple(sum((q * t[i][j][k] for j, q in enumerate(qrow)), Fraction(0)) for k in range(self.c))
                    for qrow in cols
                )
                for i in range(len(t))
            )
        return TripleTensor(len(t), len(t[0]), self.c, t)

    def submatrix(self, rows: Sequence[int]) -> TripleTensor:
        return TripleTensor(len(rows), self.b, self.c, [self.coeffs[i] for i in rows])

    def is_zero(self) -> bool:
        return not any(v for row in self.coeffs for e in row for v in e)


def gamma_C(t: TripleTensor) -> LinearFormMatrix:
    """a x b matrix of linear forms in the c coordinates of C."""
    return [[Poly.linear(t.coeffs[i][j]) for j in range(t.b)] for i in range(t.a)]


def gamma_A(t: TripleTensor) -> LinearFormMatrix:
    """c x b matrix of linear forms in the row-space variables alpha_1..alpha_a."""
    return [
        [Poly.linear([t.coeffs[i][j][k] for i in range(t.a)]) for j in range(t.b)] for k in range(t.c)
    ]


def gamma_B(t: TripleTensor) -> LinearFormMatrix:
    """c x a matrix of linear forms in the column-space variables beta_1..beta_b."""
    return [
        [Poly.linear([t.coeffs[i][j][k] for j in range(t.b)]) for i in range(t.a)] for k in range(t.c)
    ]


def row_map(t: TripleTensor, alpha: Sequence) -> Matrix:
    """Matrix (c x b) of gamma_alpha: B -> C for a generalized row alpha."""
    al = [to_fraction(v) for v in alpha]
    if len(al) != t.a:
        raise DimensionError(f"generalized row needs {t.a} coordinates")
    return [
        [sum((al[i] * t.coeffs[i][j][k] for i in range(t.a)), Fraction(0)) for j in range(t.b)]
        for k in range(t.c)
    ]


def col_map(t: TripleTensor, beta: Sequence) -> Matrix:
    """Matrix (c x a) of gamma_beta: A -> C for a generalized column beta."""
    be = [to_fraction(v) for v in beta]
    if len(be) != t.b:
        raise DimensionError(f"generalized column needs {t.b} coordinates")
    return [
        [sum((be[j] * t.coeffs[i][j][k] for j in range(t.b)), Fraction(0)) for i in range(t.a)]
        for k in range(t.c)
    ]


def row_rank(t: TripleTensor, alpha: Sequence) -> int:
    if not any(to_fraction(v) for v in alpha):
        raise ValueError("a generalized row must be nonzero")
    return rank(row_map(t, alpha))


def col_rank(t: TripleTensor, beta: Sequence) -> int:
    if not any(to_fraction(v) for v in beta):
        raise ValueError("a generalized column must be nonzero")
    return rank(col_map(t, beta))


def matrix_at(t: TripleTensor, x: Sequence) -> Matrix:
    """gamma_C evaluated at a point x of P(C)."""
    xs = [to_fraction(v) for v in x]
    if len(xs) != t.c:
        raise DimensionError(f"point needs {t.c} coordinates")
    return [
        [sum((v * w for v, w in zip(t.coeffs[i][j], xs)), Fraction(0)) for j in range(t.b)]
        for i in range(t.a)
    ]


@lru_cache(maxsize=256)
def maximal_minor(t: TripleTensor, beta: IndexSubset) -> Poly:
    beta = tuple(beta)
    if len(beta) != t.b or list(beta) != sorted(set(beta)) or any(not 0 <= i < t.a for i in beta):
        raise ValueError(f"{beta} is not a {t.b}-subset of the {t.a} rows")
    m = gamma_C(t)
    return poly_det([m[i] for i in beta], t.c)


def maximal_minors(t: TripleTensor) -> list[Poly]:
    """All b x b minors of gamma_C, ordered by row subset."""
    if t.a < t.b:
        raise ValueError("maximal minors need a >= b")
    return [maximal_minor(t, beta) for beta in subsets(t.a, t.b)]


def exterior_minor(t: TripleTensor, rows: Sequence[int], m: ExponentVector) -> MultiVector:
    """Sum over all n! arrangements of the column multiset of m of c_{r1,s1} ^ ... ^ c_{rn,sn}.

    Arrangements that coincide because of repeated columns are counted with
    multiplicity, so b_1^n gives n! times a single wedge.
    """
    rows = tuple(rows)
    n = len(rows)
    if len(m) != t.b or sum(m) != n:
        raise ValueError(f"exponent vector {m} must have {t.b} entries summing to {n}")
    mult = 1
    for k in m:
        mult *= factorial(k)
    counts = list(m)
    acc_terms = MultiVector(n, t.c)

    def rec(k: int, acc: MultiVector) -> None:
        nonlocal acc_terms
        if k == n:
            acc_terms = acc_terms + acc
            return
        for j in range(t.b):
            if counts[j]:
                nxt = wedge(acc, MultiVector.from_vector(t.coeffs[rows[k]][j]))
                if nxt.is_zero():
                    continue
                counts[j] -= 1
                rec(k + 1, nxt)
                counts[j] += 1

    rec(0, MultiVector.one(t.c))
    return acc_terms.scale(mult)


def exterior_minor_of(t: TripleTensor, rows: Sequence[int], s: Sequence) -> MultiVector:
    """Exterior minor applied to an element s of S_n B given in sym_basis coordinates."""
    n = len(rows)
    basis = sym_basis(t.b, n)
    if len(s) != len(basis):
        raise DimensionError(f"S_{n}B has dimension {len(basis)}, got {len(s)} coefficients")
    out = MultiVector(n, t.c)
    for coeff, m in zip(s, basis):
        coeff = to_fraction(coeff)
        if coeff:
            out = out + exterior_minor(t, rows, m).scale(coeff)
    return out


def e_n_matrix(t: TripleTensor, n: int) -> Matrix:
    """Matrix of e_n: Lambda^n A (x) S_n B -> Lambda^n C.

    Rows are n-subsets of C; columns are (row subset, exponent vector) pairs
    with the row subset varying slowest.
    """
    if n > min(t.a, t.c):
        raise ValueError(f"n={n} exceeds min(a, c)={min(t.a, t.c)}")
    targets = subsets(t.c, n)
    cols = [(rs, m) for rs in subsets(t.a, n) for m in sym_basis(t.b, n)]
    mat = [[Fraction(0)] * len(cols) for _ in targets]
    tidx = {s: r for r, s in enumerate(targets)}
    for col, (rs, m) in enumerate(cols):
        for s, v in exterior_minor(t, rs, m).coords.items():
            mat[tidx[s]][col] = v
    return mat


def green_report(t: TripleTensor) -> dict:
    expected = comb(t.a + t.b - 1, t.a)
    if t.a > t.c:
        return {
            "injective": False,
            "rank": None,
            "expected": expected,
            "reason": f"a={t.a} > c={t.c}: Lambda^a C is zero",
        }
    r = rank(e_n_matrix(t, t.a))
    return {
        "injective": r == expected,
        "rank": r,
        "expected": expected,
        "reason": "full column rank" if r == expected else "e_a has a kernel",
    }


def green_injectivity(t: TripleTensor) -> bool:
    """True iff e_a: Lambda^a A (x) S_a B -> Lambda^a C has full column rank."""
    return green_report(t)["injective"]


# 1-genericity


@dataclass(frozen=True)
class OneGenericReport:
    is_1generic: bool
    failing_side: str | None
    witness: tuple[Fraction, ...] | None
    rows_ok: bool
    cols_ok: bool
    field: str = "QQ"

    def to_json(self) -> dict:
        return {
            "is_1generic": self.is_1generic,
            "failing_side": self.failing_side,
            "witness": None if self.witness is None else [str(v) for v in self.witness],
            "rows_ok": self.rows_ok,
            "cols_ok": self.cols_ok,
            "field": self.field,
        }


def all_minors(mat: LinearFormMatrix, k: int, nvars: int) -> list[Poly]:
    """All k x k minors of a matrix of linear forms (rows >= k)."""
    ncols = len(mat[0]) if mat else 0
    out = []
    for rs in itertools.combinations(range(len(mat)), k):
        for cs in itertools.combinations(range(ncols), k):
            d = poly_det([[mat[r][c] for c in cs] for r in rs], nvars)
            if d:
                out.append(d)
    return out


def _side_ok(mat: LinearFormMatrix, nrows_needed: int, k: int, nvars: int) -> bool:
    if nrows_needed < k:
        return False
    minors = all_minors(mat, k, nvars)
    if not minors:
        return False
    return is_projectively_empty(minors, nvars)


def _candidate_points(n: int, budget: int, seed: int):
    seen = 0
    for norm in range(1, 3 * n + 1):
        bound = min(norm, 2)
        cands = []
        for v in itertools.product(range(-bound, bound + 1), repeat=n):
            if sum(abs(x) for x in v) != norm:
                continue
            first = next(x for x in v if x)
            if first > 0:
                cands.append(v)
        for v in sorted(cands, reverse=True):
            yield v
            seen += 1
            if seen >= budget // 2:
                break
        if seen >= budget // 2:
            break
    rng = np.random.default_rng(seed)
    while seen < budget:
        v = tuple(int(x) for x in rng.integers(-5, 6, size=n))
        if any(v):
            yield v
            seen += 1


def find_witness(t: TripleTensor, side: str, budget: int = 2000, seed: int = 0) -> tuple[Fraction, ...] | None:
    """Best-effort search for a generalized row (or column) of deficient rank."""
    n, full, rk = (t.a, t.b, row_rank) if side == "rows" else (t.b, t.a, col_rank)
    for v in _candidate_points(n, budget, seed):
        if rk(t, v) < full:
            return tuple(Fraction(x) for x in v)
    return None


def check_1generic(t: TripleTensor, witness_budget: int = 2000, seed: int = 0) -> OneGenericReport:
    """Certify 1-genericity: no generalized row of rank < b, no generalized column of rank < a.

    Each side is decided exactly by projective emptiness of the rank-drop
    locus. The witness is a best-effort search and may be absent.
    """
    return _check_1generic(t, witness_budget, seed, _config.field_name())


@lru_cache(maxsize=64)
def _check_1generic(t: TripleTensor, witness_budget: int, seed: int, field: str) -> OneGenericReport:
    rows_ok = _side_ok(gamma_A(t), t.c, t.b, t.a)
    cols_ok = _side_ok(gamma_B(t), t.c, t.a, t.b)
    side = None if rows_ok and cols_ok else ("rows" if not rows_ok else "cols")
    witness = find_witness(t, side, witness_budget, seed) if side else None
    return OneGenericReport(rows_ok and cols_ok, side, witness, rows_ok, cols_ok, field)


# generators


def catalecticant(a: int, b: int) -> TripleTensor:
    """Hankel tensor with gamma(a_i (x) b_j) = c_{i+j-1}, c = a + b - 1."""
    if a < 1 or b < 1:
        raise ValueError("catalecticant needs a, b >= 1")
    c = a + b - 1
    return TripleTensor(
        a, b, c, [[[1 if k == i + j else 0 for k in range(c)] for j in range(b)] for i in range(a)]
    )


def is_catalecticant(t: TripleTensor) -> bool:
    return t.c == t.a + t.b - 1 and t == catalecticant(t.a, t.b)


def random_tensor(a: int, b: int, c: int, seed: int = 0, coeff_bound: int = 5) -> TripleTensor:
    if coeff_bound < 0:
        raise ValueError("coeff_bound must be non-negative")
    rng = np.random.default_rng(seed)
    vals = rng.integers(-coeff_bound, coeff_bound + 1, size=(a, b, c))
    return TripleTensor(a, b, c, vals.tolist())
