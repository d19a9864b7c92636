"""Last syzygies of maximal-minor determinantal varieties.

A last syzygy is an element s of S_{a-b}B (the two exterior factors of the
last Eagon-Northcott term are one-dimensional), written in the
``sym_basis(b, a-b)`` coordinates. Its Koszul cocycle lives in
Lambda^{a-b}C (x) S_bC and is stored as a map from (a-b)-subsets of the
coordinates of C to degree-b polynomials:

    sigma(s) = sum over b-subsets beta of the rows of
               shuffle_sign(beta) * f_beta (x) e(rows not in beta, s)

with f_beta the maximal minor and e the exterior minor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Sequence

import numpy as np

from . import _config
from .exact_linalg import (
    DimensionError,
    Matrix,
    Subspace,
    det,
    inverse,
    kernel_basis,
    left_kernel,
    rank,
    subspace_equal,
    to_fraction,
    transpose,
)
from .multilin import (
    IndexSubset,
    MultiVector,
    complement,
    key_of,
    shuffle_sign,
    subset_of_key,
    subsets,
    sym_basis,
    sym_dim,
)
from .polyring import (
    GradedPiece,
    Poly,
    evaluate,
    graded_piece,
    ideal_dimension,
    jacobian_at,
    poly_to_vector,
    vector_to_poly,
)
from .tensor3 import (
    TripleTensor,
    check_1generic,
    exterior_minor_of,
    is_catalecticant,
    matrix_at,
    maximal_minor,
    maximal_minors,
    row_map,
)

POINT_BOUND = 10


class PreconditionError(Exception):
    """A hypothesis of the requested check does not hold for the input."""


# Betti tables


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers; ``entries[q][p]`` is beta_{pq}."""

    entries: tuple[tuple[int, ...], ...]

    def beta(self, p: int, q: int) -> int:
        return self.entries[q][p]

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) if v else "-" for v in row) for row in self.entries)

    def to_json(self) -> dict:
        return {"entries": [list(r) for r in self.entries], "rows": "q", "cols": "p"}


def en_betti(a: int, b: int) -> BettiTable:
    """Betti table of O_X for X cut out by the maximal minors of an a x b matrix of expected codimension."""
    if b < 1 or a < b:
        raise ValueError(f"need a >= b >= 1, got a={a}, b={b}")
    ncols = a - b + 2
    rows = [[0] * ncols for _ in range(b)]
    rows[0][0] = 1
    for i in range(a - b + 1):
        rows[b - 1][i + 1] += comb(a, b + i) * comb(b + i - 1, i)
    return BettiTable(tuple(tuple(r) for r in rows))


# cocycles


@dataclass(frozen=True)
class SyzygyCocycle:
    a: int
    b: int
    c: int
    components: Mapping[IndexSubset, Poly] = field(hash=False)

    def __post_init__(self):
        clean = {tuple(k): p for k, p in self.components.items() if p}
        object.__setattr__(self, "components", dict(sorted(clean.items())))

    @property
    def grade(self) -> int:
        return self.a - self.b

    def is_zero(self) -> bool:
        return not self.components

    def polys(self) -> list[Poly]:
        return list(self.components.values())

    def __add__(self, other: SyzygyCocycle) -> SyzygyCocycle:
        out = dict(self.components)
        for k, p in other.components.items():
            out[k] = out[k] + p if k in out else p
        return SyzygyCocycle(self.a, self.b, self.c, out)

    def scale(self, f) -> SyzygyCocycle:
        return SyzygyCocycle(self.a, self.b, self.c, {k: p.scale(f) for k, p in self.components.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SyzygyCocycle):
            return NotImplemented
        return (self.a, self.b, self.c) == (other.a, other.b, other.c) and self.components == other.components

    def to_json(self) -> dict:
        return {key_of(k): p.to_json() for k, p in self.components.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, list], a: int, b: int, c: int) -> SyzygyCocycle:
        return cls(a, b, c, {subset_of_key(k): Poly.from_json(v, c) for k, v in data.items()})


def last_syzygy_dim(a: int, b: int) -> int:
    return sym_dim(b, a - b)


def last_syzygy_basis(a: int, b: int) -> list[tuple[Fraction, ...]]:
    """Coordinate vectors of the monomial basis of S_{a-b}B."""
    n = last_syzygy_dim(a, b)
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def _check_syzygy(t: TripleTensor, s: Sequence) -> list[Fraction]:
    if t.a < t.b:
        raise ValueError(f"last syzygies need a >= b, got a={t.a}, b={t.b}")
    n = last_syzygy_dim(t.a, t.b)
    if len(s) != n:
        raise DimensionError(f"a last syzygy of a {t.a}x{t.b} matrix has {n} coordinates, got {len(s)}")
    return [to_fraction(v) for v in s]


def embed_last_syzygy(t: TripleTensor, s: Sequence) -> SyzygyCocycle:
    s = _check_syzygy(t, s)
    comps: dict[IndexSubset, Poly] = {}
    if any(s):
        for beta in subsets(t.a, t.b):
            f = maximal_minor(t, beta)
            if not f:
                continue
            g = exterior_minor_of(t, complement(beta, t.a), s)
            sign = shuffle_sign(beta, t.a)
            for S, coeff in g.coords.items():
                term = f.scale(sign * coeff)
                comps[S] = comps[S] + term if S in comps else term
    return SyzygyCocycle(t.a, t.b, t.c, comps)


def koszul_map(components: Mapping[IndexSubset, Poly], nvars: int) -> dict[IndexSubset, Poly]:
    """delta(w_S (x) f) = sum_k (-1)^k w_{S minus s_k} (x) c_{s_k} f  (k counted from 0)."""
    out: dict[IndexSubset, Poly] = {}
    for S, f in components.items():
        for k, idx in enumerate(S):
            rest = S[:k] + S[k + 1 :]
            term = Poly.var(idx, nvars) * f
            if k % 2:
                term = -term
            out[rest] = out[rest] + term if rest in out else term
    return {k: p for k, p in sorted(out.items()) if p}


def koszul_differential(coc: SyzygyCocycle) -> dict[IndexSubset, Poly]:
    if coc.grade < 1:
        raise ValueError("the Koszul differential needs a - b >= 1")
    return koszul_map(coc.components, coc.c)


def cocycle_vector(coc: SyzygyCocycle) -> list[Fraction]:
    """Coordinates in Lambda^{a-b}C (x) S_bC, subsets outer and monomials inner."""
    subs = subsets(coc.c, coc.grade)
    m = sym_dim(coc.c, coc.b)
    v = [Fraction(0)] * (len(subs) * m)
    pos = {S: i for i, S in enumerate(subs)}
    for S, f in coc.components.items():
        off = pos[S] * m
        v[off : off + m] = poly_to_vector(f, coc.b)
    return v


def embedded_span(t: TripleTensor) -> Subspace:
    """Span of sigma(s) over the monomial basis of S_{a-b}B."""
    vecs = [cocycle_vector(embed_last_syzygy(t, s)) for s in last_syzygy_basis(t.a, t.b)]
    return Subspace.span(vecs, comb(t.c, t.a - t.b) * sym_dim(t.c, t.b))


def embedded_rank(t: TripleTensor) -> int:
    vecs = [cocycle_vector(embed_last_syzygy(t, s)) for s in last_syzygy_basis(t.a, t.b)]
    return rank(vecs)


def last_syzygy_space_oracle(t: TripleTensor) -> Subspace:
    """Kernel of Lambda^{a-b}C (x) (I_X)_b -> Lambda^{a-b-1}C (x) S_{b+1}C, by brute force.

    Returned in the same coordinates as ``cocycle_vector``.
    """
    if t.a < t.b:
        raise ValueError("the oracle needs a >= b")
    minors = [f for f in maximal_minors(t) if f]
    if not minors:
        raise PreconditionError("all maximal minors vanish: the ideal has no generators")
    p = t.a - t.b
    piece = graded_piece(minors, t.b, t.c)
    ideal_basis = [vector_to_poly(row, t.c, t.b) for row in piece.subspace.basis]
    src_subs = subsets(t.c, p)
    m = sym_dim(t.c, t.b)
    ambient = len(src_subs) * m
    domain = []
    for si, S in enumerate(src_subs):
        for f in ideal_basis:
            vec = [Fraction(0)] * ambient
            vec[si * m : (si + 1) * m] = poly_to_vector(f, t.b)
            domain.append((S, f, vec))
    if p == 0:
        return Subspace.span([v for _, _, v in domain], ambient)
    tgt_subs = subsets(t.c, p - 1)
    m1 = sym_dim(t.c, t.b + 1)
    tpos = {S: i for i, S in enumerate(tgt_subs)}
    columns = []
    for S, f, _ in domain:
        col = [Fraction(0)] * (len(tgt_subs) * m1)
        for R, g in koszul_map({S: f}, t.c).items():
            off = tpos[R] * m1
            col[off : off + m1] = poly_to_vector(g, t.b + 1)
        columns.append(col)
    ker = kernel_basis(transpose(columns), ncols=len(domain))
    vecs = []
    for lam in ker.basis:
        v = [Fraction(0)] * ambient
        for coeff, (_, _, dv) in zip(lam, domain):
            if coeff:
                v = [x + coeff * y for x, y in zip(v, dv)]
        vecs.append(v)
    return Subspace.span(vecs, ambient)


def syzygy_ideal(coc: SyzygyCocycle) -> GradedPiece:
    return graded_piece(coc.polys(), coc.b, coc.c)


def ideal_piece(t: TripleTensor) -> GradedPiece:
    """(I_X)_b, the span of the maximal minors."""
    return graded_piece(maximal_minors(t), t.b, t.c)


def eval_syzygy(coc: SyzygyCocycle, x: Sequence) -> MultiVector:
    if len(x) != coc.c:
        raise DimensionError(f"point needs {coc.c} coordinates, got {len(x)}")
    return MultiVector(coc.grade, coc.c, {S: evaluate(f, x) for S, f in coc.components.items()})


# random data


def _rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng([seed, *stream])


def random_point(rng: np.random.Generator, n: int, bound: int = POINT_BOUND) -> tuple[Fraction, ...]:
    while True:
        v = rng.integers(-bound, bound + 1, size=n)
        if v.any():
            return tuple(Fraction(int(x)) for x in v)


def random_syzygy(rng: np.random.Generator, a: int, b: int, bound: int = POINT_BOUND) -> tuple[Fraction, ...]:
    return random_point(rng, last_syzygy_dim(a, b), bound)


def curve_point(c: int, t) -> tuple[Fraction, ...]:
    t = to_fraction(t)
    return tuple(t**k for k in range(c))


def parametrized_point(a: int, b: int, params: Sequence) -> tuple[Fraction, ...]:
    """Sum of b-1 points of the rational normal curve; lies on X for catalecticant(a, b)."""
    if len(params) != b - 1:
        raise ValueError(f"need {b - 1} parameters")
    c = a + b - 1
    x = [Fraction(0)] * c
    for t in params:
        x = [u + v for u, v in zip(x, curve_point(c, t))]
    return tuple(x)


def random_parameters(rng: np.random.Generator, count: int) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < count:
        t = Fraction(int(rng.integers(-POINT_BOUND, POINT_BOUND + 1)), int(rng.integers(1, 6)))
        if t not in out:
            out.append(t)
    return out


# theorem checks


def expected_affine_dim(t: TripleTensor) -> int:
    return t.c - (t.a - t.b + 1)


def has_expected_codim(t: TripleTensor) -> bool:
    minors = [f for f in maximal_minors(t) if f]
    if not minors:
        return False
    return ideal_dimension(minors, t.c) == expected_affine_dim(t)


def _require_1generic_and_codim(t: TripleTensor) -> None:
    if t.a < t.b:
        raise PreconditionError(f"need a >= b, got a={t.a}, b={t.b}")
    rep = check_1generic(t)
    if not rep.is_1generic:
        raise PreconditionError(f"input is not 1-generic (failing side: {rep.failing_side})")
    if not has_expected_codim(t):
        raise PreconditionError("the maximal-minor locus does not have expected codimension")


def on_X(t: TripleTensor, x: Sequence) -> bool:
    return not any(evaluate(f, x) for f in maximal_minors(t))


@dataclass
class SupportReport:
    trials: int
    off_X_nonzero: int = 0
    off_X_zero: int = 0
    on_X_zero: int = 0
    on_X_nonzero: int = 0
    on_X_samples: int = 0
    verdict: str = "pass"
    field: str = "QQ"

    def to_json(self) -> dict:
        return dict(self.__dict__)


def support_test(t: TripleTensor, trials: int, seed: int = 0, on_x_samples: int = 25) -> SupportReport:
    """Evaluate random last syzygies off and on X; pass iff Syz(s) and X agree pointwise."""
    _require_1generic_and_codim(t)
    rep = SupportReport(trials=trials, field=_config.field_name())
    for i in range(trials):
        rng = _rng(seed, 0, i)
        x = random_point(rng, t.c)
        s = random_syzygy(rng, t.a, t.b)
        zero = eval_syzygy(embed_last_syzygy(t, s), x).is_zero()
        if on_X(t, x):
            rep.on_X_zero += zero
            rep.on_X_nonzero += not zero
        else:
            rep.off_X_zero += zero
            rep.off_X_nonzero += not zero
    if trials and t.b >= 2 and is_catalecticant(t):
        for i in range(on_x_samples):
            rng = _rng(seed, 1, i)
            x = parametrized_point(t.a, t.b, random_parameters(rng, t.b - 1))
            s = random_syzygy(rng, t.a, t.b)
            rep.on_X_samples += 1
            if eval_syzygy(embed_last_syzygy(t, s), x).is_zero():
                rep.on_X_zero += 1
            else:
                rep.on_X_nonzero += 1
    rep.verdict = "pass" if rep.off_X_zero == 0 and rep.on_X_nonzero == 0 else "fail"
    return rep


def complementary_block(t: TripleTensor, x: Sequence) -> tuple[TripleTensor, Fraction]:
    """Rows of an adapted basis of A that vanish at a point x off X.

    Picks P = [K; Q] with K x M(x) = 0 and Q x M(x) = I_b, so that P M(x)
    has zero upper block. Returns the (a-b) x b tensor K.t and the scalar
    lam with eval_syzygy(sigma(s), x) = lam * e_{a-b}(K.t)(s) for every s.
    """
    mx = matrix_at(t, x)
    beta0 = next((beta for beta in subsets(t.a, t.b) if det([mx[i] for i in beta])), None)
    if beta0 is None:
        raise PreconditionError("x lies on X")
    inv = inverse([mx[i] for i in beta0])
    Q = [[sum((inv[r][k] * (1 if beta0[k] == i else 0) for k in range(t.b)), Fraction(0)) for i in range(t.a)]
         for r in range(t.b)]
    K = [list(v) for v in left_kernel(mx).basis]
    P = K + Q
    sign = -1 if (t.b * (t.a - t.b)) % 2 else 1
    return t.change_basis(rows=K), Fraction(sign) / det(P)


@dataclass
class TangentReport:
    x_smooth_on_X: bool
    dim_TX: int | None = None
    dim_TSyz: int | None = None
    equal: bool | None = None
    rank_at_x: int = 0
    jacobian_rank: int = 0

    def to_json(self) -> dict:
        return dict(self.__dict__)


def tangent_space(gens: Sequence[Poly], x: Sequence) -> Subspace:
    """Zariski tangent space of V(gens) at x, as a subspace of the affine cone's coordinates."""
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("no nonzero generators")
    if any(evaluate(g, x) for g in gens):
        raise ValueError("x is not on V(gens)")
    return kernel_basis(jacobian_at(gens, x), ncols=gens[0].nvars)


def tangent_test(t: TripleTensor, s: Sequence, x: Sequence) -> TangentReport:
    x = [to_fraction(v) for v in x]
    if len(x) != t.c:
        raise DimensionError(f"point needs {t.c} coordinates")
    if not any(x):
        raise ValueError("x = 0 is not a projective point")
    if not on_X(t, x):
        raise PreconditionError("x is not on X")
    if not check_1generic(t).is_1generic:
        raise PreconditionError("input is not 1-generic")
    minors = [f for f in maximal_minors(t) if f]
    rk = rank(matrix_at(t, x))
    jr = rank(jacobian_at(minors, x))
    smooth = rk == t.b - 1 and jr == t.a - t.b + 1
    rep = TangentReport(smooth, rank_at_x=rk, jacobian_rank=jr)
    if smooth:
        tx = tangent_space(minors, x)
        coc = embed_last_syzygy(t, s)
        if coc.is_zero():
            raise ValueError("s = 0 has no syzygy scheme")
        tsyz = tangent_space(coc.polys(), x)
        rep.dim_TX, rep.dim_TSyz, rep.equal = tx.dim, tsyz.dim, subspace_equal(tx, tsyz)
    return rep


def syzygy_ideal_test(t: TripleTensor, s: Sequence) -> dict:
    coc = embed_last_syzygy(t, s)
    ix = ideal_piece(t)
    isyz = syzygy_ideal(coc)
    return {
        "dim_I_s": isyz.dim,
        "dim_I_X": ix.dim,
        "contained": isyz.subspace.issubspace(ix.subspace),
        "equal": subspace_equal(isyz.subspace, ix.subspace),
    }


# converse construction


def power_of_linear_form(v: Sequence, d: int) -> tuple[Fraction, ...]:
    """Coordinates of (sum_j v_j b_j)^d in sym_basis(len(v), d)."""
    v = [to_fraction(x) for x in v]
    out = []
    for m in sym_basis(len(v), d):
        coeff = Fraction(factorial(d))
        for vj, k in zip(v, m):
            coeff *= vj**k / factorial(k)
        out.append(coeff)
    return tuple(out)


def _complete_basis(v: Sequence[Fraction]) -> Matrix:
    piv = next(i for i, x in enumerate(v) if x)
    n = len(v)
    rows = [list(v)]
    rows += [[Fraction(int(i == j)) for j in range(n)] for i in range(n) if i != piv]
    return rows


def _integral(v: Sequence[Fraction]) -> list[Fraction]:
    den = 1
    for x in v:
        den = den * x.denominator // np.gcd(den, x.denominator)
    return [x * den for x in v]


@dataclass
class CounterexampleResult:
    found: bool
    s: tuple[Fraction, ...] | None
    s_adapted: tuple[Fraction, ...]
    row_basis: Matrix
    col_basis: Matrix
    x: tuple[Fraction, ...] | None
    eval_zero: bool | None
    x_off_X: bool | None
    attempts: int
    witness: tuple[Fraction, ...]

    def to_json(self) -> dict:
        fmt = lambda v: None if v is None else [str(x) for x in v]
        return {
            "found": self.found,
            "status": "certified" if self.found else "budget exhausted",
            "s": fmt(self.s),
            "s_adapted": fmt(self.s_adapted),
            "basis_change": {
                "rows": [fmt(r) for r in self.row_basis],
                "cols": [fmt(r) for r in self.col_basis],
            },
            "witness_row": fmt(self.witness),
            "x": fmt(self.x),
            "certificate": {"eval_zero": self.eval_zero, "x_off_X": self.x_off_X},
            "attempts": self.attempts,
        }


def certify_counterexample(t: TripleTensor, s: Sequence, x: Sequence) -> dict:
    """Independent re-check: sigma(s) vanishes at x while some maximal minor does not."""
    return {
        "eval_zero": eval_syzygy(embed_last_syzygy(t, s), x).is_zero(),
        "x_off_X": not on_X(t, x),
    }


def counterexample(t: TripleTensor, budget: int = 1000, seed: int = 0) -> CounterexampleResult:
    """Build a last syzygy whose syzygy variety contains a point off X.

    Needs a generalized row alpha of rank <= b - 1. In a basis with alpha
    first and a kernel vector v of gamma_alpha first, the (1,1) entry of the
    matrix vanishes and s = v^{a-b}. Its cocycle vanishes on the linear space
    cut out by the forms in row alpha, so points are drawn from there.
    """
    if t.a < t.b:
        raise PreconditionError(f"need a >= b, got a={t.a}, b={t.b}")
    rep = check_1generic(t)
    if rep.is_1generic:
        raise PreconditionError("input is 1-generic")
    if rep.failing_side != "rows":
        raise PreconditionError("all generalized rows have full rank; only the column condition fails")
    if rep.witness is None:
        raise PreconditionError("no deficient generalized row was found by the witness search")
    if not has_expected_codim(t):
        raise PreconditionError("the maximal-minor locus does not have expected codimension")
    alpha = rep.witness
    ga = row_map(t, alpha)
    v = _integral(kernel_basis(ga, ncols=t.b).basis[0])
    P = _complete_basis(list(alpha))
    Q = _complete_basis(v)
    adapted = t.change_basis(rows=P, cols=Q)
    assert not any(adapted.entry(0, 0))
    n = last_syzygy_dim(t.a, t.b)
    s_adapted = tuple(Fraction(int(i == 0)) for i in range(n))
    s_orig = power_of_linear_form(v, t.a - t.b)
    coc = embed_last_syzygy(adapted, s_adapted)
    lin = kernel_basis(transpose(ga), ncols=t.c).basis
    lin = [_integral(w) for w in lin]
    rng = _rng(seed, 2)
    for attempt in range(1, budget + 1):
        if not lin:
            break
        coef = rng.integers(-POINT_BOUND, POINT_BOUND + 1, size=len(lin))
        x = tuple(sum((int(cf) * w[k] for cf, w in zip(coef, lin)), Fraction(0)) for k in range(t.c))
        if not any(x) or on_X(adapted, x) or not eval_syzygy(coc, x).is_zero():
            continue
        cert = certify_counterexample(t, s_orig, x)
        if cert["eval_zero"] and cert["x_off_X"]:
            return CounterexampleResult(True, s_orig, s_adapted, P, Q, x, True, True, attempt, alpha)
    return CounterexampleResult(False, s_orig, s_adapted, P, Q, None, None, None, budget, alpha)
