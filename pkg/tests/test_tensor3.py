from fractions import Fraction
from itertools import combinations, permutations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzkit.exact_linalg import DimensionError, rank
from syzkit.multilin import MultiVector, sym_basis, wedge
from syzkit.polyring import Poly
from syzkit.tensor3 import (
    TripleTensor,
    all_minors,
    catalecticant,
    check_1generic,
    e_n_matrix,
    exterior_minor,
    gamma_A,
    gamma_B,
    gamma_C,
    green_injectivity,
    green_report,
    maximal_minor,
    random_tensor,
    row_rank,
)


def c(i, n=4):
    return Poly.var(i, n)


def alpha(i, n=2):
    return Poly.var(i, n)



def test_gamma_C_hankel_2x3(cat23):
    assert gamma_C(cat23) == [[c(0), c(1), c(2)], [c(1), c(2), c(3)]]


def test_gamma_C_transpose(rnc3, cat23):
    assert gamma_C(rnc3) == [[c(0), c(1)], [c(1), c(2)], [c(2), c(3)]]
    assert cat23.transpose() == rnc3


def test_gamma_C_zero():
    t = TripleTensor(2, 2, 3, [[[0] * 3] * 2] * 2)
    assert all(not e for row in gamma_C(t) for e in row)


def test_gamma_A_is_transposed_row_layout(cat23):
    a1, a2, z = alpha(0), alpha(1), Poly.zero(2)
    layout = [[a1, a2, z, z], [z, a1, a2, z], [z, z, a1, a2]]
    g = gamma_A(cat23)
    assert len(g) == 4 and len(g[0]) == 3
    assert [list(col) for col in zip(*g)] == layout


def test_gamma_A_one_row():
    t = TripleTensor(1, 2, 2, [[[2, 0], [0, 3]]])
    a1 = Poly.var(0, 1)
    assert gamma_A(t) == [[a1.scale(2), Poly.zero(1)], [Poly.zero(1), a1.scale(3)]]


def test_row_rank_examples(cat23):
    assert row_rank(cat23, [1, 0]) == 3
    assert row_rank(cat23, [3, -7]) == 3
    t = TripleTensor(2, 2, 2, [[[0, 0], [0, 0]], [[1, 0], [0, 1]]])
    assert row_rank(t, [1, 0]) == 0
    with pytest.raises(ValueError):
        row_rank(cat23, [0, 0])
    with pytest.raises(DimensionError):
        row_rank(cat23, [1, 0, 0])


def test_maximal_minor_examples(rnc3):
    c1, c2, c3, c4 = (c(i) for i in range(4))
    assert maximal_minor(rnc3, (0, 1)) == c1 * c3 - c2 * c2
    assert maximal_minor(rnc3, (0, 2)) == c1 * c4 - c2 * c3
    assert maximal_minor(rnc3, (1, 2)) == c2 * c4 - c3 * c3
    with pytest.raises(ValueError):
        maximal_minor(rnc3, (0,))


def test_maximal_minor_repeated_rows():
    t = TripleTensor.from_nested([[[1, 0], [0, 1]], [[1, 0], [0, 1]], [[0, 1], [1, 1]]])
    assert not maximal_minor(t, (0, 1))


def cofactor(m, n):
    if not m:
        return Poly.constant(1, n)
    out = Poly.zero(n)
    for j in range(len(m)):
        term = m[0][j] * cofactor([r[:j] + r[j + 1 :] for r in m[1:]], n)
        out = out + term if j % 2 == 0 else out - term
    return out


@pytest.mark.parametrize("n,seed", [(3, 0), (3, 1), (3, 2), (4, 0), (4, 1)])
def test_maximal_minor_matches_cofactor(n, seed):
    t = random_tensor(n, n, 4, seed=seed, coeff_bound=3)
    assert maximal_minor(t, tuple(range(n))) == cofactor(gamma_C(t), 4)


def vec(t, i, j):
    return MultiVector.from_vector(t.coeffs[i][j])


def test_exterior_minor_degree_one(rnc3):
    for i in range(3):
        for j in range(2):
            m = tuple(int(k == j) for k in range(2))
            assert exterior_minor(rnc3, (i,), m) == vec(rnc3, i, j)


def test_exterior_minor_repeated_column(cat23):
    out = exterior_minor(cat23, (0, 1), (2, 0, 0))
    assert out == wedge(vec(cat23, 0, 0), vec(cat23, 1, 0)).scale(2)
    assert out == MultiVector.basis((0, 1), 4).scale(2)


def test_exterior_minor_row_swap(cat23):
    for m in sym_basis(3, 2):
        assert exterior_minor(cat23, (1, 0), m) == exterior_minor(cat23, (0, 1), m).scale(-1)


def brute_exterior_minor(t, rows, m):
    """Direct n!-term sum over permutations of the column word."""
    word = [j for j, k in enumerate(m) for _ in range(k)]
    out = MultiVector(len(rows), t.c)
    for perm in permutations(word):
        acc = MultiVector.one(t.c)
        for r, j in zip(rows, perm):
            acc = wedge(acc, vec(t, r, j))
        out = out + acc
    return out


tensors = st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(2, 4), st.integers(0, 10**6)).map(
    lambda s: random_tensor(s[0], s[1], s[2], seed=s[3], coeff_bound=3)
)


@settings(max_examples=40, deadline=None)
@given(tensors, st.data())
def test_exterior_minor_symmetries(t, data):
    n = data.draw(st.integers(1, min(t.a, t.c)))
    rows = data.draw(st.permutations(range(t.a)))[:n]
    m = data.draw(st.sampled_from(sym_basis(t.b, n)))
    got = exterior_minor(t, rows, m)
    assert got == brute_exterior_minor(t, rows, m)
    srt = tuple(sorted(rows))
    sign = 1
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i] > rows[j]:
                sign = -sign
    assert got == exterior_minor(t, srt, m).scale(sign)


def test_e1_is_flattening(rnc3):
    mat = e_n_matrix(rnc3, 1)
    flat = [[rnc3.coeffs[i][j][k] for i in range(3) for j in range(2)] for k in range(4)]
    assert mat == flat


def test_e2_of_hankel_2x3(cat23):
    mat = e_n_matrix(cat23, 2)
    assert len(mat) == comb(4, 2) and len(mat[0]) == 1 * comb(4, 2)
    assert rank(mat) == 6


@settings(max_examples=25, deadline=None)
@given(tensors, st.data())
def test_e_n_columns_match_exterior_minor(t, data):
    n = data.draw(st.integers(1, min(t.a, t.c)))
    mat = e_n_matrix(t, n)
    targets = list(combinations(range(t.c), n))
    cols = [(rs, m) for rs in combinations(range(t.a), n) for m in sym_basis(t.b, n)]
    for col, (rs, m) in enumerate(cols):
        mv = exterior_minor(t, rs, m)
        assert [row[col] for row in mat] == [mv.coefficient(s) for s in targets]


def test_e_n_zero_tensor():
    t = TripleTensor(2, 2, 3, [[[0] * 3] * 2] * 2)
    assert all(v == 0 for row in e_n_matrix(t, 2) for v in row)


def test_green_examples(cat23):
    assert green_injectivity(cat23)
    zero_row = TripleTensor.from_nested([[[1, 0, 0], [0, 1, 0]], [[0, 0, 0], [0, 0, 0]]])
    assert not green_injectivity(zero_row)
    assert green_injectivity(TripleTensor(1, 2, 2, [[[1, 0], [0, 1]]]))
    rep = green_report(catalecticant(3, 2))
    assert rep == {"injective": True, "rank": 4, "expected": 4, "reason": "full column rank"}


def test_green_a_exceeds_c():
    t = random_tensor(3, 1, 2, seed=0)
    rep = green_report(t)
    assert rep["injective"] is False and rep["rank"] is None and "a=3" in rep["reason"]


def test_check_1generic_hankel_2x3(cat23):
    rep = check_1generic(cat23)
    assert rep.is_1generic and rep.failing_side is None and rep.witness is None


def test_check_1generic_zero_corner(zero_corner):
    rep = check_1generic(zero_corner)
    assert not rep.is_1generic
    assert rep.failing_side == "rows"
    assert rep.witness is not None
    assert row_rank(zero_corner, rep.witness) < zero_corner.b
    assert tuple(rep.witness) == (1, 0, 0)


def test_check_1generic_c_too_small():
    rep = check_1generic(random_tensor(3, 3, 2, seed=4))
    assert not rep.is_1generic


def sylvester_quadratics(p, q):
    """Resultant of two binary quadratics given as coefficient triples (x^2, xy, y^2)."""
    m = [[p[0], p[1], p[2], 0], [0, p[0], p[1], p[2]], [q[0], q[1], q[2], 0], [0, q[0], q[1], q[2]]]
    total = 0
    for perm in permutations(range(4)):
        sgn = -1 if sum(perm[i] > perm[j] for i in range(4) for j in range(i + 1, 4)) % 2 else 1
        prod = sgn
        for i in range(4):
            prod *= m[i][perm[i]]
        total += prod
    return total


def binary_coeffs(f):
    return [f.terms.get(e, 0) for e in ((2, 0), (1, 1), (0, 2))]


def test_generic_2x2_c4_against_resultants():
    t = random_tensor(2, 2, 4, seed=1, coeff_bound=5)
    rep = check_1generic(t)
    assert rep.is_1generic
    assert check_1generic(t) == rep
    for mat in (gamma_A(t), gamma_B(t)):
        minors = [binary_coeffs(f) for f in all_minors(mat, 2, 2)]
        assert any(sylvester_quadratics(p, q) for p, q in combinations(minors, 2))


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 5) for b in range(1, 5)])
def test_catalecticants_are_1generic(a, b):
    t = catalecticant(a, b)
    assert t.c == a + b - 1
    assert check_1generic(t).is_1generic


def test_certificate_spot_check():
    t = catalecticant(4, 3)
    rng = np.random.default_rng(7)
    for _ in range(50):
        al = rng.integers(-20, 21, size=t.a).tolist()
        if any(al):
            assert row_rank(t, al) == t.b


def test_catalecticant_examples(cat23):
    assert cat23.coeffs[0][0] == (1, 0, 0, 0)
    assert cat23.coeffs[1][2] == (0, 0, 0, 1)
    assert catalecticant(1, 1).coeffs == ((((1,),),))
    assert catalecticant(3, 2) == cat23.transpose()


def test_random_tensor_determinism():
    assert random_tensor(2, 3, 4, seed=9) == random_tensor(2, 3, 4, seed=9)
    assert random_tensor(2, 3, 4, seed=9) != random_tensor(2, 3, 4, seed=10)
    assert random_tensor(2, 2, 3, seed=1, coeff_bound=0).is_zero()
    t = random_tensor(3, 3, 3, seed=2, coeff_bound=2)
    assert all(-2 <= v <= 2 for row in t.coeffs for e in row for v in e)
    r1 = check_1generic(random_tensor(2, 2, 4, seed=1, coeff_bound=5))
    r2 = check_1generic(random_tensor(2, 2, 4, seed=1, coeff_bound=5))
    assert r1 == r2


def test_tensor_validation():
    with pytest.raises(ValueError):
        TripleTensor(0, 1, 1, [])
    with pytest.raises(ValueError):
        TripleTensor.from_nested([[[1, 2], [3]]])
    assert TripleTensor.from_nested([[[Fraction(1, 2)]]]).coeffs[0][0][0] == Fraction(1, 2)
