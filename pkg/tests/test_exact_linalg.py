from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from syzkit.exact_linalg import (
    DimensionError,
    DualNumber,
    Subspace,
    det,
    dual_mul,
    inverse,
    identity,
    kernel_basis,
    left_kernel,
    matmul,
    rank,
    rank_exact,
    rref,
    subspace_equal,
)

small = st.integers(-6, 6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def leibniz_det(m):
    """Permutation-sum determinant, independent of elimination."""
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = -1 if inv % 2 else 1
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def test_rref_identity():
    reduced, r = rref([[1, 0], [0, 1]])
    assert reduced == identity(2) and r == 2


def test_rref_proportional_rows():
    reduced, r = rref([[1, 2], [2, 4]])
    assert reduced == [[1, 2], [0, 0]] and r == 1


def test_rref_full_rank_3x3():
    m = [[1, 1, 1], [1, 2, 3], [1, 3, 6]]
    assert leibniz_det(m) == 1
    assert rref(m)[1] == 3
    assert det(m) == 1


def test_kernel_of_zero_map_is_everything():
    assert kernel_basis([[0, 0, 0], [0, 0, 0]]) == Subspace.full(3)


def test_kernel_of_identity_is_zero():
    assert kernel_basis(identity(3)).dim == 0


def test_kernel_rnc3_tangent_system():
    k = kernel_basis([[1, -2, 1, 0], [0, 1, -2, 1]])
    assert k.dim == 2
    assert k.contains([1, 1, 1, 1])
    for v in k.basis:
        assert v[0] - 2 * v[1] + v[2] == 0 and v[1] - 2 * v[2] + v[3] == 0


def test_kernel_without_rows_needs_ncols():
    with pytest.raises(DimensionError):
        kernel_basis([])
    assert kernel_basis([], ncols=2).dim == 2


def test_subspace_equal_examples():
    assert subspace_equal(Subspace.span([[1, 0]], 2), Subspace.span([[2, 0]], 2))
    assert not subspace_equal(Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2))
    assert subspace_equal(Subspace.span([[1, 1], [0, 1]], 2), Subspace.span([[1, 0], [0, 1]], 2))


def test_subspace_equal_ambient_mismatch():
    with pytest.raises(DimensionError):
        subspace_equal(Subspace.zero(2), Subspace.zero(3))


def test_subspace_canonical_basis_invariants():
    s = Subspace.span([[0, 2, 4, 6], [0, 1, 2, 4], [0, 0, 0, 0]], 4)
    assert s.dim == 2
    pivots = s.pivots()
    assert pivots == sorted(pivots) and len(set(pivots)) == len(pivots)
    for row, p in zip(s.basis, pivots):
        assert row[p] == 1
        assert all(other[p] == 0 for other in s.basis if other is not row)


def test_labels_do_not_affect_equality():
    assert Subspace.span([[1, 0]], 2, labels=("x", "y")) == Subspace.span([[1, 0]], 2)


def test_dual_mul_examples():
    assert dual_mul(DualNumber(1, 1), DualNumber(1, -1)) == DualNumber(1, 0)
    assert dual_mul(DualNumber(0, 1), DualNumber(0, 1)) == DualNumber(0, 0)
    assert dual_mul(DualNumber(2, 3), DualNumber(5, 7)) == DualNumber(10, 29)


def test_inverse_and_left_kernel():
    m = [[2, 1], [1, 1]]
    assert matmul(inverse(m), m) == identity(2)
    lk = left_kernel([[1, 0], [0, 1], [1, 1]])
    assert lk.dim == 1 and lk.contains([1, 1, -1])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    assert rank_exact(m) + kernel_basis(m).dim == len(m[0])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_are_annihilated(m):
    for v in kernel_basis(m).basis:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rref_idempotent(m):
    once, _ = rref(m)
    assert rref(once)[0] == once


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_leibniz(m):
    assert det(m) == leibniz_det(m)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4), st.data())
def test_subspace_equal_is_equivalence(vecs, data):
    u = Subspace.span(vecs, 3)
    # same span from a random invertible recombination
    k = len(vecs)
    mix = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            mix[i][j] = data.draw(small)
    v = Subspace.span(matmul(mix, vecs), 3)
    w = Subspace.span(list(reversed(vecs)), 3)
    assert subspace_equal(u, u)
    assert subspace_equal(u, v) and subspace_equal(v, u)
    assert subspace_equal(v, w) and subspace_equal(u, w)


duals = st.builds(DualNumber, st.fractions(max_denominator=9), st.fractions(max_denominator=9))


@given(duals, duals, duals)
def test_dual_ring_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert u * v == v * u


def test_prime_mode_rank(monkeypatch):
    m = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert rank(m) == 2
    monkeypatch.setenv("SYZKIT_PRIME", "1")
    assert rank(m) == 2
    # 3 divides every 2x2 minor of this matrix
    monkeypatch.setenv("SYZKIT_PRIME", "3")
    assert rank([[1, 1], [1, 4]]) == 1
    assert rank_exact([[1, 1], [1, 4]]) == 2


def test_prime_mode_rejects_bad_values(monkeypatch):
    monkeypatch.setenv("SYZKIT_PRIME", "15")
    with pytest.raises(ValueError):
        rank([[1]])
