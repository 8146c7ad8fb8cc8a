from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from strandlab.exactla import (AmbientMismatch, Echelon, NotContained, RationalMatrix, Subspace,
                               contains, image, intersect, kernel, quotient_map, rank,
                               subspace_sum)


def naive_rank(rows):
    """Plain Fraction Gaussian elimination, used as the oracle."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rk < len(m) and col < ncols:
        piv = next((i for i in range(rk, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                f = m[i][col] / m[rk][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rk])]
        rk += 1
        col += 1
    return rk


matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_examples():
    assert rank(RationalMatrix.identity(2)) == 2
    assert kernel(RationalMatrix.identity(2)).dim == 0
    assert kernel(RationalMatrix(3, 3)).dim == 3
    A = RationalMatrix.from_dense([[1, 2], [2, 4]])
    assert rank(A) == 1
    K = kernel(A)
    assert K.dim == 1 and K.contains({0: 2, 1: -1})


@given(matrices)
def test_rank_against_oracle(rows):
    A = RationalMatrix.from_dense(rows)
    assert rank(A) == naive_rank(rows)
    assert rank(A) == rank(A.transpose())
    K = kernel(A)
    assert K.dim + rank(A) == A.cols
    for v in K.basis_vectors():
        assert not A.apply(v)


@given(matrices, matrices)
def test_product_image_inside(a, b):
    A = RationalMatrix.from_dense(a)
    B = RationalMatrix.from_dense([row[:1] * A.cols for row in b][:A.cols] or [[0]])
    if B.rows != A.cols:
        return
    assert image(A).contains(image(A @ B))


def test_subspace_operations():
    e1, e2 = {0: 1}, {1: 1}
    U, W = Subspace(2, [e1]), Subspace(2, [e2])
    assert intersect(U, W).dim == 0 and subspace_sum(U, W).dim == 2
    assert intersect(U, U) == U
    U = Subspace(2, [{0: 1, 1: 1}])
    assert intersect(U, Subspace(2, [e1, e2])) == U
    with pytest.raises(AmbientMismatch):
        intersect(U, Subspace(3))
    assert contains(Subspace(2, [e1, e2]), {0: 5, 1: -2})


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), max_size=4),
       st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), max_size=4))
def test_dimension_formula(us, ws):
    to_vec = lambda r: {i: x for i, x in enumerate(r) if x}
    U = Subspace(4, [to_vec(r) for r in us])
    W = Subspace(4, [to_vec(r) for r in ws])
    assert U.dim + W.dim == intersect(U, W).dim + subspace_sum(U, W).dim


def test_canonical_form():
    a = Subspace(3, [{0: 1, 1: 2}, {1: 1, 2: 1}])
    b = Subspace(3, [{0: 2, 1: 6, 2: 2}, {0: -1, 1: -1, 2: 1}])
    assert a == b and hash(a) == hash(b)


def test_quotient_map():
    full = Subspace.full(3)
    M, d = quotient_map(full, Subspace(3, [{0: 1}]))
    assert d == 2 and rank(M) == 2
    M, d = quotient_map(full, full)
    assert d == 0
    U = Subspace.full(16)
    M, d = quotient_map(U, Subspace(16, [{k: 1 for k in range(16)}]))
    assert d == 15
    with pytest.raises(NotContained):
        quotient_map(Subspace(2, [{0: 1}]), Subspace(2, [{1: 1}]))


def test_quotient_map_kills_sub():
    U = Subspace(4, [{0: 1, 1: 1}, {2: 1}, {3: 1, 0: 1}])
    W = Subspace(4, [{0: 2, 1: 2, 2: 4}])
    M, d = quotient_map(U, W)
    assert d == 2
    # coordinates of W's generator in U's basis go to zero
    ub = U.basis_vectors()
    coords = {j: c for j, c in enumerate(
        [Fraction(x) for x in _solve_coords(ub, {0: 2, 1: 2, 2: 4})])}
    assert not M.apply({j: c for j, c in coords.items() if c})


def _solve_coords(basis, v):
    # basis is in reduced echelon form: read coefficients at the pivots
    out = []
    for b in basis:
        p = min(b)
        out.append(Fraction(v.get(p, 0), b[p]))
    return out


def test_echelon_reduce_and_coords():
    e = Echelon([{0: 2, 1: 4}, {1: 3, 2: 3}])
    assert e.contains({0: 1, 1: 3, 2: 1})
    assert not e.contains({2: 1})
    c = e.coords({0: 1, 1: 3, 2: 1})
    assert set(c) == set(e.rows)


def test_json_roundtrip():
    A = RationalMatrix(2, 2, {(0, 1): Fraction(-3, 4), (1, 0): 5})
    B = RationalMatrix.from_json(A.to_json())
    assert A == B
    assert '"-3/4"' in A.to_json()
