"""Exact linear algebra: determinants, rank, solving, nullspaces, LDL."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tamewall import linalg
from tamewall.forms import big_simplex_dual_vectors, tf_form, value_row, wall_interior_form
from tamewall.linalg import RationalMatrix

from test_kernels import cofactor_det, small_matrix


def test_det_identity():
    assert linalg.det(RationalMatrix.identity(3)) == 1


def test_det_big_simplex_columns():
    cols = [
        [1, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 1],
        [0, 0, 0, 1, 0, 1],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, -3],
    ]
    assert linalg.det(RationalMatrix(cols)) == -3


def test_det_equal_columns_is_zero():
    m = RationalMatrix([[1, 1, 2], [3, 3, 5], [7, 7, 11]])
    assert linalg.det(m) == 0


def test_det_rational_entries():
    m = RationalMatrix([[F(1, 2), F(1, 3)], [F(1, 5), F(1, 7)]])
    assert linalg.det(m) == F(1, 14) - F(1, 15)


def test_det_requires_square():
    with pytest.raises(ValueError):
        linalg.det(RationalMatrix.zeros(2, 3))


@settings(max_examples=150, deadline=None)
@given(small_matrix)
def test_det_agrees_with_cofactor_oracle(rows):
    assert linalg.det(RationalMatrix(rows)) == cofactor_det(rows)


def test_rank_zero_matrix():
    assert linalg.rank(RationalMatrix.zeros(3, 5)) == 0


def test_rank_identity():
    assert linalg.rank(RationalMatrix.identity(7)) == 7


def test_rank_of_dual_image_matrix():
    rows = [value_row(u) for u in big_simplex_dual_vectors(6)]
    m = RationalMatrix(rows)
    assert (m.nrows, m.ncols) == (20, 21)
    assert linalg.rank(m) == 20
    assert linalg.rank(m.transpose()) == 20


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-6, max_value=6), min_size=c, max_size=c),
            min_size=1,
            max_size=5,
        )
    )
)
def test_rank_nullity(rows):
    m = RationalMatrix(rows)
    assert linalg.rank(m) + len(linalg.nullspace(m)) == m.ncols


def test_solve_identity():
    sol = linalg.solve(RationalMatrix.identity(3), [3, F(1, 2), -5])
    assert sol.kind == "unique"
    assert sol.particular == (3, F(1, 2), -5)


def test_solve_affine():
    sol = linalg.solve(RationalMatrix([[1, 1]]), [1])
    assert sol.kind == "affine"
    assert len(sol.nullspace) == 1


def test_solve_inconsistent():
    sol = linalg.solve(RationalMatrix([[0]]), [1])
    assert sol.kind == "inconsistent"


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.tuples(
            st.lists(
                st.lists(st.integers(min_value=-5, max_value=5), min_size=c, max_size=c),
                min_size=1,
                max_size=4,
            ),
            st.lists(st.integers(min_value=-5, max_value=5), min_size=c, max_size=c),
        )
    )
)
def test_solve_witness_substitutes_exactly(data):
    rows, x = data
    m = RationalMatrix(rows)
    b = m.matvec(x)
    sol = linalg.solve(m, b)
    assert sol.kind in ("unique", "affine")
    assert m.matvec(sol.particular) == b
    for basis_vec in sol.nullspace:
        assert all(v == 0 for v in m.matvec(basis_vec))


def test_nullspace_identity_trivial():
    assert linalg.nullspace(RationalMatrix.identity(4)) == ()


def test_nullspace_row():
    basis = linalg.nullspace(RationalMatrix([[1, 1]]))
    assert len(basis) == 1
    x, y = basis[0]
    assert x + y == 0 and (x, y) != (0, 0)


def test_nullspace_of_dual_images_is_one_dimensional():
    rows = [value_row(u) for u in big_simplex_dual_vectors(6)]
    basis = linalg.nullspace(RationalMatrix(rows))
    assert len(basis) == 1


def test_inverse_roundtrip():
    m = RationalMatrix([[2, 1], [1, 2]])
    assert m.matmul(linalg.inverse(m)) == RationalMatrix.identity(2)
    with pytest.raises(ValueError):
        linalg.inverse(RationalMatrix([[1, 1], [1, 1]]))


def test_pd_rejects_indefinite():
    assert not linalg.is_positive_definite(RationalMatrix([[1, 0], [0, -1]]))


def test_pd_tf6_and_wall_form():
    assert linalg.is_positive_definite(tf_form(6).gram)
    assert linalg.is_positive_definite(wall_interior_form(5).gram)


def test_pd_requires_symmetric():
    with pytest.raises(ValueError):
        linalg.is_positive_definite(RationalMatrix([[1, 2], [0, 1]]))


def _leading_minors_positive(matrix):
    """Independent Sylvester oracle via determinants of leading blocks."""
    n = matrix.nrows
    for k in range(1, n + 1):
        block = RationalMatrix([[matrix[i, j] for j in range(k)] for i in range(k)])
        if linalg.det(block) <= 0:
            return False
    return True


@pytest.mark.parametrize(
    "matrix",
    [
        RationalMatrix.identity(3),
        RationalMatrix([[1, 0], [0, -1]]),
        tf_form(5).gram,
        tf_form(6).gram,
        wall_interior_form(5).gram,
        RationalMatrix([[0, 0], [0, 0]]),
        RationalMatrix([[2, 3], [3, 2]]),
    ],
)
def test_pd_agrees_with_leading_minor_oracle(matrix):
    assert linalg.is_positive_definite(matrix) == _leading_minors_positive(matrix)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(min_value=-3, max_value=3), min_size=n, max_size=n),
            min_size=n,
            max_size=n,
        )
    )
)
def test_ldl_reconstructs(rows):
    n = len(rows)
    # Build a PD matrix as B^T B + I.
    b = RationalMatrix(rows)
    gram = b.transpose().matmul(b) + RationalMatrix.identity(n)
    L, D = linalg.ldl(gram)
    recon = [
        [sum(L[i][k] * D[k] * L[j][k] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]
    assert RationalMatrix(recon) == gram
    assert all(d > 0 for d in D)
