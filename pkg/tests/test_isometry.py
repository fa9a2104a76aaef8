"""Unimodular equivalence: witnesses, definitive negatives, invariances."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tamewall.forms import QuadraticForm, dn_neighbor_form, scale, standard_gram, tf_form
from tamewall.isometry import are_equivalent, are_similar, fingerprint
from tamewall.linalg import RationalMatrix


def test_fingerprint_identity_two():
    fp = fingerprint(QuadraticForm.identity(2))
    assert fp.determinant == 1
    assert fp.minimum == 1
    assert fp.pair_count == 2
    assert fp.level_histogram[0] == (1, 2)


def test_fingerprint_tf5():
    fp = fingerprint(tf_form(5))
    assert fp.minimum == 1
    assert fp.pair_count == 15


def test_fingerprint_scaling():
    f = standard_gram("A", 2)
    fp = fingerprint(f)
    fp2 = fingerprint(scale(f, 2))
    assert fp2.minimum == 2 * fp.minimum
    assert fp2.pair_count == fp.pair_count


def test_self_equivalence_gives_identity():
    f = tf_form(5)
    assert are_equivalent(f, f) == RationalMatrix.identity(5)


def _check_witness(a, b, u):
    assert u.to_int_rows() is not None
    from tamewall.linalg import det

    assert det(u) in (1, -1)
    assert u.transpose().matmul(a.gram).matmul(u) == b.gram


@pytest.mark.parametrize("n", [5, 6, 7])
def test_dn_neighbor_is_scaled_dn(n):
    a = dn_neighbor_form(n)
    b = scale(standard_gram("D", n), F(1, 2))
    u = are_equivalent(a, b)
    assert u is not None
    _check_witness(a, b, u)


def test_tf6_similar_to_e6_dual():
    sim = are_similar(tf_form(6), standard_gram("E6*"))
    assert sim is not None
    c, u = sim
    assert c == F(3, 4)
    _check_witness(tf_form(6), scale(standard_gram("E6*"), c), u)


def test_tf5_not_equivalent_to_scaled_d5():
    assert are_equivalent(tf_form(5), scale(standard_gram("D", 5), F(1, 2))) is None
    fa = fingerprint(tf_form(5))
    fb = fingerprint(scale(standard_gram("D", 5), F(1, 2)))
    assert (fa.pair_count, fb.pair_count) == (15, 20)


def test_tf5_not_similar_to_a5():
    assert are_similar(tf_form(5), standard_gram("A", 5)) is None


def test_trivial_similarity_scale():
    f = standard_gram("A", 3)
    sim = are_similar(f, scale(f, 5))
    assert sim is not None
    assert sim[0] == F(1, 5)


def test_outcome_is_symmetric():
    pairs = [
        (dn_neighbor_form(5), scale(standard_gram("D", 5), F(1, 2))),
        (tf_form(5), scale(standard_gram("D", 5), F(1, 2))),
        (standard_gram("A", 3), standard_gram("A", 3)),
    ]
    for a, b in pairs:
        assert (are_equivalent(a, b) is None) == (are_equivalent(b, a) is None)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        are_equivalent(QuadraticForm.identity(2), QuadraticForm.identity(3))


def test_non_pd_rejected():
    bad = QuadraticForm(RationalMatrix([[1, 0], [0, -1]]))
    with pytest.raises(ValueError):
        are_equivalent(bad, QuadraticForm.identity(2))


def _unimodular_from_shears(n, shears):
    u = [[F(1) if i == j else F(0) for j in range(n)] for i in range(n)]
    for (i, j, c) in shears:
        ii, jj = i % n, j % n
        if ii == jj:
            continue
        for k in range(n):
            u[ii][k] += c * u[jj][k]
    return RationalMatrix(u)


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from(["A2", "A3", "D4"]),
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=3),
            st.integers(min_value=0, max_value=3),
            st.integers(min_value=-2, max_value=2),
        ),
        min_size=0,
        max_size=4,
    ),
)
def test_equivalence_invariant_under_unimodular_precomposition(name, shears):
    f = {"A2": standard_gram("A", 2), "A3": standard_gram("A", 3), "D4": standard_gram("D", 4)}[name]
    u = _unimodular_from_shears(f.n, shears)
    conjugated = QuadraticForm(u.transpose().matmul(f.gram).matmul(u))
    w = are_equivalent(f, conjugated)
    assert w is not None
    _check_witness(f, conjugated, w)
