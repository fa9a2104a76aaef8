"""Circumquadrics, cell certificates, cell location, circuits, perturbations."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tamewall.delaunay import (
    InhomogeneousQuadratic,
    NonGenericPointError,
    circumscribed_quadric,
    delaunay_cell_containing,
    find_level_vector,
    is_delaunay_cell,
    perturbation_check,
    radon_triangulations,
    relative_volume,
)
from tamewall.forms import QuadraticForm, standard_gram, tf_form, wall_interior_form
from tamewall.series import r_n_vertices, s_n_vertices, tw_normal
from tamewall.linalg import RationalMatrix

UNIT_SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_circumscribed_unit_square():
    quad = circumscribed_quadric(QuadraticForm.identity(2), UNIT_SQUARE)
    assert quad.status == "ok"
    assert quad.center == (F(1, 2), F(1, 2))
    assert quad.r2 == F(1, 2)


def test_circumscribed_r6_wall_form_consistent():
    assert circumscribed_quadric(wall_interior_form(6), r_n_vertices(6)).status == "ok"


def test_circumscribed_r6_off_wall_inconsistent():
    assert circumscribed_quadric(tf_form(6), r_n_vertices(6)).status == "inconsistent"


def test_is_delaunay_cell_unit_square():
    cert = is_delaunay_cell(QuadraticForm.identity(2), UNIT_SQUARE)
    assert cert.verdict
    assert cert.r2 == F(1, 2)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_repartition_complex_is_cell_of_wall_form(n):
    cert = is_delaunay_cell(wall_interior_form(n), r_n_vertices(n))
    assert cert.verdict
    assert len(cert.vertices) == n + 2


def test_is_delaunay_cell_detects_proper_subface():
    # Three corners of the unit square lie on a bigger empty circle's
    # boundary only together with the fourth: subset is flagged.
    cert = is_delaunay_cell(QuadraticForm.identity(2), [(0, 0), (1, 0), (0, 1)])
    assert not cert.verdict
    assert cert.missing_boundary == (1, 1)
    assert cert.proper_subface


def test_is_delaunay_cell_detects_interior_point():
    cert = is_delaunay_cell(QuadraticForm.identity(2), [(0, 0), (2, 0), (0, 2), (2, 2)])
    assert not cert.verdict
    inside = cert.offending_interior
    assert inside is not None
    # the witness really lies strictly inside the circumdisk around (1,1)
    assert (inside[0] - 1) ** 2 + (inside[1] - 1) ** 2 < 2


def test_is_delaunay_cell_rejects_degenerate():
    with pytest.raises(ValueError):
        is_delaunay_cell(QuadraticForm.identity(2), [(0, 0), (1, 0)])


def test_certificate_json_roundtrips():
    cert = is_delaunay_cell(QuadraticForm.identity(2), UNIT_SQUARE)
    data = cert.to_json()
    assert data["verdict"] is True
    assert data["r2"] == "1/2"
    assert data["center"] == ["1/2", "1/2"]


def test_relative_volume_unit_simplex():
    assert relative_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 1


@pytest.mark.parametrize("n", range(5, 13))
def test_relative_volume_of_series(n):
    assert relative_volume(s_n_vertices(n)) == n - 3


def test_relative_volume_other_large_cell_is_one():
    n = 6
    cell = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n - 1)]
    cell.append(tuple([0] * (n - 1) + [1]))
    cell.append(tuple([1] * (n - 1) + [-(n - 3)]))
    assert relative_volume(cell) == 1


def test_relative_volume_wrong_cardinality():
    with pytest.raises(ValueError):
        relative_volume([(0, 0), (1, 0)])


def test_cell_containing_unit_square():
    cell = delaunay_cell_containing(QuadraticForm.identity(2), (F(2, 5), F(1, 3)))
    assert cell == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_cell_containing_r5_barycenter():
    wall5 = wall_interior_form(5)
    r5 = r_n_vertices(5)
    bary = tuple(sum(F(v[i]) for v in r5) / len(r5) for i in range(5))
    assert delaunay_cell_containing(wall5, bary) == r5


def test_cell_containing_non_generic():
    # (1/2, 0) lies on the shared edge of two unit-square cells
    with pytest.raises(NonGenericPointError) as err:
        delaunay_cell_containing(QuadraticForm.identity(2), (F(1, 2), F(0)))
    assert set(err.value.face_vertices) == {(0, 0), (1, 0)}


@settings(max_examples=100, deadline=None)
@given(
    st.fractions(min_value=0, max_value=1, max_denominator=23),
    st.fractions(min_value=0, max_value=1, max_denominator=29),
)
def test_cell_roundtrip_identity(x, y):
    f = QuadraticForm.identity(2)
    try:
        cell = delaunay_cell_containing(f, (x, y))
    except NonGenericPointError:
        return
    assert is_delaunay_cell(f, cell).verdict


@settings(max_examples=100, deadline=None)
@given(
    st.fractions(min_value=F(-1, 2), max_value=F(1, 2), max_denominator=17),
    st.fractions(min_value=F(-1, 2), max_value=F(1, 2), max_denominator=19),
)
def test_cell_roundtrip_a2(x, y):
    f = standard_gram("A", 2)
    try:
        cell = delaunay_cell_containing(f, (x, y))
    except NonGenericPointError:
        return
    assert is_delaunay_cell(f, cell).verdict


def test_radon_r6():
    rad = radon_triangulations(r_n_vertices(6))
    vols = sorted(rad.volumes_plus), sorted(rad.volumes_minus)
    assert sorted(map(tuple, vols)) == [(1, 1, 1, 1, 1), (1, 1, 3)]


@pytest.mark.parametrize("n", range(5, 11))
def test_radon_volume_totals_match(n):
    rad = radon_triangulations(r_n_vertices(n))
    both = [sorted(rad.volumes_plus), sorted(rad.volumes_minus)]
    assert sorted(map(len, both)) == [3, n - 1]
    small = min(both, key=len)
    assert sorted(small) == [1, 1, n - 3]
    big = max(both, key=len)
    assert all(v == 1 for v in big)
    assert sum(small) == sum(big) == n - 1


def test_radon_planar_square():
    rad = radon_triangulations(UNIT_SQUARE)
    assert sorted(rad.volumes_plus) == [1, 1]
    assert sorted(rad.volumes_minus) == [1, 1]


def test_radon_rejects_non_circuit():
    # (2,0) is affinely redundant: dependence coefficient vanishes nowhere
    # only for genuine circuits.
    with pytest.raises(ValueError):
        radon_triangulations([(0, 0), (1, 0), (2, 0), (0, 1)])


def test_radon_invariant_under_unimodular_images():
    u = RationalMatrix([[1, 2, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 3],
                        [0, 1, 0, 1, 0], [0, 0, 0, 0, 1]])
    pts = [tuple(int(x) for x in u.matvec(p)) for p in r_n_vertices(5)]
    rad = radon_triangulations(pts)
    assert sorted(sorted(v) for v in (rad.volumes_plus, rad.volumes_minus)) == [
        [1, 1, 1, 1],
        [1, 1, 2],
    ]


def test_level_vector_unit_square():
    assert find_level_vector((0, 0), UNIT_SQUARE) == (1, 1)


def test_level_vector_segment():
    assert find_level_vector((0,), [(0,), (1,)]) == (1,)


def test_level_vector_missing_is_none():
    # No integer p can put both 3e_1 and e_1 in {1,2}: products are 3k, k.
    assert find_level_vector((0,), [(0,), (1,), (3,)]) is None


def test_level_vector_requires_membership():
    with pytest.raises(ValueError):
        find_level_vector((5, 5), UNIT_SQUARE)


def _square_phi():
    f = QuadraticForm.identity(2)
    quad = circumscribed_quadric(f, UNIT_SQUARE)
    return f, InhomogeneousQuadratic.from_circumsphere(f, quad.center, quad.r2)


def test_perturbation_term_values_on_cell():
    # Each term ((x-v).p - 1)((x-v).p - 2) vanishes on every other cell
    # vertex and equals 2 at v itself; nonnegative on sampled lattice points.
    _, phi = _square_phi()
    for v in UNIT_SQUARE:
        p = find_level_vector(v, UNIT_SQUARE)
        term = lambda x: (
            (sum((xi - vi) * pi for xi, vi, pi in zip(x, v, p)) - 1)
            * (sum((xi - vi) * pi for xi, vi, pi in zip(x, v, p)) - 2)
        )
        for u in UNIT_SQUARE:
            assert term(u) == (2 if u == v else 0)
        for x in [(-3, 4), (5, 5), (-2, -2), (7, 0)]:
            assert term(x) >= 0


def test_perturbation_unit_square_triangle():
    f, phi = _square_phi()
    rep = perturbation_check(f, phi, UNIT_SQUARE, [(0, 0), (1, 1), (1, 0)], F(1, 4))
    assert rep.verdict
    assert rep.boundary == ((0, 0), (1, 0), (1, 1))
    assert rep.interior == ()


def test_perturbation_full_cell_is_identity():
    f, phi = _square_phi()
    rep = perturbation_check(f, phi, UNIT_SQUARE, UNIT_SQUARE, F(1, 10))
    assert rep.verdict
    assert rep.boundary == tuple(sorted(UNIT_SQUARE))


def test_perturbation_validates_inputs():
    f, phi = _square_phi()
    with pytest.raises(ValueError):
        perturbation_check(f, phi, UNIT_SQUARE, [], F(1, 4))
    with pytest.raises(ValueError):
        perturbation_check(f, phi, UNIT_SQUARE, [(9, 9)], F(1, 4))
    with pytest.raises(ValueError):
        perturbation_check(f, phi, UNIT_SQUARE, [(0, 0)], F(-1, 4))


def test_perturbed_wall_form_has_big_simplex_cell():
    n = 6
    wall_form = wall_interior_form(n)
    wall = tw_normal(n)
    g = QuadraticForm(wall_form.gram + wall.normal.scaled(F(1, 32)))
    assert g.is_positive_definite
    cert = is_delaunay_cell(g, s_n_vertices(n))
    assert cert.verdict
    assert len(cert.vertices) == n + 1
