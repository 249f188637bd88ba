import math

import numpy as np
import pytest

from app.exceptions import DegenerateInput, DimensionError, GeometryInvalid, Unbounded
from app.models.geometry import AffineMap, Halfspace
from app.services.geom.hull import convex_hull, halfspace_intersection, polytope_from_inequalities
from app.services.geom.lattice import face_lattice
from app.services.geom.measure import centroid, volume
from app.services.geom.predicates import affine_rank, is_full_dimensional, orientation
from app.services.geom.sampling import sphere_directions, vertical_frame
from app.services.geom.separation import disjoint, interiors_disjoint
from app.services.geom.transform import apply_map, scale_about


def _cube_inequalities(d):
    A = np.vstack([np.eye(d), -np.eye(d)])
    return A, np.ones(2 * d)


# === Konvexní obal ===

def test_hull_of_cube_merges_coplanar_facets(cube):
    assert cube.n_vertices == 8
    assert cube.n_facets == 6
    assert all(len(facet) == 4 for facet in cube.incidence)


def test_hull_ignores_interior_points():
    rng = np.random.default_rng(0)
    inner = rng.uniform(-0.5, 0.5, (50, 3))
    corners = np.array([[x, y, z] for x in (-1.0, 1.0) for y in (-1.0, 1.0) for z in (-1.0, 1.0)])
    P = convex_hull(np.vstack([inner, corners]))
    assert P.n_vertices == 8
    assert P.contains_many(inner).all()


def test_hull_of_simplex():
    P = convex_hull(np.vstack([np.zeros(3), np.eye(3)]))
    assert P.n_vertices == 4
    assert P.n_facets == 4
    assert volume(P) == pytest.approx(1.0 / 6.0)


def test_hull_rejects_coplanar_points():
    """Čtyři body v rovině z = 0 nejsou plnodimenzionální v R^3."""
    points = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]])
    with pytest.raises(DegenerateInput):
        convex_hull(points)


def test_hull_rejects_unsupported_dimension():
    with pytest.raises(DimensionError):
        convex_hull(np.eye(7))


def test_hull_of_interval():
    P = convex_hull(np.array([[0.5], [-2.0], [1.0]]))
    np.testing.assert_allclose(np.sort(P.vertices[:, 0]), [-2.0, 1.0])
    assert P.mass[0] == pytest.approx(3.0)


# === Průnik poloprostorů ===

def test_intersection_of_cube_inequalities():
    A, b = _cube_inequalities(3)
    P = polytope_from_inequalities(A, b)
    assert P.n_vertices == 8
    assert volume(P) == pytest.approx(8.0)


def test_intersection_drops_redundant_halfspaces():
    A, b = _cube_inequalities(2)
    A = np.vstack([A, [[1.0, 1.0]]])
    b = np.concatenate([b, [5.0]])
    P = polytope_from_inequalities(A, b)
    assert P.n_facets == 4


def test_intersection_from_halfspace_objects():
    halfspaces = [Halfspace(np.array([1.0, 0.0]), 1.0), Halfspace(np.array([-1.0, 0.0]), 1.0),
                  Halfspace(np.array([0.0, 1.0]), 2.0), Halfspace(np.array([0.0, -1.0]), 2.0)]
    P = halfspace_intersection(halfspaces, interior=np.zeros(2))
    assert volume(P) == pytest.approx(8.0)


def test_intersection_unbounded():
    A = np.array([[1.0, 0.0], [0.0, 1.0]])
    with pytest.raises(Unbounded):
        polytope_from_inequalities(A, np.ones(2))


def test_intersection_empty():
    A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    b = np.array([-1.0, -1.0, 1.0, 1.0])
    with pytest.raises(GeometryInvalid):
        polytope_from_inequalities(A, b)


def test_intersection_rejects_boundary_interior_point():
    A, b = _cube_inequalities(2)
    with pytest.raises(GeometryInvalid):
        polytope_from_inequalities(A, b, interior=np.array([1.0, 0.0]))


def test_intersection_in_one_dimension():
    P = polytope_from_inequalities(np.array([[1.0], [-1.0], [2.0]]), np.array([3.0, 1.0, 10.0]))
    np.testing.assert_allclose(np.sort(P.vertices[:, 0]), [-1.0, 3.0])


# === Svaz stěn ===

def test_face_lattice_of_cube(cube):
    profile = face_lattice(cube)
    assert profile.f_vector == (8, 12, 6)
    assert profile.total == 26
    assert profile.euler_characteristic() == 2


def test_face_lattice_of_square(square):
    assert square.profile.f_vector == (4, 4)


def test_face_lattice_of_cross_polytope():
    P = convex_hull(np.vstack([np.eye(3), -np.eye(3)]))
    assert P.profile.f_vector == (6, 12, 8)


def test_face_lattice_of_four_cube():
    corners = np.array(np.meshgrid(*[[-1.0, 1.0]] * 4)).reshape(4, -1).T
    profile = convex_hull(corners).profile
    assert profile.f_vector == (16, 32, 24, 8)
    # Euler–Poincaré v R^4: f0 − f1 + f2 − f3 = 0
    assert profile.euler_characteristic() == 0


# === Objem a těžiště ===

def test_volume_and_centroid_of_cube(cube):
    assert volume(cube) == pytest.approx(8.0)
    np.testing.assert_allclose(centroid(cube), np.zeros(3), atol=1e-12)


def test_centroid_of_triangle():
    P = convex_hull(np.array([[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]]))
    assert volume(P) == pytest.approx(4.5)
    np.testing.assert_allclose(centroid(P), [1.0, 1.0])


def test_volume_of_standard_simplex_in_five_dimensions():
    P = convex_hull(np.vstack([np.zeros(5), np.eye(5)]))
    assert volume(P) == pytest.approx(1.0 / math.factorial(5))


# === Predikáty ===

def test_orientation_signs():
    segment = np.array([[0.0, 0.0], [1.0, 0.0]])
    assert orientation(segment, [0.5, 1.0]) == -orientation(segment, [0.5, -1.0])
    assert orientation(segment, [2.0, 0.0]) == 0


def test_affine_rank_and_full_dimensionality():
    assert affine_rank(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])) == 1
    assert not is_full_dimensional(np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]))
    assert is_full_dimensional(np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))


# === Transformace ===

def test_apply_map_scales_volume_by_determinant(cube):
    T = AffineMap(np.diag([2.0, 1.0, 0.5]), np.array([1.0, -1.0, 0.0]))
    image = apply_map(T, cube)
    assert volume(image) == pytest.approx(8.0 * abs(T.det))
    assert image.contains(T(np.zeros(3)))
    # každý obraz vrcholu leží na svých stěnách
    for facet, vertices in zip(image.facets, image.incidence):
        np.testing.assert_allclose(facet.slack(image.vertices[sorted(vertices)]), 0.0, atol=1e-9)


def test_scale_about_center(square):
    scaled = scale_about(square, 0.5, np.array([1.0, 1.0]))
    assert volume(scaled) == pytest.approx(1.0)
    assert scaled.contains([0.5, 0.5])
    assert not scaled.contains([-0.5, -0.5])


def test_affine_map_inverse_roundtrip():
    T = AffineMap(np.array([[2.0, 1.0], [0.0, 1.0]]), np.array([3.0, -1.0]))
    x = np.array([0.3, -0.7])
    np.testing.assert_allclose(T.inverse()(T(x)), x)


def test_singular_affine_map():
    with pytest.raises(DegenerateInput):
        AffineMap(np.array([[1.0, 2.0], [2.0, 4.0]]), np.zeros(2))


def test_halfspace_requires_unit_normal():
    with pytest.raises(GeometryInvalid):
        Halfspace(np.array([2.0, 0.0]), 1.0)
    h = Halfspace.from_vector([2.0, 0.0], 1.0)
    assert h.offset == pytest.approx(0.5)


# === Disjunktnost ===

def test_disjoint_squares_have_separating_halfspace(square):
    shifted = apply_map(AffineMap(np.eye(2), np.array([3.0, 0.0])), square)
    separated, h = disjoint(square, shifted)
    assert separated
    assert h.contains(square.vertices, tol=1e-7)


def test_touching_squares_intersect_but_interiors_disjoint(square):
    touching = apply_map(AffineMap(np.eye(2), np.array([2.0, 0.0])), square)
    assert disjoint(square, touching) == (False, None)
    assert interiors_disjoint(square, touching)


def test_overlapping_squares(square):
    overlapping = apply_map(AffineMap(np.eye(2), np.array([1.0, 0.5])), square)
    assert not interiors_disjoint(square, overlapping)


# === Vzorkování ===

@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_sphere_directions_are_unit_and_deterministic(d):
    first = sphere_directions(100, d, seed=3)
    np.testing.assert_allclose(np.linalg.norm(first, axis=1), 1.0)
    np.testing.assert_array_equal(first, sphere_directions(100, d, seed=3))


def test_vertical_frame_maps_direction_to_last_axis():
    u = np.array([1.0, 2.0, -2.0]) / 3.0
    R = vertical_frame(u)
    np.testing.assert_allclose(R @ u, [0.0, 0.0, 1.0], atol=1e-12)
    np.testing.assert_allclose(R @ R.T, np.eye(3), atol=1e-12)
    assert np.linalg.det(R) == pytest.approx(1.0)
