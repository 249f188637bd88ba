import numpy as np
import pytest

from app.exceptions import BodySpecError, DepthTooLarge, DimensionError, OriginQuery, OutsideBody
from app.models.geometry import AffineMap
from app.services.bodies.analytic import Ball, Box, Ellipsoid, LpBall
from app.services.bodies.canonical import support_range, to_canonical
from app.services.bodies.depth import delta, point_at_depth, ray_distance
from app.services.bodies.john import john_ellipsoid
from app.services.bodies.polytope_body import PolytopeBody, random_polytope
from app.services.bodies.proxy import polytopal_proxy, support_deficit
from app.services.bodies.spec_loader import body_from_spec, load_bodies
from app.services.geom.sampling import sphere_directions


# === Orákula ===

def test_ball_support_and_depth(ball3):
    value, point = ball3.support([0.0, 0.0, 2.0])
    assert value == pytest.approx(1.0)
    np.testing.assert_allclose(point, [0.0, 0.0, 1.0])
    assert delta(ball3, np.zeros(3)) == pytest.approx(1.0)
    assert delta(ball3, [0.9, 0.0, 0.0]) == pytest.approx(0.1)


def test_box_depth_near_facet():
    box = Box([1.0, 1.0, 1.0])
    eps = 0.01
    assert delta(box, [1.0 - eps, 0.0, 0.0]) == pytest.approx(eps)


def test_delta_outside_raises(ball3):
    with pytest.raises(OutsideBody):
        delta(ball3, [2.0, 0.0, 0.0])


def test_generic_depth_matches_analytic(random_body):
    """Obecný výpočet (mřížka + Nelder–Mead) souhlasí s min. rezervou stěn polytopu."""
    x = np.array([0.1, -0.05, 0.2])
    generic = super(PolytopeBody, random_body).depth(x)
    assert generic == pytest.approx(random_body.depth(x), abs=1e-4)


def test_ellipsoid_support_and_boundary_ray():
    E = Ellipsoid.from_axes(np.zeros(2), [4.0, 1.0])
    assert E.support([1.0, 0.0])[0] == pytest.approx(4.0)
    assert E.support([0.0, 1.0])[0] == pytest.approx(1.0)
    np.testing.assert_allclose(E.boundary_ray(np.zeros(2), [1.0, 0.0]), [4.0, 0.0])
    assert E.depth([0.0, 0.5]) == pytest.approx(0.5)


def test_lp_ball_support_uses_dual_norm():
    K = LpBall(1.0, 3)
    u = np.array([0.3, -0.8, 0.1])
    assert K.support(u)[0] == pytest.approx(0.8)
    assert K.exact_polytope().n_vertices == 6

    K4 = LpBall(4.0, 2)
    q = 4.0 / 3.0
    u = np.array([1.0, 1.0]) / np.sqrt(2.0)
    assert K4.support(u)[0] == pytest.approx(np.linalg.norm(u, ord=q))
    # opěrný bod leží na hranici
    assert K4.norm(K4.support(u)[1])[0] == pytest.approx(1.0)


def test_gauge_of_box():
    box = Box([2.0, 1.0])
    assert box.gauge([1.0, 0.25]) == pytest.approx(0.5)
    assert box.boundary_ray(np.zeros(2), [1.0, 1.0]) == pytest.approx(np.array([1.0, 1.0]))


def test_transformed_body_support():
    T = AffineMap(np.diag([2.0, 1.0]), np.array([1.0, 0.0]))
    K = LpBall(3.0, 2).transformed(T)
    assert K.support([1.0, 0.0])[0] == pytest.approx(3.0)
    assert K.contains([2.5, 0.0])
    assert not K.contains([3.5, 0.0])


def test_unsupported_dimension():
    with pytest.raises(DimensionError):
        Ball(1.0, dim=6)
    with pytest.raises(DimensionError):
        body_from_spec({"type": "ball", "dim": 9})


def test_random_polytope_is_deterministic():
    first = random_polytope(20, 3, seed=4)
    second = random_polytope(20, 3, seed=4)
    np.testing.assert_array_equal(first.polytope.vertices, second.polytope.vertices)


# === Hloubka ===

def test_ray_distance_bounds_depth(random_body):
    x = np.array([0.2, 0.1, -0.1])
    assert ray_distance(random_body, x) >= delta(random_body, x) - 1e-9


def test_ray_distance_at_origin(ball3):
    with pytest.raises(OriginQuery):
        ray_distance(ball3, np.zeros(3))


def test_point_at_depth(ball3):
    x = point_at_depth(ball3, [0.0, 1.0, 0.0], 0.25)
    np.testing.assert_allclose(x, [0.0, 0.75, 0.0], atol=1e-8)


def test_point_at_depth_too_deep(ball3):
    with pytest.raises(DepthTooLarge):
        point_at_depth(ball3, [1.0, 0.0, 0.0], 1.5)


# === Johnův elipsoid a kanonizace ===

def test_john_ellipsoid_of_cube(cube_body):
    E = john_ellipsoid(cube_body)
    np.testing.assert_allclose(E.center, np.zeros(3), atol=1e-2)
    np.testing.assert_allclose(np.sort(E.axes), np.ones(3), atol=1e-2)


def test_john_ellipsoid_of_ellipsoid_is_itself():
    E = Ellipsoid.from_axes(np.array([1.0, 2.0]), [4.0, 1.0])
    assert john_ellipsoid(E) is E


def test_john_ellipsoid_of_smooth_body_is_inscribed():
    K = LpBall(4.0, 2, radius=1.0)
    E = john_ellipsoid(K, use_analytic=False)
    dirs = sphere_directions(720, 2)
    assert np.all(E.support_many(dirs) <= K.support_many(dirs) + 1e-4)


def test_canonical_form_of_ball_is_identity(ball3):
    canon = to_canonical(ball3)
    np.testing.assert_allclose(canon.map.linear, np.eye(3), atol=1e-12)
    assert canon.gamma == pytest.approx(1.0)


def test_canonical_form_of_elongated_ellipsoid():
    E = Ellipsoid.from_axes(np.array([3.0, -1.0]), [4.0, 1.0])
    canon = to_canonical(E)
    assert canon.gamma == pytest.approx(1.0, abs=1e-6)
    lo, hi = support_range(canon.body, 500)
    assert lo == pytest.approx(1.0, abs=1e-6)
    assert hi == pytest.approx(1.0, abs=1e-6)


def test_canonical_sandwich_for_thin_box():
    """Sendvič √γ·B ⊆ T(K) ⊆ B/√γ platí i pro plochý kvádr."""
    canon = to_canonical(Box([1.0, 0.01]))
    h = canon.body.support_many(sphere_directions(500, 2, seed=2))
    root = np.sqrt(canon.gamma)
    assert h.min() >= root - 1e-6
    assert h.max() <= 1.0 / root + 1e-6
    assert canon.gamma >= 0.5 - 1e-6


def test_canonical_inverse_roundtrip(random_body):
    canon = to_canonical(random_body)
    x = np.array([0.1, 0.2, 0.3])
    np.testing.assert_allclose(canon.inverse(canon.map(x)), x, atol=1e-10)


# === Polytopový zástupce ===

def test_polytopal_proxy_is_inner_and_accurate(disk):
    P, error = polytopal_proxy(disk, 0.05)
    assert error <= 0.01 * 0.05
    assert np.all(np.linalg.norm(P.vertices, axis=1) <= 1.0 + 1e-12)
    assert support_deficit(disk, P) == pytest.approx(error)


def test_polytopal_proxy_of_polytope_is_exact(cube_body):
    P, error = polytopal_proxy(cube_body, 0.01)
    assert P is cube_body.polytope
    assert error == 0.0


# === Načítání z JSON ===

def test_body_from_spec_variants():
    assert isinstance(body_from_spec({"type": "ball", "dim": 3}), Ball)
    box = body_from_spec({"type": "box", "dim": 2, "half_widths": [1, 0.01]})
    np.testing.assert_allclose(box.half_widths, [1.0, 0.01])
    lp = body_from_spec({"type": "lp", "dim": 3, "p": "inf"})
    assert np.isinf(lp.p)
    poly = body_from_spec({"type": "polytope", "dim": 3, "random": {"n_vertices": 12, "seed": 2}})
    assert poly.polytope.n_vertices == 12
    moved = body_from_spec({"type": "transformed", "translation": [1, 0], "body": {"type": "ball", "dim": 2}})
    assert moved.support([1.0, 0.0])[0] == pytest.approx(2.0)


@pytest.mark.parametrize("spec", [
    {"type": "torus", "dim": 3},
    {"type": "ball"},
    {"type": "box", "dim": 2, "half_widths": [1, 2, 3]},
    {"type": "ellipsoid", "dim": 2, "axes": [1, -1]},
    {"type": "lp", "dim": 2, "p": 0.5},
    {"type": "polytope", "dim": 3, "random": {"n_vertices": 3}},
    "ball",
])
def test_body_from_spec_rejects_invalid(spec):
    with pytest.raises(BodySpecError):
        body_from_spec(spec)


def test_load_bodies_from_file_and_string(tmp_path):
    path = tmp_path / "bodies.json"
    path.write_text('[{"type": "ball", "dim": 2, "id": "a"}, {"type": "box", "dim": 3, "id": "b"}]')
    assert [K.body_id for K in load_bodies(str(path))] == ["a", "b"]
    assert load_bodies('{"type": "ball", "dim": 2}')[0].dim == 2
    with pytest.raises(BodySpecError):
        load_bodies("{not json")
