import numpy as np
import pytest
from scipy.spatial import cKDTree

from app.exceptions import CenterNotInterior, GeometryInvalid, OriginPolar
from app.models.geometry import Halfspace
from app.services.bodies.polytope_body import random_polytope
from app.services.geom.hull import convex_hull
from app.services.polar import (
    base_sandwich,
    cap_product_sweep,
    dual_cap_polar,
    mahler,
    mahler_band,
    mahler_cap_product,
    pi_map,
    polar_body,
    polar_hyperplane,
    polar_point,
)
from app.services.polar.cap_map import product_summary
from app.services.caps import make_cap


def _max_vertex_distance(P, Q):
    return max(cKDTree(Q).query(P)[0].max(), cKDTree(P).query(Q)[0].max())


# === Polára polytopu ===

def test_polar_of_square_is_cross_polytope(square):
    pair = polar_body(square)
    np.testing.assert_allclose(pair.center, np.zeros(2), atol=1e-12)
    assert pair.polar.n_vertices == 4
    assert pair.polar.mass[0] == pytest.approx(2.0)
    expected = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
    assert _max_vertex_distance(pair.polar.vertices, expected) < 1e-9


def test_polar_involution(random_body):
    """(K*)* má stejné vrcholy jako K posunuté do středu polarity."""
    pair = polar_body(random_body.polytope)
    back = polar_body(pair.polar, center=np.zeros(3)).polar
    assert _max_vertex_distance(back.vertices, random_body.polytope.vertices - pair.center) < 1e-9


def test_polar_swaps_vertices_and_facets(cube):
    polar = polar_body(cube).polar
    assert polar.n_vertices == cube.n_facets
    assert polar.n_facets == cube.n_vertices


def test_polar_center_must_be_interior(square):
    with pytest.raises(CenterNotInterior):
        polar_body(square, center=[1.0, 0.0])
    with pytest.raises(CenterNotInterior):
        polar_body(square, center=[3.0, 0.0])


def test_polar_point():
    h = polar_point([2.0, 0.0])
    np.testing.assert_allclose(h.normal, [1.0, 0.0])
    assert h.offset == pytest.approx(0.5)
    with pytest.raises(OriginPolar):
        polar_point(np.zeros(2))


def test_polar_hyperplane():
    point = polar_hyperplane(Halfspace(np.array([0.0, 1.0]), 0.5))
    np.testing.assert_allclose(point, [0.0, 2.0])
    with pytest.raises(OriginPolar):
        polar_hyperplane(Halfspace(np.array([1.0, 0.0]), 0.0))


# === Mahlerův objem ===

def test_mahler_of_square(square):
    assert mahler(square) == pytest.approx(8.0)


def test_mahler_of_cube(cube):
    assert mahler(cube) == pytest.approx(32.0 / 3.0)


def test_mahler_of_fine_polygon_approaches_disk_value():
    angles = 2.0 * np.pi * np.arange(256) / 256
    P = convex_hull(np.column_stack([np.cos(angles), np.sin(angles)]))
    assert mahler(P) == pytest.approx(np.pi**2, rel=0.02)


@pytest.mark.parametrize("d", [2, 3])
def test_mahler_of_random_polytopes_stays_in_band(d):
    lo, hi = mahler_band(d)
    for seed in range(10):
        value = mahler(random_polytope(12, d, seed=seed).polytope)
        assert lo <= value <= hi


# === Polára duální čepičky ===

def test_dual_cap_polar_of_segment():
    result = dual_cap_polar([[-1.0, 1.0], [1.0, 1.0]], [0.0, 2.0], [0.0, 1.0])
    assert result.alpha == pytest.approx(0.5)
    np.testing.assert_allclose(np.sort(result.G.vertices[:, 0]), [-0.5, 0.5])
    assert result.max_error < 1e-9


def test_dual_cap_polar_of_square():
    square = [[-1.0, -1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 1.0, 1.0], [-1.0, 1.0, 1.0]]
    result = dual_cap_polar(square, [0.0, 0.0, 4.0], [0.0, 0.0, 1.0])
    assert result.alpha == pytest.approx(0.75)
    assert result.G.n_vertices == 4
    assert result.max_error < 1e-9


@pytest.mark.parametrize("points, z, x", [
    ([[-1.0, 1.0], [1.0, 2.0]], [0.0, 3.0], [0.0, 1.5]),   # různé výšky
    ([[-1.0, 1.0], [1.0, 1.0]], [0.5, 2.0], [0.25, 1.0]),  # z mimo svislý paprsek
    ([[-1.0, 1.0], [1.0, 1.0]], [0.0, 2.0], [0.3, 1.0]),   # x mimo úsečku Oz
    ([[0.0, 1.0], [2.0, 1.0]], [0.0, 2.0], [0.0, 1.0]),    # x na hranici
])
def test_dual_cap_polar_rejects_bad_configuration(points, z, x):
    with pytest.raises(GeometryInvalid):
        dual_cap_polar(points, z, x)


# === Zobrazení π(C) a součiny čepiček ===

def test_pi_map_of_cube_facet_cap(cube_body):
    C = make_cap(cube_body, [1.0, 0.0, 0.0], 0.05)
    image = pi_map(cube_body, C, n_grid=128)
    # polára krychle je oktaedr; π(C) odřízne jeho vrchol e₁
    assert image.contains([1.0, 0.0, 0.0])
    assert image.direction[0] > 0.9
    assert 0.0 < image.volume < 4.0 / 3.0


def test_mahler_cap_product_of_disk_is_direction_independent(disk):
    values = [mahler_cap_product(disk, u, 0.05, n_grid=128).normalized_product
              for u in ([1.0, 0.0], [0.0, 1.0], [-1.0, 1.0], [0.3, -0.7])]
    assert max(values) / min(values) < 1.1
    # vol(C) ≈ (4√2/3)ε^{3/2}, vol(π(C)) ≈ (4√2/3)(ε/8)^{3/2}
    assert 0.1 < np.median(values) < 0.25


def test_macbeath_sweep_summary(disk, settings):
    records = cap_product_sweep(disk, 0.05, 8, settings, seed=1, kind="macbeath")
    assert len(records) == 8
    summary = product_summary(records)
    assert summary["directions"] == 8
    assert summary["min"] <= summary["median"] <= summary["max"]
    assert summary["spread"] < 1.5
    assert set(records[0].to_dict()) == {"direction", "cap_volume", "polar_cap_volume", "normalized_product"}


def test_sweep_rejects_unknown_kind(disk, settings):
    with pytest.raises(GeometryInvalid):
        cap_product_sweep(disk, 0.05, 4, settings, kind="santalo")


def test_base_sandwich_of_cube(cube_body):
    sandwich = base_sandwich(cube_body, [1.0, 0.0, 0.0], 0.05, n_grid=128)
    assert 0.0 < sandwich.s1 <= sandwich.s2
    assert sandwich.s2 / sandwich.s1 <= 100.0
    assert sandwich.c1 == pytest.approx(sandwich.s1 / 0.05)
    assert sandwich.to_dict()["c2"] == pytest.approx(sandwich.c2)
