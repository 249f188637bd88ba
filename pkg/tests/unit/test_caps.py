from dataclasses import replace

import numpy as np
import pytest

from app.exceptions import BoundaryPoint, EpsilonTooLarge, GeometryInvalid, OutsideBody, WidthTooLarge
from app.services.caps import (
    boundary_packing,
    build_cap,
    cap_through,
    expand_cap,
    in_macbeath,
    macbeath,
    make_cap,
    minimal_cap,
    shrunken_macbeath,
    volume_histogram,
)
from app.services.caps.minimal import centroid_drift
from app.services.caps.properties import (
    check_angle_property,
    check_cap_containment_beta,
    check_cap_expansion_volume,
    check_cap_in_macbeath,
    check_cap_meets_shrunken,
    check_depth_stability,
    check_expanded_cap_in_macbeath,
    check_macbeath_in_double_cap,
    check_overlap_containment,
    check_width_depth,
    check_width_volume,
    class_capacity,
    containment_factor,
    fit_packing_constant,
    random_caps,
    total_packing_bound,
)
from app.services.geom.separation import interiors_disjoint


# === Čepičky ===

def test_cube_slab_cap(cube_body):
    C = make_cap(cube_body, [1.0, 0.0, 0.0], 0.1)
    assert C.volume == pytest.approx(0.4)
    assert C.base_volume == pytest.approx(4.0)
    np.testing.assert_allclose(C.base_centroid, [0.9, 0.0, 0.0], atol=1e-12)
    assert C.contains([0.95, 0.5, -0.5])
    assert not C.contains([0.85, 0.0, 0.0])


def test_disk_cap_chord(disk):
    C = make_cap(disk, [0.0, 1.0], 0.1)
    chord = np.ptp(C.base_coords[:, 0])
    assert chord == pytest.approx(2.0 * np.sqrt(0.19), rel=1e-3)


def test_cap_width_out_of_range(cube_body):
    with pytest.raises(WidthTooLarge):
        make_cap(cube_body, [1.0, 0.0, 0.0], 2.5)
    with pytest.raises(WidthTooLarge):
        make_cap(cube_body, [1.0, 0.0, 0.0], 0.0)


def test_expand_cap(cube_body):
    C = make_cap(cube_body, [1.0, 0.0, 0.0], 0.1)
    assert expand_cap(C, 1.0) is C
    assert expand_cap(C, 2.0).volume == pytest.approx(0.8)
    # expanze se ořízne na celé těleso
    full = expand_cap(C, 100.0)
    assert full.is_full
    assert full.volume == pytest.approx(8.0)


def test_zero_width_cap_is_degenerate(cube_body):
    C = build_cap(cube_body, [0.0, 0.0, 1.0], 0.0)
    assert C.volume == 0.0
    assert C.polytope is None
    assert C.base_vertices.shape[0] == 4


def test_cap_through_point(cube_body):
    C = cap_through(cube_body, [0.0, 1.0, 0.0], [0.2, 0.7, 0.0])
    assert C.width == pytest.approx(0.3)


# === Macbethovy oblasti ===

def test_macbeath_region_of_cube(cube_body):
    eps = 0.05
    M = macbeath(cube_body, [1.0 - eps, 0.0, 0.0])
    assert M.volume == pytest.approx(2.0 * eps * 4.0)
    np.testing.assert_allclose(M.region.vertices[:, 0].min(), 1.0 - 2.0 * eps)
    shrunken = shrunken_macbeath(cube_body, [1.0 - eps, 0.0, 0.0])
    assert shrunken.volume == pytest.approx(M.volume * 0.2**3)
    assert shrunken.unit_volume == pytest.approx(M.volume)


def test_macbeath_region_of_disk_is_symmetric(disk):
    x = np.array([0.0, 0.9])
    M = macbeath(disk, x, 0.5)
    reflected = 2.0 * x - M.region.vertices
    assert M.region.contains_many(reflected, tol=1e-9).all()


def test_macbeath_rejects_bad_input(cube_body):
    with pytest.raises(GeometryInvalid):
        macbeath(cube_body, np.zeros(3), 1.5)
    with pytest.raises(OutsideBody):
        macbeath(cube_body, [2.0, 0.0, 0.0])
    with pytest.raises(BoundaryPoint):
        macbeath(cube_body, [1.0, 0.0, 0.0])


def test_in_macbeath(cube_body):
    x = [0.9, 0.0, 0.0]
    assert in_macbeath(cube_body, x, [0.95, 0.0, 0.0])
    assert not in_macbeath(cube_body, x, [0.96, 0.0, 0.0], lam=0.5)


# === Minimální čepička ===

def test_minimal_cap_of_disk(disk):
    eps = 0.05
    C = minimal_cap(disk, [1.0 - eps, 0.0], n_grid=256)
    assert C.direction[0] == pytest.approx(1.0, abs=1e-3)
    assert C.width == pytest.approx(eps, rel=0.02)
    assert centroid_drift(C, [1.0 - eps, 0.0]) <= 0.02


def test_minimal_cap_of_cube_near_facet(cube_body):
    """Blízko středu stěny má minimální čepička objem desky; sklon do 0.03 objem nemění."""
    C = minimal_cap(cube_body, [0.0, 0.0, 0.97], n_grid=256)
    assert C.volume == pytest.approx(0.12, rel=1e-3)
    assert C.direction[2] >= 0.999


# === Hraniční pakování ===

def test_boundary_packing_of_disk(disk):
    eps = 0.02
    pack = boundary_packing(disk, eps, seed=0, n_dirs=128, coverage_rays=2000)
    assert len(pack) > 0
    for entry in pack.entries:
        assert entry.region.depth == pytest.approx(eps, abs=1e-6)
    regions = [e.region.region for e in pack.entries]
    for i in range(len(regions)):
        for j in range(i + 1, len(regions)):
            assert interiors_disjoint(regions[i], regions[j])
    assert 0.0 <= pack.coverage <= 1.0
    histogram = volume_histogram(pack)
    assert sum(histogram.values()) == len(pack)
    assert pack.steps[0]["step"] == "Hraniční pakování"


def test_boundary_packing_is_deterministic(disk):
    first = boundary_packing(disk, 0.02, seed=3, n_dirs=64, coverage_rays=500)
    second = boundary_packing(disk, 0.02, seed=3, n_dirs=64, coverage_rays=500)
    np.testing.assert_array_equal([e.region.center for e in first.entries],
                                  [e.region.center for e in second.entries])
    assert first.coverage == second.coverage


def test_boundary_packing_rejects_large_eps(disk):
    with pytest.raises(EpsilonTooLarge):
        boundary_packing(disk, 0.3, n_dirs=16)


def test_packing_class_bound(disk):
    pack = boundary_packing(disk, 0.02, seed=0, n_dirs=64, coverage_rays=500)
    constant = fit_packing_constant(pack)
    report = total_packing_bound(pack, constant)
    assert report["passed"]
    assert report["count"] == len(pack)
    assert report["class_bound"] > 0.0
    assert max(report["class_ratios"].values()) == pytest.approx(constant)
    assert report["exceeded"] == []


def test_packing_class_bound_detects_overfull_class(disk):
    """Každá oblast třikrát: nejplnější třída má poměr 3·C > 2·C."""
    pack = boundary_packing(disk, 0.02, seed=0, n_dirs=64, coverage_rays=500)
    constant = fit_packing_constant(pack)
    report = total_packing_bound(replace(pack, entries=pack.entries * 3), constant)
    assert not report["passed"]
    assert report["exceeded"]
    assert report["count"] == 3 * len(pack)


def test_packing_constant_carries_over_to_smaller_eps(disk):
    reference = boundary_packing(disk, 0.05, seed=0, n_dirs=512, coverage_rays=500)
    pack = boundary_packing(disk, 0.02, seed=0, n_dirs=512, coverage_rays=500)
    report = total_packing_bound(pack, fit_packing_constant(reference))
    assert report["passed"]


def test_packing_class_capacity_of_type_zero():
    """Třída 0 má kapacitu ε^{−(d−1)/2}."""
    assert class_capacity(0, 0.01, 2) == pytest.approx(10.0)
    assert class_capacity(0, 0.01, 3) == pytest.approx(100.0)


# === Kontroly vlastností ===

def test_cap_expansion_volume(cube_body):
    caps = random_caps(cube_body, 20, 0.1, seed=1)
    report = check_cap_expansion_volume(caps, 2.0)
    assert report["passed"]
    assert report["worst_ratio"] <= 1.0 + 1e-9


def test_width_volume_constants(cube_body):
    report = check_width_volume(random_caps(cube_body, 20, 0.1, seed=2))
    assert report["passed"]
    assert report["c"] > 0.0
    assert np.isfinite(report["c_prime"])


def test_cap_in_macbeath_of_base_centroid(cube_body):
    caps = random_caps(cube_body, 10, 0.05, seed=3)
    report = check_cap_in_macbeath(cube_body, caps, delta0=0.1)
    assert report["passed"]
    assert report["tested"] == 10


def test_depth_stability(cube_body):
    report = check_depth_stability(cube_body, n_points=10, max_depth=0.05, seed=4)
    assert report["passed"]
    assert report["min_ratio"] >= 0.8 - 1e-9


def test_overlap_containment(cube_body):
    assert check_overlap_containment(cube_body, n_pairs=15, seed=5)["passed"]


def test_cap_meets_shrunken(cube_body):
    caps = random_caps(cube_body, 4, 0.05, seed=6)
    assert check_cap_meets_shrunken(cube_body, caps, n_points=8, seed=6)["passed"]


def test_width_depth_ratio(cube_body):
    report = check_width_depth(cube_body, gamma=1.0 / 3.0, n_points=4, seed=7, n_grid=128)
    assert report["passed"]
    assert report["min_ratio"] >= 1.0 - 1e-6


def test_containment_factor_of_nested_slabs(cube_body):
    thin = make_cap(cube_body, [1.0, 0.0, 0.0], 0.05)
    thick = make_cap(cube_body, [1.0, 0.0, 0.0], 0.1)
    assert containment_factor(thin, thick) == pytest.approx(0.5)
    assert containment_factor(thick, thin) == pytest.approx(2.0)


def test_macbeath_region_inside_doubled_cap(cube_body):
    caps = random_caps(cube_body, 6, 0.1, seed=8)
    report = check_macbeath_in_double_cap(cube_body, caps, per_cap=3, seed=8)
    assert report["passed"]
    assert report["tested"] > 0


def test_expanded_cap_inside_scaled_macbeath(cube_body):
    assert check_expanded_cap_in_macbeath(cube_body, random_caps(cube_body, 6, 0.05, seed=9))["passed"]


def test_angle_property(cube_body):
    """Krychle má γ = 1/√3; body úzkých čepiček svírají s normálou úhel s cos ≥ γ/2."""
    report = check_angle_property(random_caps(cube_body, 20, 0.1, seed=10), gamma=1.0 / np.sqrt(3.0), delta0=0.1)
    assert report["passed"]
    assert report["min_cosine"] >= 0.5 / np.sqrt(3.0)


def test_cap_containment_beta_of_overlapping_slabs(cube_body):
    caps = [make_cap(cube_body, [1.0, 0.0, 0.0], w) for w in (0.05, 0.06, 0.3)]
    report = check_cap_containment_beta(cube_body, caps, delta0=0.1)
    assert report["passed"]
    assert report["pairs"] == 1
    assert report["beta"] == pytest.approx(1.2)
    assert report["beta_bound"] == pytest.approx(2.0)


def test_cap_containment_beta_above_bound_fails(cube_body):
    caps = [make_cap(cube_body, [1.0, 0.0, 0.0], w) for w in (0.05, 0.06)]
    report = check_cap_containment_beta(cube_body, caps, delta0=0.1, beta_bound=1.1)
    assert not report["passed"]
    assert report["beta"] == pytest.approx(1.2)
