import json
import math

import numpy as np
import pytest

from app.exceptions import BodySpecError, NotNested
from app.models.experiment import ExperimentRecord
from app.models.settings import ApproximationSettings
from app.services.geom.hull import convex_hull
from app.services.metrics.experiment import MIN_FIT_POINTS, fit_scaling, load_grid, run_cell, run_experiment
from app.services.metrics.hausdorff import hausdorff_inner, hausdorff_outer


# === Hausdorffova vzdálenost ===

def test_inner_square_in_disk(disk):
    r = math.sqrt(2.0) / 2.0
    P = convex_hull(np.array([[r, r], [-r, r], [-r, -r], [r, -r]]))
    assert hausdorff_inner(P, disk, n_dirs=400, refine=8) == pytest.approx(1.0 - r, abs=1e-4)


def test_outer_square_around_disk(disk, square):
    assert hausdorff_outer(square, disk, n_dirs=400, refine=8) == pytest.approx(math.sqrt(2.0) - 1.0, abs=1e-4)


def test_polytope_against_itself(cube, cube_body):
    assert hausdorff_inner(cube, cube_body, n_dirs=200, refine=4) == pytest.approx(0.0, abs=1e-12)


def test_inner_distance_shrinks_as_polytope_grows(disk):
    """Přidání vrcholů do P ⊆ K vzdálenost nezvětší."""
    angles = np.linspace(0.0, 2.0 * np.pi, 48, endpoint=False)
    ring = np.column_stack([np.cos(angles), np.sin(angles)])
    distances = [hausdorff_inner(convex_hull(ring[::step]), disk, n_dirs=500, refine=0)
                 for step in (16, 8, 4, 2, 1)]
    assert all(a >= b - 1e-12 for a, b in zip(distances, distances[1:]))
    assert distances[0] > distances[-1]


def test_nesting_is_checked(disk, square):
    with pytest.raises(NotNested):
        hausdorff_inner(square, disk, n_dirs=100, refine=2)
    small = convex_hull(0.5 * square.vertices)
    with pytest.raises(NotNested):
        hausdorff_outer(small, disk, n_dirs=100, refine=2)


# === Mřížka experimentu ===

def test_load_grid_from_dict_and_string(tmp_path):
    data = {"bodies": [{"type": "ball", "dim": 2, "id": "disk"}], "eps": [0.1, 0.05],
            "methods": ["layered", "bi"], "seeds": [0, 1]}
    grid = load_grid(data)
    assert len(grid) == 8
    # pořadí buněk: těleso, metoda, ε, seed
    assert [(m, e, s) for _, m, e, s in grid.cells()[:3]] == [("layered", 0.1, 0), ("layered", 0.1, 1),
                                                             ("layered", 0.05, 0)]
    assert len(load_grid(json.dumps(data))) == 8

    path = tmp_path / "grid.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    assert len(load_grid(str(path))) == 8


@pytest.mark.parametrize("source", [
    "{broken",
    "[1, 2]",
    {"eps": [0.1], "methods": ["simplex"]},
    {"eps": [-0.1]},
    {"eps": ["abc"]},
])
def test_load_grid_rejects_invalid(source):
    with pytest.raises(BodySpecError):
        load_grid(source)


def test_empty_grid(settings):
    assert run_experiment({"bodies": [], "eps": [0.1]}, settings) == ([], [])


def test_run_cell_records_failure(disk, settings):
    record = run_cell(disk, "layered", 0.4, 0, settings)
    assert not record.ok
    assert "příliš velké" in record.error
    assert record.to_row()["total_faces"] == ""


def test_run_cell_success(disk, settings):
    record = run_cell(disk, "bi", 0.05, 0, settings)
    assert record.ok
    assert record.vertices >= 3
    assert record.total_faces == 2 * record.vertices


def test_run_cell_marks_hausdorff_overrun(disk, settings, monkeypatch):
    monkeypatch.setattr("app.services.construction.engine.hausdorff_inner", lambda *args: 1.0)
    record = run_cell(disk, "bi", 0.05, 0, settings)
    assert not record.ok
    assert "přesahuje" in record.error
    assert record.total_faces == 2 * record.vertices
    assert record.hausdorff_est == 1.0


def test_hausdorff_overruns_are_excluded_from_fits(disk, settings, monkeypatch):
    monkeypatch.setattr("app.services.construction.engine.hausdorff_inner", lambda *args: 1.0)
    records = [run_cell(disk, "bi", eps, 0, settings) for eps in (0.1, 0.05, 0.02, 0.01)]
    assert all(r.total_faces for r in records)
    assert fit_scaling(records) == []


@pytest.mark.slow
def test_experiment_is_deterministic(settings):
    grid = {"bodies": [{"type": "ball", "dim": 2, "id": "disk"}], "eps": [0.1, 0.05],
            "methods": ["layered", "dudley"], "seeds": [0]}
    first, _ = run_experiment(grid, settings)
    second, _ = run_experiment(grid, settings)
    assert [r.to_dict(include_runtime=False) for r in first] == [r.to_dict(include_runtime=False) for r in second]


# === Fit škálování ===

def _synthetic_records(slope, body="disk", method="layered", dim=2):
    return [ExperimentRecord(body=body, dim=dim, eps=eps, method=method, seed=0, vertices=1,
                             total_faces=int(round(10.0 * (1.0 / eps) ** slope)))
            for eps in (0.2, 0.1, 0.05, 0.025, 0.0125, 0.00625)]


def test_fit_scaling_recovers_slope():
    fits = fit_scaling(_synthetic_records(1.0, dim=3))
    assert len(fits) == 1
    fit = fits[0]
    assert fit.slope == pytest.approx(1.0, abs=0.02)
    assert fit.r_squared > 0.99
    assert fit.expected_slope == pytest.approx(1.0)
    assert fit.predict(0.1) == pytest.approx(100.0, rel=0.05)


def test_fit_scaling_groups_by_body_and_method():
    records = _synthetic_records(0.5) + _synthetic_records(1.0, method="dudley")
    fits = {f.method: f for f in fit_scaling(records)}
    assert set(fits) == {"layered", "dudley"}
    assert fits["layered"].slope == pytest.approx(0.5, abs=0.05)


def test_fit_scaling_skips_short_series():
    records = _synthetic_records(1.0)[: MIN_FIT_POINTS - 1]
    assert fit_scaling(records) == []


def test_fit_scaling_ignores_failed_cells():
    records = _synthetic_records(1.0)
    records.append(ExperimentRecord(body="disk", dim=2, eps=0.001, method="layered", seed=0, error="x"))
    assert fit_scaling(records)[0].n_points == 6


# === Škálování na skutečných bězích ===

@pytest.mark.slow
def test_layered_slope_on_disk(disk):
    """Sklon vrstvené konstrukce na kruhu s výchozími konstantami leží kolem (d − 1)/2."""
    records = [run_cell(disk, "layered", eps, 0, ApproximationSettings(threads=2))
               for eps in (0.1, 0.05, 0.02, 0.01, 0.005)]
    assert all(r.ok for r in records)
    fit = fit_scaling(records)[0]
    assert 0.2 <= fit.slope <= 1.0
    assert fit.r_squared >= 0.9


@pytest.mark.slow
@pytest.mark.parametrize("method", ["dudley", "bi"])
def test_baseline_slopes_on_disk(settings, method):
    grid = {"bodies": [{"type": "ball", "dim": 2, "id": "disk"}], "eps": [0.1, 0.05, 0.02, 0.01, 0.004],
            "methods": [method], "seeds": [0]}
    records, fits = run_experiment(grid, settings)
    assert all(r.ok for r in records)
    assert len(fits) == 1
    assert fits[0].slope == pytest.approx(0.5, abs=0.2)
    assert fits[0].expected_slope == pytest.approx(0.5)
