import json

import pytest

from app.constants.construction import CSV_COLUMNS
from app.exceptions import ConfigurationError
from app.models.experiment import ExperimentRecord, ScalingFit
from app.services.export_service import (
    emit,
    parse_formats,
    read_records_csv,
    records_to_csv,
    records_to_svg,
    to_json,
    write_text,
)


@pytest.fixture
def records():
    rows = []
    for method, scale in (("layered", 5.0), ("dudley", 9.0)):
        for eps in (0.1, 0.05, 0.025, 0.0125):
            total = int(scale * (1.0 / eps) ** 0.5)
            rows.append(ExperimentRecord(body="disk", dim=2, eps=eps, method=method, seed=0, vertices=total // 2,
                                         total_faces=total, hausdorff_est=eps / 2, runtime_ms=1.5))
    rows.append(ExperimentRecord(body="disk", dim=2, eps=0.4, method="layered", seed=0, error="ε je příliš velké"))
    return rows


@pytest.fixture
def fits():
    return [ScalingFit(method=m, body="disk", dim=2, slope=0.5, intercept=i, r_squared=1.0, n_points=4)
            for m, i in (("layered", 1.6), ("dudley", 2.2))]


# === Formáty ===

def test_parse_formats():
    assert parse_formats("csv, SVG") == ["csv", "svg"]
    assert parse_formats("json") == ["json"]
    with pytest.raises(ConfigurationError):
        parse_formats("csv,xlsx")


def test_to_json_converts_numpy():
    import numpy as np

    data = json.loads(to_json({"a": np.arange(3), "b": np.float64(0.5), "c": np.bool_(True)}))
    assert data == {"a": [0, 1, 2], "b": 0.5, "c": True}


# === CSV ===

def test_csv_header_order(records):
    text = records_to_csv(r.to_row() for r in records)
    assert text.splitlines()[0] == "body,dim,eps,method,seed,vertices,total_faces,hausdorff,runtime_ms"
    assert text.splitlines()[0].split(",") == CSV_COLUMNS


def test_csv_read_back(records):
    back = read_records_csv(records_to_csv(r.to_row() for r in records))
    assert len(back) == len(records)
    assert back[0].total_faces == records[0].total_faces
    assert back[0].eps == pytest.approx(0.1)
    # selhaná buňka má prázdné míry
    assert back[-1].total_faces is None
    assert back[-1].hausdorff_est is None


# === SVG ===

def test_svg_view_box_and_series(records, fits):
    svg = records_to_svg(records, fits)
    assert 'viewBox="0 0 800 600"' in svg
    assert svg.count('id="fit-') == 2


def test_svg_without_records():
    svg = records_to_svg([])
    assert 'viewBox="0 0 800 600"' in svg
    assert 'id="fit-' not in svg


def test_svg_is_deterministic(records, fits):
    assert records_to_svg(records, fits) == records_to_svg(records, fits)


# === Zápis ===

def test_emit_all_formats(tmp_path, records, fits):
    written = emit(records, ["json", "csv", "svg"], tmp_path / "out", fits)
    names = sorted(p.name for p in written)
    assert names == ["experiment.csv", "experiment.json", "experiment.svg", "fits.json", "records.json"]
    payload = json.loads((tmp_path / "out" / "experiment.json").read_text(encoding="utf-8"))
    assert len(payload["records"]) == len(records)
    assert payload["fits"][0]["expected_slope"] == pytest.approx(0.5)


def test_write_text_reports_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(OSError) as exc_info:
        write_text(blocker / "nested" / "out.csv", "data")
    assert str(blocker) in str(exc_info.value)
