import json

import pytest

from app.exceptions import NotConverged

DISK = '{"type": "ball", "dim": 2, "id": "disk"}'


def _invoke(runner, *args):
    return runner.invoke(args=["capcover", *args])


# === approximate ===

def test_approximate_writes_outputs(runner, tmp_path):
    result = _invoke(runner, "approximate", "--body", DISK, "--eps", "0.05", "--method", "bi",
                     "--out", str(tmp_path), "--format", "json,csv")
    assert result.exit_code == 0, result.output
    data = json.loads((tmp_path / "disk_bi.json").read_text(encoding="utf-8"))
    assert data["method"] == "bi"
    assert data["counts"]["vertices"] >= 3
    lines = (tmp_path / "disk_bi.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "body,dim,eps,method,seed,vertices,total_faces,hausdorff,runtime_ms"
    assert lines[1].startswith("disk,2,0.05,bi,0,")


def test_approximate_layered_from_file(runner, tmp_path):
    body = tmp_path / "disk.json"
    body.write_text(DISK, encoding="utf-8")
    result = _invoke(runner, "approximate", "--body", str(body), "--eps", "0.05", "--out", str(tmp_path / "out"))
    assert result.exit_code == 0, result.output
    assert (tmp_path / "out" / "disk_layered.json").exists()


@pytest.mark.parametrize("args", [
    ["--body", "{nope", "--eps", "0.05"],
    ["--body", '{"type": "torus", "dim": 3}', "--eps", "0.05"],
    ["--body", '{"type": "ball", "dim": 8}', "--eps", "0.05"],
    ["--body", DISK, "--eps", "0.4"],
    ["--body", DISK, "--eps", "0.05", "--format", "xlsx"],
])
def test_approximate_configuration_errors(runner, tmp_path, args):
    result = _invoke(runner, "approximate", *args, "--out", str(tmp_path))
    assert result.exit_code == 3
    assert "Chyba konfigurace" in result.output
    assert not list(tmp_path.iterdir())


def test_approximate_unwritable_output(runner, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    result = _invoke(runner, "approximate", "--body", DISK, "--eps", "0.05", "--method", "bi",
                     "--out", str(blocker / "out"))
    assert result.exit_code == 1
    assert "Chyba zápisu" in result.output


def test_approximate_computation_error(runner, tmp_path, monkeypatch):
    def fail(*args, **kwargs):
        raise NotConverged("síť nekonverguje")

    monkeypatch.setattr("app.services.construction.engine.approximate", fail)
    result = _invoke(runner, "approximate", "--body", DISK, "--eps", "0.05", "--out", str(tmp_path))
    assert result.exit_code == 1
    assert "síť nekonverguje" in result.output


# === pack a polar-check ===

def test_pack(runner, tmp_path):
    result = _invoke(runner, "pack", "--body", DISK, "--eps", "0.05", "--dirs", "64", "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "disk_packing.json").read_text(encoding="utf-8"))
    assert report["count"] == sum(report["histogram"].values())
    assert report["passed"]
    assert report["reference_eps"] == pytest.approx(0.05)
    assert report["packing_constant"] > 0.0
    assert report["steps"][0]["step"] == "Hraniční pakování"


def test_polar_check(runner, tmp_path):
    result = _invoke(runner, "polar-check", "--body", DISK, "--eps", "0.05", "--dirs", "4", "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "disk_polar.json").read_text(encoding="utf-8"))
    assert len(report["records"]) == 4
    assert set(report["records"][0]) == {"direction", "cap_volume", "polar_cap_volume", "normalized_product"}
    assert report["mahler"]["in_band"]


def test_polar_check_rejects_negative_constant(runner, tmp_path):
    result = _invoke(runner, "polar-check", "--body", DISK, "--eps", "0.05", "--c", "-1", "--out", str(tmp_path))
    assert result.exit_code == 3


# === experiment ===

def test_experiment_with_empty_grid(runner, tmp_path):
    result = _invoke(runner, "experiment", "--grid", '{"bodies": [], "eps": [0.1]}', "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    assert (tmp_path / "experiment.csv").read_text(encoding="utf-8").strip() == \
        "body,dim,eps,method,seed,vertices,total_faces,hausdorff,runtime_ms"
    assert 'viewBox="0 0 800 600"' in (tmp_path / "experiment.svg").read_text(encoding="utf-8")


def test_experiment_rejects_bad_grid(runner, tmp_path):
    result = _invoke(runner, "experiment", "--grid", '{"eps": [0.1], "methods": ["simplex"]}', "--out", str(tmp_path))
    assert result.exit_code == 3


def test_experiment_records_failed_cells(runner, tmp_path):
    grid = '{"bodies": [{"type": "ball", "dim": 2, "id": "disk"}], "eps": [0.4], "methods": ["bi"]}'
    result = _invoke(runner, "experiment", "--grid", grid, "--out", str(tmp_path), "--format", "json")
    assert result.exit_code == 0, result.output
    records = json.loads((tmp_path / "records.json").read_text(encoding="utf-8"))
    assert records[0]["error"]
    assert records[0]["counts"]["total"] is None


# === verify ===

def test_verify_passes_for_disk(runner, tmp_path):
    result = _invoke(runner, "verify", "--body", DISK, "--eps", "0.1", "--halfspaces", "200", "--out", str(tmp_path))
    assert result.exit_code == 0, result.output
    assert "disk (ε=0.1): OK" in result.output
    assert json.loads((tmp_path / "disk_verify.json").read_text(encoding="utf-8"))["passed"]


def test_verify_failure_exit_code(runner, monkeypatch):
    monkeypatch.setattr("app.services.reports.verify_report",
                        lambda *args, **kwargs: (False, {"steps": [{"step": "(2)", "detail": "", "result": "1 selhání"}]}))
    result = _invoke(runner, "verify", "--body", DISK, "--eps", "0.1")
    assert result.exit_code == 2
    assert "SELHALO" in result.output
