"""
Služba pro export výsledků.

Zajišťuje zápis výsledků aproximace a experimentů do JSON, CSV a SVG
(log-log graf složitosti proti 1/ε s proloženými přímkami).
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "capcover"
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from app.constants.construction import CSV_COLUMNS, SVG_HEIGHT, SVG_WIDTH  # noqa: E402
from app.exceptions import ConfigurationError  # noqa: E402
from app.models.experiment import ExperimentRecord, ScalingFit  # noqa: E402

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "svg")
"""Podporované výstupní formáty"""

SVG_UNITS_PER_INCH = 72.0
"""SVG backend matplotlib zapisuje rozměry v bodech (72 na palec)"""


def _json_default(value: Any):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"Hodnotu typu {type(value).__name__} nelze převést do JSON")


def to_json(data: Any) -> str:
    """JSON s pevným pořadím klíčů podle vložení; numpy typy se převádějí na Python."""
    return json.dumps(data, default=_json_default, ensure_ascii=False, indent=2)


def parse_formats(value: str) -> List[str]:
    """
    "csv,svg" → ["csv", "svg"].

    Raises:
        ConfigurationError: neznámý formát
    """
    formats = [f.strip().lower() for f in value.split(",") if f.strip()]
    unknown = [f for f in formats if f not in FORMATS]
    if unknown:
        raise ConfigurationError(f"Neznámý výstupní formát: {', '.join(unknown)} (povoleno {', '.join(FORMATS)})")
    return formats


def records_to_csv(rows: Iterable[Dict[str, Any]]) -> str:
    """
    CSV s hlavičkou v pevném pořadí sloupců.

    Returns:
        CSV string
    """
    output = io.StringIO()
    writer = csv.DictWriter(output, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: row.get(key, "") for key in CSV_COLUMNS})
    return output.getvalue()


def read_records_csv(text: str) -> List[ExperimentRecord]:
    """Zpětné načtení CSV výstupu do záznamů (prázdné hodnoty → None)."""
    records = []
    for row in csv.DictReader(io.StringIO(text)):
        records.append(ExperimentRecord(
            body=row["body"],
            dim=int(row["dim"]),
            eps=float(row["eps"]),
            method=row["method"],
            seed=int(row["seed"]),
            vertices=int(row["vertices"]) if row["vertices"] else None,
            total_faces=int(row["total_faces"]) if row["total_faces"] else None,
            hausdorff_est=float(row["hausdorff"]) if row["hausdorff"] else None,
            runtime_ms=float(row["runtime_ms"]) if row["runtime_ms"] else None,
        ))
    return records


def series_key(record: ExperimentRecord) -> str:
    return f"{record.body}/{record.method}"


def records_to_svg(records: Sequence[ExperimentRecord], fits: Optional[Sequence[ScalingFit]] = None) -> str:
    """
    Log-log graf celkové složitosti proti 1/ε; jedna řada na (těleso, metoda),
    proložená přímka pro každý dostupný fit.
    """
    fits = list(fits or [])
    fig, ax = plt.subplots(figsize=(SVG_WIDTH / SVG_UNITS_PER_INCH, SVG_HEIGHT / SVG_UNITS_PER_INCH))
    try:
        series: Dict[str, List[ExperimentRecord]] = {}
        for record in records:
            if record.ok and record.total_faces:
                series.setdefault(series_key(record), []).append(record)

        for key, items in series.items():
            x = np.array([1.0 / r.eps for r in items])
            y = np.array([r.total_faces for r in items], dtype=float)
            points = ax.scatter(x, y, label=key, s=18)
            fit = next((f for f in fits if f"{f.body}/{f.method}" == key), None)
            if fit is not None:
                grid = np.geomspace(x.min(), x.max(), 50)
                ax.plot(grid, [fit.predict(1.0 / g) for g in grid], color=points.get_facecolor()[0],
                        gid=f"fit-{key}", label=f"{key}: sklon {fit.slope:.2f}, R² {fit.r_squared:.2f}")

        if series:
            ax.set_xscale("log")
            ax.set_yscale("log")
            ax.legend(fontsize=8, loc="upper left")
        ax.set_xlabel("1/ε")
        ax.set_ylabel("celková složitost (počet stěn)")
        ax.grid(True, which="both", alpha=0.3)
        fig.tight_layout()

        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        return buffer.getvalue()
    finally:
        plt.close(fig)


def write_text(path: Path, content: str) -> Path:
    """
    Zápis výstupu; OSError nese cestu a příčinu.
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(content, encoding="utf-8")
    except OSError as exc:
        raise OSError(exc.errno, f"Výstup nelze zapsat ({exc.strerror})", str(path)) from exc
    logger.debug(f"Zapsán výstup {path} ({len(content)} znaků)")
    return path


def emit(
    records: Sequence[ExperimentRecord],
    formats: Sequence[str],
    out_dir: Path,
    fits: Optional[Sequence[ScalingFit]] = None,
    stem: str = "experiment",
) -> List[Path]:
    """
    Zapíše záznamy experimentu v zadaných formátech; s JSON navíc records.json a fits.json.

    Returns:
        seznam zapsaných souborů
    """
    out_dir = Path(out_dir)
    fits = list(fits or [])
    written = []
    if "json" in formats:
        payload = {"records": [r.to_dict() for r in records], "fits": [f.to_dict() for f in fits]}
        written.append(write_text(out_dir / f"{stem}.json", to_json(payload)))
        written.append(write_text(out_dir / "records.json", to_json(payload["records"])))
        written.append(write_text(out_dir / "fits.json", to_json(payload["fits"])))
    if "csv" in formats:
        written.append(write_text(out_dir / f"{stem}.csv", records_to_csv(r.to_row() for r in records)))
    if "svg" in formats:
        written.append(write_text(out_dir / f"{stem}.svg", records_to_svg(records, fits)))
    logger.info(f"Export {len(records)} záznamů do {out_dir}: {', '.join(p.name for p in written)}")
    return written


def result_row(data: Dict[str, Any]) -> Dict[str, Any]:
    """Řádek CSV z JSON podoby výsledku aproximace."""
    return {
        "body": data["body"],
        "dim": data["dim"],
        "eps": data["eps"],
        "method": data["method"],
        "seed": data["seed"],
        "vertices": data["counts"]["vertices"],
        "total_faces": data["counts"]["total"],
        "hausdorff": data["hausdorff_est"],
        "runtime_ms": data["runtime_ms"],
    }


def emit_result(result, formats: Sequence[str], out_dir: Path, stem: str = "approximation") -> List[Path]:
    """Zápis jednoho výsledku aproximace (json nebo csv)."""
    if "svg" in formats:
        raise ConfigurationError("Výsledek jedné aproximace nelze exportovat do SVG; použijte experiment")
    out_dir = Path(out_dir)
    data = result.to_dict()
    written = []
    if "json" in formats:
        written.append(write_text(out_dir / f"{stem}.json", to_json(data)))
    if "csv" in formats:
        written.append(write_text(out_dir / f"{stem}.csv", records_to_csv([result_row(data)])))
    return written
