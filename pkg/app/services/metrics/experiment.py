"""
Experimentální mřížka: těleso × ε × metoda × seed a regresní fity složitosti.

Formát mřížky (JSON):
    {"bodies": [<popis tělesa>, ...], "eps": [0.1, 0.05, ...],
     "methods": ["layered", "dudley", "bi"], "seeds": [0], "packing": false}
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from app.constants.construction import METHODS
from app.exceptions import BodySpecError, CapCoverError, HausdorffExceeded
from app.models.experiment import ExperimentRecord, ScalingFit
from app.models.settings import ApproximationSettings
from app.services.bodies.canonical import to_canonical
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.spec_loader import load_bodies
from app.services.caps.packing import boundary_packing, volume_histogram
from app.services.construction.engine import approximate

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 4
"""Nejmenší počet různých ε pro regresní fit"""


@dataclass
class ExperimentGrid:
    bodies: List[ConvexBodyOracle]
    eps: List[float]
    methods: List[str]
    seeds: List[int]
    packing: bool = False

    def cells(self) -> List[Tuple[ConvexBodyOracle, str, float, int]]:
        """Buňky v pevném pořadí: těleso, metoda, ε, seed."""
        return [(K, method, eps, seed)
                for K in self.bodies for method in self.methods for eps in self.eps for seed in self.seeds]

    def __len__(self) -> int:
        return len(self.bodies) * len(self.methods) * len(self.eps) * len(self.seeds)


def load_grid(source: Union[str, Path, Dict[str, Any]]) -> ExperimentGrid:
    """
    Načte mřížku ze souboru, JSON řetězce nebo slovníku.

    Raises:
        BodySpecError: neplatný JSON, chybějící nebo chybná pole
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        try:
            is_file = not text.lstrip().startswith("{") and Path(text).is_file()
            data = json.loads(Path(text).read_text(encoding="utf-8")) if is_file else json.loads(text)
        except json.JSONDecodeError as exc:
            raise BodySpecError(f"Mřížka experimentu není platný JSON: {exc}") from exc
        except OSError as exc:
            raise BodySpecError(f"Soubor s mřížkou nelze načíst: {exc}") from exc
    if not isinstance(data, dict):
        raise BodySpecError("Mřížka experimentu musí být JSON objekt")

    methods = list(data.get("methods", ["layered"]))
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise BodySpecError(f"Neznámé metody v mřížce: {', '.join(map(str, unknown))}")
    try:
        eps = [float(e) for e in data.get("eps", [])]
        seeds = [int(s) for s in data.get("seeds", [0])]
    except (TypeError, ValueError) as exc:
        raise BodySpecError(f"Neplatné hodnoty ε nebo seedů v mřížce: {exc}") from exc
    if any(e <= 0.0 for e in eps):
        raise BodySpecError(f"Hodnoty ε v mřížce musí být kladné: {eps}")

    specs = data.get("bodies", [])
    bodies = load_bodies(specs) if specs else []
    return ExperimentGrid(bodies=bodies, eps=eps, methods=methods, seeds=seeds, packing=bool(data.get("packing")))


def run_cell(K: ConvexBodyOracle, method: str, eps: float, seed: int,
             settings: ApproximationSettings, packing: bool = False) -> ExperimentRecord:
    """
    Jedna buňka; chyba se zapíše do záznamu a sweep pokračuje.

    Překročení Hausdorffovy rezervy označí buňku jako selhanou, počty stěn zůstanou
    v záznamu, ale fit_scaling ji vynechá.
    """
    try:
        result = approximate(K, eps, settings, seed, method)
        histogram = None
        if packing:
            pack = boundary_packing(to_canonical(K).body, result.stats["epsilon_canonical"], seed,
                                    settings.packing_dirs)
            histogram = volume_histogram(pack)
        return ExperimentRecord.from_result(result, histogram)
    except HausdorffExceeded as e:
        logger.error(f"Buňka {K.body_id}/{method}/ε={eps:g}/seed {seed}: {e}")
        return ExperimentRecord.from_result(e.result, error=str(e))
    except (CapCoverError, np.linalg.LinAlgError) as e:
        logger.error(f"Buňka {K.body_id}/{method}/ε={eps:g}/seed {seed} selhala: {e}")
        return ExperimentRecord(body=K.body_id, dim=K.dim, eps=eps, method=method, seed=seed, error=str(e))


def fit_scaling(records: List[ExperimentRecord]) -> List[ScalingFit]:
    """
    Fit log(total) proti log(1/ε) metodou nejmenších čtverců pro každou dvojici (těleso, metoda).

    Dvojice s méně než MIN_FIT_POINTS různými ε se vynechají.
    """
    groups: Dict[Tuple[str, str], List[ExperimentRecord]] = {}
    for record in records:
        if record.ok and record.total_faces:
            groups.setdefault((record.body, record.method), []).append(record)

    fits = []
    for (body, method), items in groups.items():
        if len({r.eps for r in items}) < MIN_FIT_POINTS:
            logger.debug(f"Fit {body}/{method} vynechán: jen {len({r.eps for r in items})} hodnot ε")
            continue
        x = np.array([math.log(1.0 / r.eps) for r in items])
        y = np.array([math.log(r.total_faces) for r in items])
        slope, intercept = np.polyfit(x, y, 1)
        residual = y - (slope * x + intercept)
        total = float(np.sum((y - y.mean()) ** 2))
        r_squared = 1.0 - float(np.sum(residual**2)) / total if total > 0.0 else 1.0
        fits.append(ScalingFit(method=method, body=body, dim=items[0].dim, slope=float(slope),
                               intercept=float(intercept), r_squared=r_squared, n_points=len(items)))
        logger.info(f"Fit {body}/{method}: sklon {slope:.3f} (teorie {(items[0].dim - 1) / 2:g}), R² {r_squared:.3f}")
    return fits


def run_experiment(
    grid: Union[ExperimentGrid, str, Path, Dict[str, Any]],
    settings: Optional[ApproximationSettings] = None,
) -> Tuple[List[ExperimentRecord], List[ScalingFit]]:
    """
    Provede všechny buňky mřížky paralelně; záznamy zachovávají pořadí mřížky.

    Examples:
        prázdná mřížka → ([], [])
    """
    settings = settings or ApproximationSettings()
    if not isinstance(grid, ExperimentGrid):
        grid = load_grid(grid)
    cells = grid.cells()
    if not cells:
        logger.info("Prázdná mřížka experimentu")
        return [], []

    logger.info(f"Experiment: {len(cells)} buněk, {settings.threads} vláken")
    with ThreadPoolExecutor(max_workers=max(1, settings.threads)) as pool:
        records = list(pool.map(lambda cell: run_cell(*cell, settings, grid.packing), cells))

    failed = sum(1 for r in records if not r.ok)
    if failed:
        logger.warning(f"Experiment: {failed} z {len(records)} buněk selhalo")
    return records, fit_scaling(records)
