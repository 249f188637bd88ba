"""
Sestavení zpráv pro příkazovou řádku a API.

Každá funkce vezme těleso z popisu, provede výpočet a vrátí JSON-serializovatelný
slovník; CLI jej zapíše do souboru, API vrátí v odpovědi.
"""

import logging
from dataclasses import replace
from typing import Dict, Optional, Tuple

from app.constants.construction import PACKING_REFERENCE_EPS
from app.exceptions import HausdorffExceeded
from app.models.settings import ApproximationSettings
from app.services.bodies.canonical import to_canonical
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.caps.properties import fit_packing_constant, total_packing_bound
from app.services.caps.packing import boundary_packing, volume_histogram
from app.services.construction.engine import approximate, canonical_epsilon
from app.services.construction.verification import verify_witness_collector
from app.services.polar.cap_map import cap_product_sweep, polar_proxy, product_summary
from app.services.polar.duality import mahler, mahler_band

logger = logging.getLogger(__name__)


def packing_report(K: ConvexBodyOracle, eps: float, settings: ApproximationSettings,
                   seed: int = 0, n_dirs: Optional[int] = None) -> Dict:
    """
    Hraniční pakování kanonického tvaru K v hloubce ε_c a histogram tříd objemu.

    Konstanta třídové meze se fituje na pakování v hloubce PACKING_REFERENCE_EPS
    (u tenkých kanonických těles nejvýše δ(O)/8) se stejným seedem a počtem směrů;
    passed říká, zda žádná třída nepřesáhla PACKING_BOUND_SLACK-násobek konstanty.
    """
    canon = to_canonical(K)
    eps_c = canonical_epsilon(canon, eps)
    n_dirs = n_dirs or settings.packing_dirs
    pack = boundary_packing(canon.body, eps_c, seed, n_dirs, settings.threads)
    reference_eps = min(PACKING_REFERENCE_EPS, canon.inradius / 8.0)
    if abs(eps_c - reference_eps) <= 1e-12:
        reference = pack
    else:
        reference = boundary_packing(canon.body, reference_eps, seed, n_dirs, settings.threads)
    constant = fit_packing_constant(reference)
    histogram = volume_histogram(pack)
    bound = total_packing_bound(pack, constant)
    if not bound["passed"]:
        logger.warning(f"Pakování {K.body_id} při ε={eps:g}: třídy {bound['exceeded']} nad mezí")
    return {
        **pack.to_dict(),
        "body": K.body_id,
        "eps": eps,
        "eps_canonical": eps_c,
        "histogram": {str(k): v for k, v in histogram.items()},
        "passed": bound["passed"],
        "packing_constant": constant,
        "reference_eps": reference_eps,
        "class_ratios": bound["class_ratios"],
        "class_bound": bound["class_bound"],
        "reference": bound["reference"],
        "steps": pack.steps + bound["steps"],
    }


def polar_report(K: ConvexBodyOracle, eps: float, settings: ApproximationSettings,
                 n_dirs: int, c: Optional[float] = None, seed: int = 0) -> Dict:
    """Sweep součinů vol(C)·vol(π(C)) po směrech na kanonickém tvaru K."""
    if c is not None:
        settings = replace(settings, polar_c=c)
    canon = to_canonical(K)
    eps_c = canonical_epsilon(canon, eps)
    records = cap_product_sweep(canon.body, eps_c, n_dirs, settings, seed)
    polar = polar_proxy(canon.body, eps_c, settings.proxy_max_points)
    low, high = mahler_band(K.dim)
    mahler_volume = mahler(polar.polytope)
    return {
        "body": K.body_id,
        "dim": K.dim,
        "eps": eps,
        "eps_canonical": eps_c,
        "c": settings.polar_c,
        "seed": seed,
        "mahler": {"value": mahler_volume, "band": [low, high], "in_band": low <= mahler_volume <= high},
        "summary": product_summary(records),
        "records": [r.to_dict() for r in records],
    }


def verify_report(K: ConvexBodyOracle, eps: float, settings: ApproximationSettings,
                  seed: int = 0, n_halfspaces: int = 1000) -> Tuple[bool, Dict]:
    """
    Vrstvená aproximace a ověření soustavy svědků a sběračů.

    Returns:
        (prošlo, zpráva); neprojde při selhání vlastnosti (1) nebo (2) nebo při
        Hausdorffově odhadu nad 1.05·ε
    """
    try:
        result = approximate(K, eps, settings, seed, "layered")
    except HausdorffExceeded as e:
        logger.warning(str(e))
        result = e.result
    report = verify_witness_collector(result.system, eps=result.stats["epsilon_canonical"],
                                      n_halfspaces=n_halfspaces, seed=seed)
    passed = bool(report["passed"] and result.hausdorff_ok)
    steps = result.stats["steps"] + report["steps"]
    summary = {k: v for k, v in report.items() if k != "steps"}
    if not passed:
        logger.warning(f"Ověření {K.body_id} při ε={eps:g} selhalo: {summary}")
    return passed, {
        "body": K.body_id,
        "dim": K.dim,
        "eps": eps,
        "seed": seed,
        "passed": passed,
        "hausdorff_est": result.hausdorff_est,
        "hausdorff_ok": result.hausdorff_ok,
        "witness_count": result.stats["witness_count"],
        "report": summary,
        "steps": steps,
    }
