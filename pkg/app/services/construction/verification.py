"""
Ověření vlastností soustavy svědků a sběračů.

(1) každý svědek obsahuje svůj vybraný bod,
(2) každý poloprostor buď obsahuje celého svědka, nebo jsou všechny body S v něm
    obsaženy v jednom sběrači,
(3) každý sběrač obsahuje jen omezený počet bodů S.
"""

import logging
from typing import Dict, Optional

import numpy as np

from app.models.construction import WitnessCollectorSystem
from app.services.construction.assembly import polytope_gauge
from app.services.geom.sampling import random_directions, sphere_directions
from app.services.geom.separation import interiors_disjoint

logger = logging.getLogger(__name__)

HEIGHT_TOLERANCE = 1e-12
"""Tolerance výšky při testu obsažení v poloprostoru"""


def membership_matrix(system: WitnessCollectorSystem, points: np.ndarray) -> np.ndarray:
    """Matice (sběrače × body) příslušnosti bodů ke sběračům."""
    layers = system.layers.layer_of(polytope_gauge(system.body.polytope, points))
    if not system.collectors:
        return np.zeros((0, points.shape[0]), dtype=bool)
    return np.array([c.contains_many(points, layers) for c in system.collectors])


def check_collector_consistency(system: WitnessCollectorSystem, points: np.ndarray, members: np.ndarray) -> Dict:
    """
    Každé přiřazení bod → sběrač se ověří přímo: bod leží ve slupce K_r \\ K_{r−1}
    a nad rovinou kusu E_r^σ.
    """
    gauge = polytope_gauge(system.body.polytope, points)
    layers = system.layers
    mismatches = 0
    for c, collector in enumerate(system.collectors):
        offsets = dict(collector.pieces)
        for k in np.flatnonzero(members[c]):
            g = gauge[k]
            hit = False
            for r, offset in offsets.items():
                inner = layers.scale(r - 1) if r > -layers.t - 1 else -np.inf
                if inner < g <= layers.scale(r) and points[k] @ collector.direction >= offset - 1e-12:
                    hit = True
                    break
            mismatches += 0 if hit else 1
    return {"claims": int(members.sum()), "mismatches": mismatches, "passed": mismatches == 0}


def check_witness_disjointness(system: WitnessCollectorSystem) -> Dict:
    """Svědci mají po dvou disjunktní vnitřky (LP test s předfiltrem opsaných koulí)."""
    centers = system.centers
    radii = np.array([W.circumradius(c) for W, c in zip(system.witnesses, centers)])
    overlaps, tested = 0, 0
    for i in range(len(system.witnesses)):
        gaps = np.linalg.norm(centers[i + 1:] - centers[i], axis=1)
        for k in np.flatnonzero(gaps < radii[i + 1:] + radii[i]) + i + 1:
            tested += 1
            if not interiors_disjoint(system.witnesses[i], system.witnesses[k]):
                overlaps += 1
    return {"pairs_tested": tested, "overlaps": overlaps, "passed": overlaps == 0}


def _halfspace_sweep(system: WitnessCollectorSystem, points: np.ndarray, members: np.ndarray,
                     directions: np.ndarray, offsets: np.ndarray) -> Dict:
    """Pro poloprostory {⟨u, y⟩ ≥ o}: kolik jich splní větev 1, větev 2 a kolik žádnou."""
    vertices = np.vstack([W.vertices for W in system.witnesses])
    starts = np.cumsum([0] + [W.n_vertices for W in system.witnesses[:-1]])
    witness_branch = collector_branch = failures = 0
    for u, offset in zip(directions, offsets):
        lowest = np.minimum.reduceat(vertices @ u, starts)
        if np.any(lowest >= offset - HEIGHT_TOLERANCE):
            witness_branch += 1
            continue
        inside = np.flatnonzero(points @ u >= offset - HEIGHT_TOLERANCE)
        if inside.shape[0] == 0 or np.any(members[:, inside].all(axis=1)):
            collector_branch += 1
            continue
        failures += 1
    return {"halfspaces": int(directions.shape[0]), "witness_branch": witness_branch,
            "collector_branch": collector_branch, "failures": failures}


def verify_witness_collector(
    system: WitnessCollectorSystem,
    points: Optional[np.ndarray] = None,
    eps: Optional[float] = None,
    n_halfspaces: int = 1000,
    seed: int = 0,
    check_disjointness: bool = True,
) -> Dict:
    """
    Zpráva o vlastnostech (1)–(3).

    Args:
        system: sestavená soustava
        points: vybraná množina S (výchozí středy svědků)
        eps: šířka pro druhou sadu poloprostorů (výchozí α vrstev)
        n_halfspaces: počet náhodných poloprostorů protínajících těleso
        seed: seed náhodných poloprostorů

    Returns:
        slovník s počty selhání, max bodů ve sběrači, kontrolami a krokovým protokolem
    """
    points = system.centers if points is None else np.atleast_2d(points)
    eps = system.layers.alpha if eps is None else eps
    body = system.body
    steps = []

    contains_own = [W.contains(p) for W, p in zip(system.witnesses, points)]
    property1 = bool(all(contains_own))
    steps.append({"step": "(1) svědek obsahuje svůj bod", "detail": f"{len(contains_own)} svědků",
                  "result": "OK" if property1 else f"{len(contains_own) - sum(contains_own)} porušení"})

    members = membership_matrix(system, points)
    per_collector = members.sum(axis=1) if members.size else np.zeros(0, dtype=int)
    max_points = int(per_collector.max()) if per_collector.size else 0
    steps.append({"step": "(3) body ve sběračích", "detail": f"{len(system.collectors)} sběračů",
                  "result": f"max {max_points}"})

    if not system.witnesses:
        random_sweep = {"halfspaces": 0, "witness_branch": 0, "collector_branch": 0, "failures": 0}
        width_sweep = dict(random_sweep)
    else:
        rng = np.random.default_rng(seed)
        directions = random_directions(n_halfspaces, body.dim, rng)
        tops = body.support_many(directions)
        widths = rng.uniform(0.0, 1.0, n_halfspaces) * (tops + body.support_many(-directions))
        random_sweep = _halfspace_sweep(system, points, members, directions, tops - widths)

        fixed = sphere_directions(n_halfspaces, body.dim, seed)
        width_sweep = _halfspace_sweep(system, points, members, fixed, body.support_many(fixed) - eps)
    for name, sweep in (("náhodné poloprostory", random_sweep), (f"poloprostory šířky {eps:g}", width_sweep)):
        steps.append({"step": f"(2) {name}",
                      "detail": f"{sweep['halfspaces']} poloprostorů, svědek {sweep['witness_branch']}, "
                                f"sběrač {sweep['collector_branch']}",
                      "result": "OK" if sweep["failures"] == 0 else f"{sweep['failures']} selhání"})

    consistency = check_collector_consistency(system, points, members)
    steps.append({"step": "Konzistence sběračů", "detail": f"{consistency['claims']} přiřazení",
                  "result": "OK" if consistency["passed"] else f"{consistency['mismatches']} neshod"})

    if check_disjointness:
        disjointness = check_witness_disjointness(system)
        steps.append({"step": "Disjunktnost svědků", "detail": f"{disjointness['pairs_tested']} dvojic",
                      "result": "OK" if disjointness["passed"] else f"{disjointness['overlaps']} překryvů"})
    else:
        disjointness = {"passed": True, "skipped": True}
        steps.append({"step": "Disjunktnost svědků", "detail": "kontrola vypnuta", "result": "SKIP"})

    in_layer = bool(all(system.witness_in_layer)) if system.witness_in_layer else True
    failures = random_sweep["failures"] + width_sweep["failures"]
    passed = property1 and failures == 0 and consistency["passed"] and disjointness["passed"] and in_layer
    report = {
        "passed": passed,
        "property1": property1,
        "failures": failures,
        "random_halfspaces": random_sweep,
        "width_halfspaces": width_sweep,
        "collector_max_points": max_points,
        "points_per_collector": per_collector.tolist(),
        "witness_in_layer": in_layer,
        "consistency": consistency,
        "disjointness": disjointness,
        "steps": steps,
    }
    level = logging.INFO if passed else logging.WARNING
    logger.log(level, f"Ověření svědků a sběračů: {'OK' if passed else 'SELHALO'}, selhání {failures}, "
                      f"max bodů ve sběrači {max_points}")
    return report
