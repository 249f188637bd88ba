"""
Hraniční pakování Macbethových oblastí v hloubce ε.

Kandidáti (bod v hloubce ε na paprsku z počátku a jeho M^{1/20}) se generují
paralelně; přijímání je sekvenční průchod v pořadí směrů, takže výsledek závisí
jen na seedu.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import numpy as np

from app.constants.construction import COVERAGE_RAYS, DEFAULT_PACKING_DIRECTIONS, PACKING_EXPANSION, PACKING_SCALE
from app.exceptions import EpsilonTooLarge
from app.models.caps import MacbeathRegion, Packing, PackingEntry
from app.models.geometry import Polytope
from app.services.bodies.depth import point_at_depth
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.proxy import as_polytope_body
from app.services.caps.macbeath import macbeath
from app.services.construction.types import cap_type
from app.services.geom.sampling import random_directions, sphere_directions
from app.services.geom.separation import interiors_disjoint

logger = logging.getLogger(__name__)


def _candidate(body, u: np.ndarray, eps: float) -> MacbeathRegion:
    x = point_at_depth(body, u, eps)
    return macbeath(body, x, PACKING_SCALE)


def ray_hits(regions: List[Polytope], rays: np.ndarray) -> np.ndarray:
    """
    Pro každý paprsek {t·v : t ≥ 0} určí, zda protíná některý z polytopů.

    Paprsek protíná {Ay ≤ b}, pokud interval {t ≥ 0 : t·Av ≤ b} je neprázdný.
    """
    hit = np.zeros(rays.shape[0], dtype=bool)
    for P in regions:
        rates = rays @ P.normals.T
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = P.offsets / rates
        upper = np.where(rates > 0.0, ratio, np.inf).min(axis=1)
        lower = np.where(rates < 0.0, ratio, -np.inf).max(axis=1)
        feasible = np.all((rates != 0.0) | (P.offsets >= 0.0), axis=1)
        hit |= feasible & (upper >= np.maximum(lower, 0.0))
    return hit


def boundary_packing(
    K: ConvexBodyOracle,
    eps: float,
    seed: int = 0,
    n_dirs: int = DEFAULT_PACKING_DIRECTIONS,
    threads: int = 1,
    coverage_rays: int = COVERAGE_RAYS,
) -> Packing:
    """
    Maximální (vzhledem ke vzorku směrů) množina disjunktních M^{1/20}(x) s δ(x) = ε.

    Args:
        K: kanonické těleso
        eps: hloubka ε
        seed: seed pořadí směrů i kontrolních paprsků
        n_dirs: počet zkoušených směrů
        threads: počet vláken pro generování kandidátů

    Raises:
        EpsilonTooLarge: ε ≥ δ(O)/4
    """
    body = as_polytope_body(K, eps)
    inradius = body.depth(np.zeros(body.dim))
    if eps <= 0.0 or 4.0 * eps >= inradius:
        raise EpsilonTooLarge(f"ε = {eps:g} musí ležet v (0, δ(O)/4) = (0, {inradius / 4.0:g})")

    directions = sphere_directions(n_dirs, body.dim, seed)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        candidates = list(pool.map(lambda u: _candidate(body, u, eps), directions))

    entries: List[PackingEntry] = []
    rejected = 0
    scale_up = 1.0 / PACKING_SCALE
    for u, region in zip(directions, candidates):
        if all(interiors_disjoint(region.region, e.region.region) for e in entries):
            entries.append(PackingEntry(
                region=region,
                expanded=region.scaled(PACKING_EXPANSION),
                direction=u,
                volume_class=cap_type(region.volume * scale_up ** body.dim, eps, body.dim),
            ))
        else:
            rejected += 1

    rng = np.random.default_rng(seed + 1)
    rays = random_directions(coverage_rays, body.dim, rng)
    coverage = float(np.mean(ray_hits([e.expanded.region for e in entries], rays))) if entries else 0.0

    packing = Packing(entries=entries, epsilon=eps, body=K, seed=seed, n_dirs=n_dirs,
                      coverage=coverage, rejected=rejected)
    packing.steps.append({
        "step": "Hraniční pakování",
        "detail": f"ε={eps:g}, {n_dirs} směrů, seed {seed}",
        "result": f"{len(entries)} oblastí, odmítnuto {rejected}, pokrytí paprsků {coverage:.4f}",
    })
    logger.info(f"Pakování {K.body_id} při ε={eps:g}: {len(entries)} oblastí, pokrytí {coverage:.4f}")
    return packing


def volume_histogram(pack: Packing, eps: Optional[float] = None) -> Dict[int, int]:
    """
    Počty položek podle dyadické třídy objemu M(x) = 20^d·vol(M^{1/20}(x)).

    Examples:
        prázdné pakování → {}
    """
    if not pack.entries:
        return {}
    eps = pack.epsilon if eps is None else eps
    d = pack.body.dim
    counts = Counter(cap_type(e.region.unit_volume, eps, d) for e in pack.entries)
    return dict(sorted(counts.items()))
