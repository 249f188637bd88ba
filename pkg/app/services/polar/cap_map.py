"""
Zobrazení π mezi čepičkami tělesa a jeho poláry a součiny objemů čepiček.

Vše se počítá na polytopových zástupcích; polára se bere vzhledem k počátku,
který je u kanonického tělesa středem.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import numpy as np

from app.constants.construction import DEFAULT_POLAR_C, POLAR_GRID, PROXY_MAX_POINTS
from app.exceptions import GeometryInvalid
from app.models.caps import Cap
from app.models.polar import BaseSandwich, CapProductRecord
from app.models.settings import ApproximationSettings
from app.services.bodies.depth import point_at_depth
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.polytope_body import PolytopeBody
from app.services.bodies.proxy import as_polytope_body
from app.services.caps.cap import make_cap
from app.services.caps.macbeath import shrunken_macbeath
from app.services.caps.minimal import minimal_cap
from app.services.geom.sampling import sphere_directions, unit, vertical_frame
from app.services.polar.duality import polar_body, polar_in_hyperplane

logger = logging.getLogger(__name__)


def polar_proxy(K: ConvexBodyOracle, eps: float, max_points: int = PROXY_MAX_POINTS) -> PolytopeBody:
    """
    K* jako polytopové těleso (polára zástupce K vzhledem k počátku).

    Ukládá se na těleso podle počtu vrcholů zástupce.
    """
    body = as_polytope_body(K, eps, max_points)
    cache = K.__dict__.setdefault("_polar_cache", {})
    key = body.polytope.n_vertices
    if key not in cache:
        pair = polar_body(body.polytope, center=np.zeros(K.dim))
        cache[key] = PolytopeBody(pair.polar, f"{K.body_id}*")
        logger.debug(f"Polára {K.body_id}: {pair.polar.n_vertices} vrcholů, {pair.polar.n_facets} stěn")
    return cache[key]


def pi_map(K: ConvexBodyOracle, C: Cap, c: float = DEFAULT_POLAR_C, n_grid: Optional[int] = None) -> Cap:
    """
    π(C): minimální čepička K* obsahující bod x na paprsku normály C s δ(x) = ε/c.

    Args:
        K: kanonické těleso
        C: čepička K šířky ε
        c: konstanta zobrazení
        n_grid: hrubá mřížka minimální čepičky (výchozí POLAR_GRID)

    Examples:
        krychle, C = deska s normálou e₁ → π(C) leží u vrcholu e₁ oktaedru
    """
    polar = polar_proxy(K, C.width)
    x = point_at_depth(polar, C.direction, C.width / c)
    return minimal_cap(polar, x, n_grid or POLAR_GRID)


def _record(C: Cap, eps: float, other_volume: float) -> CapProductRecord:
    product = C.volume * other_volume
    return CapProductRecord(
        direction=C.direction,
        eps=eps,
        cap_volume=float(C.volume),
        polar_cap_volume=float(other_volume),
        normalized_product=float(product / eps ** (C.dim + 1)),
    )


def mahler_cap_product(K: ConvexBodyOracle, u, eps: float, c: float = DEFAULT_POLAR_C,
                       n_grid: Optional[int] = None) -> CapProductRecord:
    """
    vol(C)·vol(π(C)) pro čepičku šířky ε ve směru u, normováno ε^{d+1}.

    Examples:
        koule d=2: normované hodnoty všech směrů se shodují
    """
    C = make_cap(K, unit(u), eps)
    return _record(C, eps, pi_map(K, C, c, n_grid).volume)


def macbeath_cap_product(K: ConvexBodyOracle, u, eps: float, c: float = DEFAULT_POLAR_C) -> CapProductRecord:
    """vol(C)·vol(M′(y)), y bod K* na paprsku normály s δ(y) = ε/c; normováno ε^{d+1}."""
    C = make_cap(K, unit(u), eps)
    polar = polar_proxy(K, eps)
    y = point_at_depth(polar, C.direction, eps / c)
    return _record(C, eps, shrunken_macbeath(polar, y).volume)


def base_sandwich(K: ConvexBodyOracle, u, eps: float, c: float = DEFAULT_POLAR_C,
                  n_grid: Optional[int] = None) -> BaseSandwich:
    """
    Největší s₁ a nejmenší s₂ se s₁X* ⊆ base(C) − h* ⊆ s₂X*.

    Báze se porovnávají ve vodorovných souřadnicích vertikálního rámce směru u, kde
    h* (polára roviny báze) leží v počátku. X je svislý průmět base(π(C)), X* jeho
    polára vzhledem k vlastnímu těžišti.

    Raises:
        GeometryInvalid: počátek neleží uvnitř báze nebo je báze π(C) degenerovaná
    """
    from app.services.geom.hull import convex_hull

    C = make_cap(K, unit(u), eps)
    image = pi_map(K, C, c, n_grid)
    if image.base_volume <= 0.0 or C.base_volume <= 0.0:
        raise GeometryInvalid(f"Degenerovaná báze čepičky ve směru {C.direction}")
    R = vertical_frame(C.direction)
    d = K.dim
    B = convex_hull(C.base_coords)
    if np.min(B.offsets) <= 0.0:
        raise GeometryInvalid(f"Svislá osa neprochází vnitřkem báze čepičky ve směru {C.direction}")
    X_star = polar_in_hyperplane((image.base_vertices @ R.T)[:, : d - 1])

    reach = np.max(B.normals @ X_star.vertices.T, axis=1)
    s1 = float(np.min(B.offsets / reach))
    s2 = float(np.max(B.vertices @ X_star.normals.T / X_star.offsets))
    return BaseSandwich(direction=C.direction, eps=eps, s1=s1, s2=s2)


def cap_product_sweep(
    K: ConvexBodyOracle,
    eps: float,
    n_dirs: int,
    settings: Optional[ApproximationSettings] = None,
    seed: int = 0,
    kind: str = "mahler",
) -> List[CapProductRecord]:
    """
    Součiny čepiček pro n_dirs kvazi-uniformních směrů, paralelně, v pořadí směrů.

    Args:
        kind: "mahler" (π(C)) nebo "macbeath" (M′(y))
    """
    settings = settings or ApproximationSettings()
    directions = sphere_directions(n_dirs, K.dim, seed)
    polar_proxy(K, eps, settings.proxy_max_points)
    if kind == "mahler":
        task = lambda u: mahler_cap_product(K, u, eps, settings.polar_c)  # noqa: E731
    elif kind == "macbeath":
        task = lambda u: macbeath_cap_product(K, u, eps, settings.polar_c)  # noqa: E731
    else:
        raise GeometryInvalid(f"Neznámý druh součinu čepiček: {kind}")
    with ThreadPoolExecutor(max_workers=max(1, settings.threads)) as pool:
        records = list(pool.map(task, directions))
    values = np.array([r.normalized_product for r in records])
    logger.info(f"Součiny čepiček {K.body_id} ({kind}) při ε={eps:g}: {n_dirs} směrů, "
                f"medián {np.median(values):.4g}, max/min {values.max() / values.min():.3g}")
    return records


def product_summary(records: List[CapProductRecord]) -> Dict:
    """Souhrn sweepu: min, medián, max a poměr max/min normovaných součinů."""
    values = np.array([r.normalized_product for r in records])
    return {
        "directions": int(values.shape[0]),
        "min": float(values.min()),
        "median": float(np.median(values)),
        "max": float(values.max()),
        "spread": float(values.max() / values.min()),
    }
