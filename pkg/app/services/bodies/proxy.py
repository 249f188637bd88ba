"""
Polytopový zástupce hladkého tělesa pro konstrukci čepiček.
"""

import logging
from typing import Tuple

import numpy as np

from app.constants.construction import PROXY_ERROR_FRACTION, PROXY_MAX_POINTS
from app.models.geometry import Polytope
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.geom.hull import convex_hull
from app.services.geom.sampling import sphere_directions

logger = logging.getLogger(__name__)

PROXY_CHECK_DIRECTIONS = 2000
"""Směry pro odhad chyby zástupce (max deficit opěrné funkce)"""


def support_deficit(K: ConvexBodyOracle, P: Polytope, n_directions: int = PROXY_CHECK_DIRECTIONS) -> float:
    """max_u h_K(u) − h_P(u) na kvazi-uniformních směrech posunutých vůči mřížce zástupce."""
    directions = sphere_directions(n_directions, K.dim, seed=11)
    h_P = np.max(directions @ P.vertices.T, axis=1)
    return max(float(np.max(K.support_many(directions) - h_P)), 0.0)


def polytopal_proxy(
    K: ConvexBodyOracle,
    eps: float,
    max_points: int = PROXY_MAX_POINTS,
    error_fraction: float = PROXY_ERROR_FRACTION,
) -> Tuple[Polytope, float]:
    """
    Vnitřní polytop P ⊆ K s Hausdorffovou chybou nejvýše error_fraction·ε.

    Počet směrů začíná na 64·(10/ε)^((d−1)/2) a zdvojnásobuje se, dokud odhad chyby
    nevyhoví nebo se nedosáhne max_points.

    Returns:
        (P, odhad chyby)
    """
    exact = K.exact_polytope()
    if exact is not None:
        return exact, 0.0

    target = error_fraction * eps
    n = K.proxy_size(eps, max_points)
    while True:
        directions = sphere_directions(n, K.dim)
        P = convex_hull(K.support_points(directions))
        error = support_deficit(K, P)
        if error <= target or n >= max_points:
            break
        n = min(2 * n, max_points)
    if error > target:
        logger.warning(f"Zástupce {K.body_id}: chyba {error:.3g} > {target:.3g} při stropu {max_points} bodů")
    logger.debug(f"Zástupce {K.body_id}: {P.n_vertices} vrcholů, chyba {error:.3g}")
    return P, error


def as_polytope_body(K: ConvexBodyOracle, eps: float, max_points: int = PROXY_MAX_POINTS):
    """
    Polytopový pohled na těleso: polytopová tělesa beze změny, ostatní přes zástupce.

    Zástupce se ukládá na těleso podle počtu směrů, takže opakované dotazy se stejným ε
    sdílejí jeden obal.
    """
    from app.services.bodies.polytope_body import PolytopeBody

    if isinstance(K, PolytopeBody):
        return K
    exact = K.exact_polytope()
    if exact is not None:
        return PolytopeBody(exact, K.body_id)
    cache = K.__dict__.setdefault("_proxy_cache", {})
    key = K.proxy_size(eps, max_points)
    if key not in cache:
        P, _ = polytopal_proxy(K, eps, max_points)
        cache[key] = PolytopeBody(P, f"{K.body_id}~proxy")
    return cache[key]
