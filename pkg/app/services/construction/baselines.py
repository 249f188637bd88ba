"""
Základní metody: Dudleyho vnější a Bronštejnova–Ivanovova vnitřní aproximace.
"""

import logging
import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import cKDTree

from app.constants.construction import BASELINE_REFINE_ROUNDS
from app.exceptions import NotConverged, Unbounded
from app.models.geometry import Polytope
from app.models.settings import ApproximationSettings
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.geom.hull import convex_hull, halfspace_intersection
from app.services.geom.sampling import sphere_directions, unit
from app.services.metrics.hausdorff import hausdorff_inner, hausdorff_outer

logger = logging.getLogger(__name__)

DUDLEY_RADIUS = 2.0
"""Poloměr opsané sféry, na které leží Dudleyho body"""

NET_SHRINK = 0.8
"""Zmenšení δ sítě, pokud aproximace nevyhoví"""

NET_OVERSAMPLING = 16
"""Počet hraničních vzorků na buňku sítě"""


def _nearest_normal(K: ConvexBodyOracle, q: np.ndarray) -> np.ndarray:
    """
    Normála v nejbližším bodě K k vnějšímu bodu q: argmax_{|n|=1} ⟨n, q⟩ − h_K(n).
    """
    def objective(v):
        n = np.linalg.norm(v)
        if n == 0.0:
            return np.inf
        u = v / n
        return K.support(u)[0] - float(u @ q)

    start = unit(q)
    res = minimize(objective, start, method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 200 * K.dim})
    return unit(res.x) if res.fun <= objective(start) else start


def dudley_count(eps: float, d: int) -> int:
    """Výchozí počet bodů ⌈(2/ε)^{(d−1)/2}⌉, alespoň 2d."""
    return max(2 * d, int(math.ceil((2.0 / eps) ** ((d - 1) / 2.0))))


def dudley(
    K: ConvexBodyOracle,
    eps: float,
    settings: Optional[ApproximationSettings] = None,
    seed: Optional[int] = None,
) -> Tuple[Polytope, Dict]:
    """
    Vnější ε-aproximace: tečné poloprostory v průmětech bodů sféry poloměru 2.

    Počet bodů se zdvojnásobuje, dokud vnější Hausdorffova vzdálenost nevyhoví.

    Returns:
        (Q ⊇ K, statistiky {points, facets, hausdorff, rounds})

    Raises:
        NotConverged: ani po BASELINE_REFINE_ROUNDS zdvojeních Q nevyhoví
    """
    settings = settings or ApproximationSettings()
    d = K.dim
    n = dudley_count(eps, d)
    for rounds in range(1, BASELINE_REFINE_ROUNDS + 1):
        points = DUDLEY_RADIUS * sphere_directions(n, d, seed)
        normals = np.array([_nearest_normal(K, q) for q in points])
        offsets = K.support_many(normals)
        try:
            Q = halfspace_intersection((normals, offsets), interior=np.zeros(d))
        except Unbounded:
            n *= 2
            continue
        error = hausdorff_outer(Q, K, settings.hausdorff_dirs, settings.hausdorff_refine)
        logger.debug(f"Dudley {K.body_id}: {n} bodů, {Q.n_facets} stěn, chyba {error:.4g}")
        if error <= eps:
            return Q, {"points": n, "facets": Q.n_facets, "hausdorff": error, "rounds": rounds}
        n *= 2
    raise NotConverged(f"Dudleyho aproximace {K.body_id} nedosáhla ε = {eps:g} ani s {n // 2} body")


def boundary_samples(K: ConvexBodyOracle, n: int) -> np.ndarray:
    """Body hranice na paprscích z počátku v n kvazi-uniformních směrech."""
    origin = np.zeros(K.dim)
    return np.array([K.boundary_ray(origin, u) for u in sphere_directions(n, K.dim)])


def delta_net(points: np.ndarray, delta: float) -> np.ndarray:
    """
    Hladová δ-síť: bod se ponechá, pokud žádný ponechaný není blíž než δ.

    Examples:
        body po 0.1 na úsečce, δ = 0.25 → každý třetí bod
    """
    tree = cKDTree(points)
    covered = np.zeros(points.shape[0], dtype=bool)
    kept = []
    for i in range(points.shape[0]):
        if covered[i]:
            continue
        kept.append(i)
        covered[tree.query_ball_point(points[i], delta)] = True
    return points[kept]


def bronshteyn_ivanov(
    K: ConvexBodyOracle,
    eps: float,
    settings: Optional[ApproximationSettings] = None,
) -> Tuple[Polytope, Dict]:
    """
    Vnitřní ε-aproximace: konvexní obal δ-sítě na hranici s δ = √(8ε).

    δ se zmenšuje faktorem NET_SHRINK, dokud vnitřní Hausdorffova vzdálenost nevyhoví.

    Returns:
        (P ⊆ K, statistiky {delta, samples, vertices, hausdorff, rounds})

    Raises:
        NotConverged: ani po BASELINE_REFINE_ROUNDS zmenšeních P nevyhoví
    """
    settings = settings or ApproximationSettings()
    d = K.dim
    delta = math.sqrt(8.0 * eps)
    for rounds in range(1, BASELINE_REFINE_ROUNDS + 1):
        n = int(min(NET_OVERSAMPLING * (4.0 / delta) ** (d - 1), settings.proxy_max_points))
        samples = boundary_samples(K, max(n, 4 * d))
        net = delta_net(samples, delta)
        if net.shape[0] > d:
            P = convex_hull(net)
            error = hausdorff_inner(P, K, settings.hausdorff_dirs, settings.hausdorff_refine)
            logger.debug(f"B–I {K.body_id}: δ={delta:.4g}, {P.n_vertices} vrcholů, chyba {error:.4g}")
            if error <= eps:
                return P, {"delta": delta, "samples": samples.shape[0], "vertices": P.n_vertices,
                           "hausdorff": error, "rounds": rounds}
        delta *= NET_SHRINK
    raise NotConverged(f"Aproximace B–I {K.body_id} nedosáhla ε = {eps:g}")
