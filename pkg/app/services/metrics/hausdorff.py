"""
Odhad Hausdorffovy vzdálenosti vnořených konvexních těles přes opěrné funkce.

Pro P ⊆ K je d_H(P, K) = max_u h_K(u) − h_P(u); maximum se hledá na kvazi-uniformní
mřížce směrů a nejhorší směry se lokálně zpřesní.
"""

import logging
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import minimize

from app.constants.construction import HAUSDORFF_DIRECTIONS, HAUSDORFF_REFINE
from app.exceptions import NotNested
from app.models.geometry import Polytope
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.geom.sampling import sphere_directions

logger = logging.getLogger(__name__)

NESTING_TOLERANCE = 1e-9
"""Tolerance příslušnosti vrcholu vnitřního polytopu k tělesu"""

CHUNK = 2048
"""Počet směrů zpracovaných najednou při výpočtu h_P"""


def polytope_support(P: Polytope, directions: np.ndarray) -> np.ndarray:
    """h_P pro matici směrů, po blocích."""
    directions = np.atleast_2d(directions)
    out = np.empty(directions.shape[0])
    for start in range(0, directions.shape[0], CHUNK):
        block = directions[start:start + CHUNK]
        out[start:start + CHUNK] = np.max(block @ P.vertices.T, axis=1)
    return out


def support_deficits(P: Polytope, K: ConvexBodyOracle, directions: np.ndarray) -> np.ndarray:
    """h_K(u) − h_P(u) pro každý směr."""
    return K.support_many(directions) - polytope_support(P, directions)


def _refine(gap: Callable[[np.ndarray], float], directions: np.ndarray, values: np.ndarray,
            refine: int) -> Tuple[float, np.ndarray]:
    """Nelder–Mead v mapě v ↦ v/|v| z `refine` nejhorších směrů."""
    best = int(np.argmax(values))
    best_value, best_dir = float(values[best]), directions[best]
    for k in np.argsort(-values)[:refine]:
        res = minimize(lambda v: -gap(v), directions[k], method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 400})
        if -res.fun > best_value:
            best_value, best_dir = float(-res.fun), res.x / np.linalg.norm(res.x)
    return best_value, best_dir


def hausdorff_inner(
    P: Polytope,
    K: ConvexBodyOracle,
    n_dirs: int = HAUSDORFF_DIRECTIONS,
    refine: int = HAUSDORFF_REFINE,
) -> float:
    """
    Hausdorffova vzdálenost vnitřního polytopu P ⊆ K.

    Raises:
        NotNested: některý vrchol P neleží v K

    Examples:
        P = K (polytop jako těleso) → 0
        osový čtverec vepsaný do jednotkového kruhu → 1 − √2/2
    """
    outside = ~K.contains_many(P.vertices, NESTING_TOLERANCE)
    if np.any(outside):
        raise NotNested(f"{int(outside.sum())} vrcholů polytopu neleží v tělese {K.body_id}")
    directions = sphere_directions(n_dirs, P.dim)
    values = support_deficits(P, K, directions)

    def gap(v):
        n = np.linalg.norm(v)
        if n == 0.0:
            return -np.inf
        u = v / n
        return K.support(u)[0] - float(np.max(P.vertices @ u))

    best, _ = _refine(gap, directions, values, refine)
    logger.debug(f"Hausdorff (vnitřní) vůči {K.body_id}: {best:.6g}")
    return max(best, 0.0)


def hausdorff_outer(
    Q: Polytope,
    K: ConvexBodyOracle,
    n_dirs: int = HAUSDORFF_DIRECTIONS,
    refine: int = HAUSDORFF_REFINE,
) -> float:
    """
    Hausdorffova vzdálenost vnějšího polytopu Q ⊇ K: max_u h_Q(u) − h_K(u).

    Raises:
        NotNested: některý vzorkovaný opěrný bod K neleží v Q
    """
    directions = sphere_directions(n_dirs, Q.dim)
    witnesses = K.support_points(directions)
    outside = ~Q.contains_many(witnesses, NESTING_TOLERANCE)
    if np.any(outside):
        raise NotNested(f"{int(outside.sum())} opěrných bodů tělesa {K.body_id} leží mimo polytop")
    values = -support_deficits(Q, K, directions)

    def gap(v):
        n = np.linalg.norm(v)
        if n == 0.0:
            return -np.inf
        u = v / n
        return float(np.max(Q.vertices @ u)) - K.support(u)[0]

    best, _ = _refine(gap, directions, values, refine)
    logger.debug(f"Hausdorff (vnější) vůči {K.body_id}: {best:.6g}")
    return max(best, 0.0)
