"""
Minimální čepička bodu: čepička nejmenšího objemu, jejíž báze prochází bodem x.
"""

import logging
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from app.constants.construction import (
    MINCAP_CENTROID_TOLERANCE,
    MINCAP_DIRECTIONS_HIGH,
    MINCAP_DIRECTIONS_LOW,
)
from app.models.caps import Cap
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.polytope_body import PolytopeBody
from app.services.bodies.proxy import as_polytope_body
from app.services.caps.cap import cap_through
from app.services.geom.sampling import sphere_directions, unit

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-12
"""Relativní rozdíl objemů, pod kterým se čepičky považují za stejně velké"""


def grid_size(d: int) -> int:
    return MINCAP_DIRECTIONS_LOW if d <= 3 else MINCAP_DIRECTIONS_HIGH


def minimal_cap(K: ConvexBodyOracle, x, n_grid: Optional[int] = None) -> Cap:
    """
    Minimální čepička bodu x.

    Hrubá mřížka směrů, Nelder–Mead zpřesnění v mapě v ↦ v/|v| a při shodě objemů
    lexikograficky nejmenší směr.

    Examples:
        koule, x = (1 − ε)e_1 → čepička kolmá na e_1 šířky ε
    """
    x = np.asarray(x, dtype=float)
    body = K if isinstance(K, PolytopeBody) else as_polytope_body(K, K.depth(x))
    directions = sphere_directions(n_grid or grid_size(K.dim), K.dim)
    volumes = np.array([cap_through(body, u, x).volume for u in directions])

    best_volume = float(volumes.min())
    ties = np.flatnonzero(volumes <= best_volume * (1.0 + TIE_TOLERANCE))
    start = min((directions[k] for k in ties), key=lambda v: tuple(v))

    def objective(v):
        n = np.linalg.norm(v)
        return np.inf if n == 0.0 else cap_through(body, v / n, x).volume

    res = minimize(objective, start, method="Nelder-Mead", options={"xatol": 1e-8, "fatol": 1e-14, "maxiter": 600})
    u = unit(res.x) if res.fun < best_volume * (1.0 - TIE_TOLERANCE) else start
    cap = cap_through(body, u, x)

    drift = float(np.linalg.norm(cap.base_centroid - x))
    if cap.width > 0.0 and drift > MINCAP_CENTROID_TOLERANCE * cap.width:
        logger.debug(f"Těžiště báze minimální čepičky je {drift:.3g} od x (šířka {cap.width:.3g})")
    return cap


def centroid_drift(cap: Cap, x) -> float:
    """Vzdálenost těžiště báze od x relativně k šířce čepičky."""
    return float(np.linalg.norm(cap.base_centroid - np.asarray(x, dtype=float)) / cap.width)
