"""
Hloubka bodu v tělese: δ(x), ray(x) a bod v zadané hloubce.
"""

import numpy as np

from app.constants.geometry import DEPTH_TOLERANCE
from app.exceptions import DepthTooLarge, GeometryInvalid, OriginQuery, OutsideBody
from app.services.bodies.oracle import ConvexBodyOracle

MAX_DEPTH_BISECTIONS = 200
"""Strop půlení v point_at_depth"""


def delta(K: ConvexBodyOracle, x) -> float:
    """
    Vzdálenost bodu x ∈ K k hranici ∂K.

    Raises:
        OutsideBody: x neleží v K

    Examples:
        koule poloměru 1, x = 0 → 1
        kvádr [−1, 1]³, x = (1 − ε, 0, 0) → ε
    """
    x = np.asarray(x, dtype=float)
    if not K.contains(x):
        raise OutsideBody(f"Bod {x} neleží v tělese {K.body_id}")
    return K.depth(x)


def ray_distance(K: ConvexBodyOracle, x) -> float:
    """
    ray(x): vzdálenost od x k hranici podél paprsku z počátku přes x.

    Pro kanonické těleso platí δ(x) ≤ ray(x) ≤ δ(x)/γ.
    """
    x = np.asarray(x, dtype=float)
    norm = float(np.linalg.norm(x))
    if norm <= 1e-15:
        raise OriginQuery("ray(x) není definováno v počátku")
    if not K.contains(x):
        raise OutsideBody(f"Bod {x} neleží v tělese {K.body_id}")
    boundary = K.boundary_ray(np.zeros(K.dim), x / norm)
    return float(np.linalg.norm(boundary - x))


def point_at_depth(K: ConvexBodyOracle, u, depth: float) -> np.ndarray:
    """
    Bod na paprsku {t·u : t ≥ 0} s δ = depth.

    δ je na paprsku konkávní a na hranici nulová, takže za δ(O) klesá monotónně
    a půlení v t najde jediný průsečík.

    Raises:
        DepthTooLarge: depth ≥ δ(O)
    """
    if depth <= 0.0:
        raise GeometryInvalid(f"Hloubka musí být kladná (dostáno {depth})")
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    origin_depth = delta(K, np.zeros(K.dim))
    if depth >= origin_depth:
        raise DepthTooLarge(f"Hloubka {depth:g} ≥ δ(O) = {origin_depth:g} v tělese {K.body_id}")

    lo = 0.0
    hi = float(np.linalg.norm(K.boundary_ray(np.zeros(K.dim), u)))
    for _ in range(MAX_DEPTH_BISECTIONS):
        mid = 0.5 * (lo + hi)
        value = K.depth(mid * u)
        if abs(value - depth) <= DEPTH_TOLERANCE * 0.1:
            return mid * u
        if value > depth:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return 0.5 * (lo + hi) * u
