"""
Polára duální čepičky (d−1)-rozměrného tělesa vzhledem k bodu na svislém paprsku.
"""

import logging

import numpy as np
from scipy.spatial import cKDTree

from app.constants.construction import DUAL_CAP_TOLERANCE
from app.constants.geometry import BOUNDARY_DEPTH
from app.exceptions import GeometryInvalid
from app.models.polar import DualCapPolar
from app.services.geom.hull import convex_hull, halfspace_intersection
from app.services.geom.transform import scale_about
from app.services.polar.duality import polar_body

logger = logging.getLogger(__name__)

HEIGHT_TOLERANCE = 1e-12
"""Povolený rozdíl výšek vrcholů tělesa v jedné vodorovné nadrovině"""


def _matching_error(P: np.ndarray, Q: np.ndarray) -> float:
    """Hausdorffova vzdálenost konečných množin vrcholů."""
    return float(max(cKDTree(Q).query(P)[0].max(), cKDTree(P).query(Q)[0].max()))


def dual_cap_polar(K_flat, z, x) -> DualCapPolar:
    """
    G = {w : ⟨w, z⟩ = 1, ⟨w, p⟩ ≤ 1 pro vrcholy p} a porovnání G − h* s α·K̄*.

    Args:
        K_flat: vrcholy (d−1)-rozměrného tělesa v R^d na nadrovině x_d = h₀ > 0
        z: bod na svislém paprsku z počátku nad nadrovinou
        x: průsečík úsečky Oz s nadrovinou, musí ležet uvnitř tělesa

    Raises:
        GeometryInvalid: body neleží v jedné vodorovné nadrovině, z není na svislém
            paprsku nad ní nebo x není vnitřní bod tělesa

    Examples:
        úsečka [(−1, 1), (1, 1)], z = (0, 2), x = (0, 1) → α = 1/2, G − h* = [−1/2, 1/2]
    """
    points = np.atleast_2d(np.asarray(K_flat, dtype=float))
    z = np.asarray(z, dtype=float)
    x = np.asarray(x, dtype=float)
    d = points.shape[1]
    height = float(points[0, -1])
    if height <= 0.0 or np.any(np.abs(points[:, -1] - height) > HEIGHT_TOLERANCE):
        raise GeometryInvalid("Vrcholy tělesa musí ležet v jedné vodorovné nadrovině nad počátkem")
    if np.linalg.norm(z[:-1]) > HEIGHT_TOLERANCE or z[-1] <= height:
        raise GeometryInvalid(f"Bod z = {z} neleží na svislém paprsku nad nadrovinou tělesa")
    if np.linalg.norm(x - z * height / z[-1]) > HEIGHT_TOLERANCE:
        raise GeometryInvalid(f"Bod x = {x} není průsečíkem úsečky Oz s nadrovinou tělesa")

    base = convex_hull(points[:, :-1])
    if np.min(base.slack(x[:-1])) <= BOUNDARY_DEPTH:
        raise GeometryInvalid(f"Bod x = {x} neleží ve vnitřku tělesa")

    # w = (s, 1/ζ) probíhá nadrovinu z*; h* = (0, 1/ζ)
    w_last = 1.0 / z[-1]
    G = halfspace_intersection((points[:, :-1], 1.0 - points[:, -1] * w_last), interior=np.zeros(d - 1))

    alpha = float(np.linalg.norm(z - x) / np.linalg.norm(z))
    expected = scale_about(polar_body(base, center=np.zeros(d - 1)).polar, alpha, np.zeros(d - 1))
    error = _matching_error(G.vertices, expected.vertices)
    if error > DUAL_CAP_TOLERANCE:
        logger.warning(f"Polára duální čepičky: odchylka vrcholů {error:.3g} > {DUAL_CAP_TOLERANCE:g}")
    return DualCapPolar(
        base_body=base,
        height=height,
        viewpoint=z,
        crossing=x,
        G=G,
        alpha=alpha,
        expected=expected,
        max_error=error,
    )
