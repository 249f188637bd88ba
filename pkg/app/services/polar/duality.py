"""
Polarita: polára polytopu, bodu a nadroviny, Mahlerův objem.

K* = {y : ⟨y, v⟩ ≤ 1 pro všechna v ∈ K}; pro polytop stačí vrcholy.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.special import gamma as gamma_function

from app.constants.geometry import BOUNDARY_DEPTH
from app.exceptions import CenterNotInterior, OriginPolar
from app.models.geometry import Halfspace, Polytope
from app.models.polar import PolarPair
from app.services.geom.hull import halfspace_intersection

logger = logging.getLogger(__name__)

ORIGIN_TOLERANCE = 1e-15
"""Norma, pod kterou je bod považován za počátek"""


def polar_body(P: Polytope, center=None) -> PolarPair:
    """
    Polára polytopu vzhledem ke středu (výchozí těžiště).

    Raises:
        CenterNotInterior: střed neleží striktně uvnitř P

    Examples:
        čtverec [−1, 1]² kolem 0 → conv(±e₁, ±e₂)
    """
    center = P.mass[1] if center is None else np.asarray(center, dtype=float)
    slack = P.slack(center)
    if np.min(slack) <= BOUNDARY_DEPTH:
        raise CenterNotInterior(f"Střed polarity {center} neleží ve vnitřku polytopu (rezerva {np.min(slack):.3g})")
    shifted = P.vertices - center
    polar = halfspace_intersection((shifted, np.ones(shifted.shape[0])), interior=np.zeros(P.dim))
    return PolarPair(primal=P, polar=polar, center=center)


def polar_point(v) -> Halfspace:
    """
    Polára bodu v ≠ O: poloprostor {x : ⟨v, x⟩ ≤ 1}, hranice ve vzdálenosti 1/‖v‖.

    Examples:
        v = (2, 0) → nadrovina x₁ = 1/2
    """
    v = np.asarray(v, dtype=float)
    if np.linalg.norm(v) <= ORIGIN_TOLERANCE:
        raise OriginPolar("Polára počátku není definována")
    return Halfspace.from_vector(v, 1.0)


def polar_hyperplane(h: Halfspace) -> np.ndarray:
    """Polára nadroviny {⟨u, x⟩ = b}, b ≠ 0: bod u/b."""
    if abs(h.offset) <= ORIGIN_TOLERANCE:
        raise OriginPolar("Polára nadroviny procházející počátkem není definována")
    return h.normal / h.offset


def mahler(P: Polytope) -> float:
    """
    Mahlerův objem vol(P)·vol(P*) vzhledem k těžišti.

    Examples:
        čtverec: 4 × 2 = 8
    """
    value = P.mass[0] * polar_body(P).polar.mass[0]
    logger.debug(f"Mahlerův objem: {value:.6g}")
    return float(value)


def unit_ball_volume(d: int) -> float:
    """κ_d = π^{d/2}/Γ(d/2 + 1)."""
    return float(math.pi ** (d / 2.0) / gamma_function(d / 2.0 + 1.0))


def mahler_band(d: int) -> Tuple[float, float]:
    """Přípustný interval Mahlerova objemu [κ_d²/d^d·0.5, κ_d²·d^d·2]."""
    kappa = unit_ball_volume(d)
    return kappa**2 / d**d * 0.5, kappa**2 * d**d * 2.0


def polar_in_hyperplane(points: np.ndarray, center: Optional[np.ndarray] = None) -> Polytope:
    """Polára konvexního obalu bodů (libovolné dimenze ≥ 1) vzhledem k těžišti nebo středu."""
    from app.services.geom.hull import convex_hull

    return polar_body(convex_hull(points), center).polar
