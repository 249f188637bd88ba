"""
Objem a těžiště polytopu ze simplexového rozkladu.

Triangulace stěn pochází z Qhull; každý simplex stěny se spojí s vnitřním bodem.
"""

from math import factorial
from typing import Tuple

import numpy as np
from scipy.spatial import ConvexHull

from app.models.geometry import Polytope


def mass_properties(P: Polytope) -> Tuple[float, np.ndarray]:
    """Vrátí (objem, těžiště) polytopu."""
    d = P.dim
    if d == 1:
        lo, hi = float(P.vertices[:, 0].min()), float(P.vertices[:, 0].max())
        return hi - lo, np.array([(lo + hi) / 2.0])

    apex = P.vertex_mean
    hull = ConvexHull(P.vertices)
    simplices = P.vertices[hull.simplices]  # (k, d, d)
    edges = simplices - apex
    volumes = np.abs(np.linalg.det(edges)) / factorial(d)
    centroids = (simplices.sum(axis=1) + apex) / (d + 1)
    total = float(volumes.sum())
    return total, (volumes[:, None] * centroids).sum(axis=0) / total


def volume(P: Polytope) -> float:
    """
    d-rozměrný objem polytopu.

    Examples:
        [−1, 1]^3 → 8; conv(0, e_1, …, e_d) → 1/d!
    """
    return P.mass[0]


def centroid(P: Polytope) -> np.ndarray:
    """Těžiště polytopu (objemově vážená těžiště simplexů)."""
    return P.mass[1]
