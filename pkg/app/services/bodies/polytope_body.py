"""
Polytop jako konvexní těleso: přesná opěrná funkce přes vrcholy a hloubka přes stěny.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from app.constants.geometry import INCIDENCE_TOLERANCE, NORMAL_TOLERANCE
from app.exceptions import OutsideBody
from app.models.geometry import AffineMap, Polytope
from app.services.bodies.oracle import ConvexBodyOracle

SUPPORT_CHUNK = 4096
"""Počet směrů vyhodnocených najednou při vektorizované opěrné funkci"""


class PolytopeBody(ConvexBodyOracle):
    """Těleso dané polytopem (vrcholy + H-reprezentace)."""

    kind = "polytope"

    def __init__(self, polytope: Polytope, body_id: Optional[str] = None):
        super().__init__(polytope.dim, body_id)
        self.polytope = polytope

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return self.polytope.contains(x, tol)

    def contains_many(self, points, tol: float = INCIDENCE_TOLERANCE) -> np.ndarray:
        return self.polytope.contains_many(points, tol)

    def support(self, u) -> Tuple[float, np.ndarray]:
        return self.polytope.support(u)

    def support_many(self, directions) -> np.ndarray:
        U = np.atleast_2d(directions)
        out = np.empty(U.shape[0])
        for start in range(0, U.shape[0], SUPPORT_CHUNK):
            out[start:start + SUPPORT_CHUNK] = np.max(U[start:start + SUPPORT_CHUNK] @ self.polytope.vertices.T, axis=1)
        return out

    def support_points(self, directions) -> np.ndarray:
        U = np.atleast_2d(directions)
        idx = np.concatenate([
            np.argmax(U[start:start + SUPPORT_CHUNK] @ self.polytope.vertices.T, axis=1)
            for start in range(0, U.shape[0], SUPPORT_CHUNK)
        ]) if U.shape[0] else np.zeros(0, dtype=int)
        return self.polytope.vertices[idx]

    def boundary_ray(self, x0, u) -> np.ndarray:
        """Uzavřený tvar: t = min přes stěny s ⟨a, u⟩ > 0 hodnoty (b − ⟨a, x0⟩)/⟨a, u⟩."""
        x0 = np.asarray(x0, dtype=float)
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        if not self.contains(x0):
            raise OutsideBody(f"Počátek paprsku {x0} neleží v polytopu {self.body_id}")
        rates = self.polytope.normals @ u
        slack = np.maximum(self.polytope.slack(x0), 0.0)
        ahead = rates > NORMAL_TOLERANCE
        return x0 + float(np.min(slack[ahead] / rates[ahead])) * u

    def depth(self, x) -> float:
        return max(float(np.min(self.polytope.slack(x))), 0.0)

    def gauge(self, x) -> float:
        """max_i ⟨a_i, x⟩ / b_i (počátek musí být vnitřní, tj. b > 0)."""
        if np.any(self.polytope.offsets <= 0.0):
            return super().gauge(x)
        return max(float(np.max(self.polytope.normals @ np.asarray(x, dtype=float) / self.polytope.offsets)), 0.0)

    def exact_polytope(self) -> Polytope:
        return self.polytope

    def transformed(self, T: AffineMap) -> "PolytopeBody":
        from app.services.geom.transform import apply_map

        return PolytopeBody(apply_map(T, self.polytope), f"{self.body_id}@T")

    def spec(self) -> Dict:
        return {"type": "polytope", "dim": self.dim, "id": self.body_id,
                "vertices": self.polytope.vertices.tolist()}


def random_polytope(n_vertices: int, d: int, seed: int = 0, body_id: Optional[str] = None) -> PolytopeBody:
    """
    Náhodný polytop: obal n bodů rovnoměrně na jednotkové sféře (každý bod je vrcholem).
    """
    from app.services.geom.hull import convex_hull
    from app.services.geom.sampling import random_directions

    rng = np.random.default_rng(seed)
    points = random_directions(n_vertices, d, rng)
    return PolytopeBody(convex_hull(points), body_id or f"polytope-n{n_vertices}-d{d}-s{seed}")
