"""
Afinní obraz tělesa T(K) nad orákulem původního tělesa.
"""

from typing import Dict, Optional, Tuple

import numpy as np

from app.constants.geometry import INCIDENCE_TOLERANCE
from app.exceptions import OutsideBody
from app.models.geometry import AffineMap, Polytope
from app.services.bodies.oracle import ConvexBodyOracle


class TransformedBody(ConvexBodyOracle):
    """
    Těleso T(K) pro T(x) = Mx + t.

    Opěrná funkce: h_{T(K)}(u) = h_K(Mᵀu) + ⟨u, t⟩; příslušnost přes T⁻¹.
    """

    kind = "transformed"

    def __init__(self, T: AffineMap, body: ConvexBodyOracle, body_id: Optional[str] = None):
        super().__init__(body.dim, body_id or f"{body.body_id}@T")
        self.map = T
        self.inverse = T.inverse()
        self.body = body

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return self.body.contains(self.inverse(np.asarray(x, dtype=float)), tol)

    def contains_many(self, points, tol: float = INCIDENCE_TOLERANCE) -> np.ndarray:
        return self.body.contains_many(self.inverse(np.atleast_2d(points)), tol)

    def _pulled_back(self, U: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        V = U @ self.map.linear
        norms = np.linalg.norm(V, axis=1)
        return V / norms[:, None], norms

    def support(self, u) -> Tuple[float, np.ndarray]:
        u = np.asarray(u, dtype=float)
        V, norms = self._pulled_back(u[None, :])
        value, point = self.body.support(V[0])
        return float(norms[0] * value + u @ self.map.translation), self.map(point)

    def support_many(self, directions) -> np.ndarray:
        U = np.atleast_2d(directions)
        V, norms = self._pulled_back(U)
        return norms * self.body.support_many(V) + U @ self.map.translation

    def support_points(self, directions) -> np.ndarray:
        V, _ = self._pulled_back(np.atleast_2d(directions))
        return self.map(self.body.support_points(V))

    def boundary_ray(self, x0, u) -> np.ndarray:
        x0 = np.asarray(x0, dtype=float)
        if not self.contains(x0):
            raise OutsideBody(f"Počátek paprsku {x0} neleží v tělese {self.body_id}")
        y0 = self.inverse(x0)
        v = self.map.inverse_linear @ np.asarray(u, dtype=float)
        return self.map(self.body.boundary_ray(y0, v / np.linalg.norm(v)))

    def transformed(self, T: AffineMap) -> ConvexBodyOracle:
        return TransformedBody(T.compose(self.map), self.body, f"{self.body_id}@T")

    def exact_polytope(self) -> Optional[Polytope]:
        inner = self.body.exact_polytope()
        if inner is None:
            return None
        from app.services.geom.transform import apply_map

        return apply_map(self.map, inner)

    def analytic_john(self):
        """Johnův elipsoid je afinně ekvivariantní: J(T(K)) = T(J(K))."""
        inner = self.body.analytic_john()
        return None if inner is None else inner.transformed(self.map)

    def spec(self) -> Dict:
        return {"type": "transformed", "dim": self.dim, "id": self.body_id,
                "linear": self.map.linear.tolist(), "translation": self.map.translation.tolist(),
                "body": self.body.spec()}
