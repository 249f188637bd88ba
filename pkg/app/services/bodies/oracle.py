"""
Rozhraní orákula konvexního tělesa.

Každé těleso poskytuje příslušnost, opěrnou funkci a průsečík paprsku s hranicí.
Odvozené operace (hloubka, gauge, polytopový zástupce) mají obecnou implementaci
nad těmito třemi dotazy; konkrétní tělesa je přepisují analytickými vzorci.
"""

import logging
from abc import ABC, abstractmethod
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from app.constants.construction import PROXY_BASE_POINTS, PROXY_MAX_POINTS
from app.constants.geometry import (
    BISECTION_EARLY_EXIT,
    BISECTION_ITERATIONS,
    DELTA_GRID_DIRECTIONS,
    INCIDENCE_TOLERANCE,
    MAX_DIMENSION,
    MIN_DIMENSION,
)
from app.exceptions import DimensionError, OutsideBody
from app.models.geometry import AffineMap, Polytope
from app.services.geom.sampling import sphere_directions

logger = logging.getLogger(__name__)


def check_body_dimension(d: int) -> None:
    if d < MIN_DIMENSION or d > MAX_DIMENSION:
        raise DimensionError(f"Nepodporovaná dimenze tělesa: {d} (povoleno {MIN_DIMENSION}..{MAX_DIMENSION})")


class ConvexBodyOracle(ABC):
    """Konvexní těleso dané orákulem příslušnosti a opěrné funkce."""

    kind = "body"

    def __init__(self, dim: int, body_id: Optional[str] = None):
        check_body_dimension(dim)
        self.dim = dim
        self.body_id = body_id or f"{self.kind}-d{dim}"

    # === Základní dotazy ===

    @abstractmethod
    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        """Příslušnost bodu (s tolerancí)."""

    @abstractmethod
    def support(self, u) -> Tuple[float, np.ndarray]:
        """Hodnota opěrné funkce h(u) a bod, ve kterém se nabývá."""

    def support_many(self, directions) -> np.ndarray:
        """Opěrná funkce pro matici směrů (n, d); podtřídy vektorizují."""
        return np.array([self.support(u)[0] for u in np.atleast_2d(directions)])

    def support_points(self, directions) -> np.ndarray:
        """Opěrné body pro matici směrů (n, d)."""
        return np.array([self.support(u)[1] for u in np.atleast_2d(directions)])

    def contains_many(self, points, tol: float = INCIDENCE_TOLERANCE) -> np.ndarray:
        return np.array([self.contains(p, tol) for p in np.atleast_2d(points)], dtype=bool)

    def boundary_ray(self, x0, u) -> np.ndarray:
        """
        Průsečík paprsku x0 + t·u (t ≥ 0) s hranicí, půlením.

        Vrací bod uvnitř tělesa do BISECTION_EARLY_EXIT od hranice.
        """
        x0 = np.asarray(x0, dtype=float)
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        if not self.contains(x0):
            raise OutsideBody(f"Počátek paprsku {x0} neleží v tělese {self.body_id}")
        lo = 0.0
        hi = max(self.support(u)[0] - float(u @ x0), 0.0) + 1e-12
        for _ in range(BISECTION_ITERATIONS):
            mid = 0.5 * (lo + hi)
            if self.contains(x0 + mid * u, tol=0.0):
                lo = mid
            else:
                hi = mid
            if hi - lo < BISECTION_EARLY_EXIT:
                break
        return x0 + lo * u

    # === Odvozené dotazy ===

    def depth(self, x) -> float:
        """
        δ(x): vzdálenost vnitřního bodu k hranici = min_u h(u) − ⟨u, x⟩.

        Hrubá mřížka směrů a Nelder–Mead zpřesnění v mapě v ↦ v/|v|.
        """
        x = np.asarray(x, dtype=float)
        grid = sphere_directions(DELTA_GRID_DIRECTIONS, self.dim)
        gaps = self.support_many(grid) - grid @ x
        best = np.argsort(gaps)[:3]

        def gap(v):
            n = np.linalg.norm(v)
            if n == 0.0:
                return np.inf
            w = v / n
            return self.support(w)[0] - float(w @ x)

        value = float(gaps[best[0]])
        for k in best:
            res = minimize(gap, grid[k], method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
            value = min(value, float(res.fun))
        return max(value, 0.0)

    def gauge(self, x) -> float:
        """Minkowského funkcionál vzhledem k počátku (počátek musí být vnitřní)."""
        x = np.asarray(x, dtype=float)
        n = np.linalg.norm(x)
        if n == 0.0:
            return 0.0
        boundary = self.boundary_ray(np.zeros(self.dim), x / n)
        return float(n / np.linalg.norm(boundary))

    def width(self, u) -> float:
        """Šířka tělesa ve směru u: h(u) + h(−u)."""
        u = np.asarray(u, dtype=float)
        return self.support(u)[0] + self.support(-u)[0]

    # === Transformace a zástupci ===

    def transformed(self, T: AffineMap) -> "ConvexBodyOracle":
        from app.services.bodies.transformed import TransformedBody

        return TransformedBody(T, self)

    def exact_polytope(self) -> Optional[Polytope]:
        """Přesná polytopová reprezentace, pokud těleso je polytop."""
        return None

    def analytic_john(self):
        """Johnův elipsoid v uzavřeném tvaru, pokud je znám (jinak None)."""
        return None

    def proxy_size(self, eps: float, max_points: int = PROXY_MAX_POINTS) -> int:
        n = PROXY_BASE_POINTS * (10.0 / eps) ** ((self.dim - 1) / 2.0)
        return int(min(max(n, 4 * self.dim), max_points))

    def spec(self) -> Dict:
        """JSON popis tělesa (pro záznamy experimentů)."""
        return {"type": self.kind, "dim": self.dim, "id": self.body_id}

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.body_id}>"
