"""
Analytická tělesa: elipsoid, koule, kvádr a ℓ_p koule.

Opěrná funkce, příslušnost, průsečík paprsku i hloubka mají uzavřené vzorce;
obecné půlení z orákula se používá jen tam, kde vzorec chybí.
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from app.constants.geometry import INCIDENCE_TOLERANCE, NORMAL_TOLERANCE
from app.exceptions import BodySpecError, OutsideBody
from app.models.geometry import AffineMap, Polytope
from app.services.bodies.oracle import ConvexBodyOracle

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-12
"""Maximální asymetrie matice tvaru elipsoidu"""


def _ellipsoid_depth(y: np.ndarray, axes: np.ndarray) -> float:
    """
    Vzdálenost bodu y (v hlavních osách) k hranici elipsoidu s poloosami axes.

    Nejbližší bod p_i = y_i a_i² / (a_i² + μ), kde μ je kořen sekulární rovnice
    Σ (y_i a_i / (a_i² + μ))² = 1 na intervalu (−a_min², 0].
    """
    a2 = axes**2
    k = int(np.argmin(a2))

    def secular(mu: float) -> float:
        return float(np.sum((y * axes / (a2 + mu)) ** 2) - 1.0)

    if secular(0.0) >= 0.0:
        return 0.0
    lo = -a2[k] * (1.0 - 1e-15)
    if secular(lo) > 0.0:
        mu = brentq(secular, lo, 0.0, xtol=1e-16, rtol=1e-15, maxiter=500)
        p = y * a2 / (a2 + mu)
        return float(np.linalg.norm(p - y))

    # y leží v rovině kolmé na nejkratší osu
    tied = a2 <= a2[k] * (1.0 + 1e-12)
    p = np.zeros_like(y)
    p[~tied] = y[~tied] * a2[~tied] / (a2[~tied] - a2[k])
    rest = 1.0 - float(np.sum(p[~tied] ** 2 / a2[~tied]))
    p[k] = np.sqrt(max(rest, 0.0) * a2[k])
    return float(np.linalg.norm(p - y))


class Ellipsoid(ConvexBodyOracle):
    """
    Elipsoid E = {x : (x − c)ᵀ A (x − c) ≤ 1}.

    Attributes:
        center: střed c
        shape: symetrická pozitivně definitní matice A
    """

    kind = "ellipsoid"

    def __init__(self, center, shape, body_id: Optional[str] = None):
        center = np.asarray(center, dtype=float).reshape(-1)
        shape = np.atleast_2d(np.asarray(shape, dtype=float))
        super().__init__(center.shape[0], body_id)
        if shape.shape != (self.dim, self.dim):
            raise BodySpecError(f"Matice tvaru elipsoidu má rozměr {shape.shape}, očekáváno {(self.dim, self.dim)}")
        if np.max(np.abs(shape - shape.T)) > SYMMETRY_TOLERANCE * max(1.0, np.max(np.abs(shape))):
            raise BodySpecError("Matice tvaru elipsoidu není symetrická")
        shape = 0.5 * (shape + shape.T)
        eigenvalues, eigenvectors = np.linalg.eigh(shape)
        if np.any(eigenvalues <= 0.0):
            raise BodySpecError(f"Matice tvaru elipsoidu není pozitivně definitní (vlastní čísla {eigenvalues})")
        self.center = center
        self.shape = shape
        self.axes = 1.0 / np.sqrt(eigenvalues)
        self.rotation = eigenvectors
        self.covariance = eigenvectors @ np.diag(1.0 / eigenvalues) @ eigenvectors.T
        # E = c + L·B, L = A^{-1/2}
        self.root = eigenvectors @ np.diag(self.axes) @ eigenvectors.T

    @classmethod
    def from_axes(cls, center, axes, rotation=None, body_id: Optional[str] = None) -> "Ellipsoid":
        """Elipsoid z poloos a (volitelně) ortonormální matice hlavních směrů ve sloupcích."""
        axes = np.asarray(axes, dtype=float)
        if np.any(axes <= 0.0):
            raise BodySpecError(f"Poloosy elipsoidu musí být kladné: {axes}")
        R = np.eye(axes.shape[0]) if rotation is None else np.asarray(rotation, dtype=float)
        return cls(center, R @ np.diag(1.0 / axes**2) @ R.T, body_id)

    @property
    def volume(self) -> float:
        from scipy.special import gamma

        d = self.dim
        return float(np.pi ** (d / 2.0) / gamma(d / 2.0 + 1.0) * np.prod(self.axes))

    def quadratic(self, x) -> np.ndarray:
        w = np.atleast_2d(np.asarray(x, dtype=float)) - self.center
        return np.einsum("ij,jk,ik->i", w, self.shape, w)

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return bool(self.quadratic(x)[0] <= 1.0 + tol)

    def contains_many(self, points, tol: float = INCIDENCE_TOLERANCE) -> np.ndarray:
        return self.quadratic(points) <= 1.0 + tol

    def support(self, u) -> Tuple[float, np.ndarray]:
        u = np.asarray(u, dtype=float)
        Cu = self.covariance @ u
        r = float(np.sqrt(u @ Cu))
        return float(u @ self.center) + r, self.center + Cu / r

    def support_many(self, directions) -> np.ndarray:
        U = np.atleast_2d(directions)
        return U @ self.center + np.sqrt(np.einsum("ij,jk,ik->i", U, self.covariance, U))

    def support_points(self, directions) -> np.ndarray:
        U = np.atleast_2d(directions)
        CU = U @ self.covariance
        r = np.sqrt(np.einsum("ij,ij->i", CU, U))
        return self.center + CU / r[:, None]

    def boundary_ray(self, x0, u) -> np.ndarray:
        x0 = np.asarray(x0, dtype=float)
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        if not self.contains(x0):
            raise OutsideBody(f"Počátek paprsku {x0} neleží v elipsoidu {self.body_id}")
        w = x0 - self.center
        a = float(u @ self.shape @ u)
        b = 2.0 * float(u @ self.shape @ w)
        c = float(w @ self.shape @ w) - 1.0
        t = (-b + np.sqrt(max(b * b - 4.0 * a * c, 0.0))) / (2.0 * a)
        return x0 + max(t, 0.0) * u

    def depth(self, x) -> float:
        y = self.rotation.T @ (np.asarray(x, dtype=float) - self.center)
        return _ellipsoid_depth(y, self.axes)

    def gauge(self, x) -> float:
        """Pro elipsoid se středem v počátku je gauge √(xᵀAx); jinak obecný výpočet."""
        if np.linalg.norm(self.center) <= NORMAL_TOLERANCE:
            return float(np.sqrt(self.quadratic(x)[0]))
        return super().gauge(x)

    def transformed(self, T: AffineMap) -> "Ellipsoid":
        M_inv = T.inverse_linear
        return Ellipsoid(T(self.center), M_inv.T @ self.shape @ M_inv, f"{self.body_id}@T")

    def analytic_john(self) -> "Ellipsoid":
        return self

    def contains_ellipsoid(self, other: "Ellipsoid", tol: float = 1e-9) -> bool:
        """Obsahuje-li self elipsoid other (test přes opěrné body ve vlastních směrech)."""
        from app.services.geom.sampling import sphere_directions

        dirs = sphere_directions(2000 if self.dim > 2 else 720, self.dim)
        return bool(np.all(other.support_many(dirs) <= self.support_many(dirs) + tol))

    def scaled(self, factor: float) -> "Ellipsoid":
        """Stejnolehlost kolem středu."""
        return Ellipsoid(self.center, self.shape / factor**2, self.body_id)

    def spec(self) -> Dict:
        return {"type": "ellipsoid", "dim": self.dim, "id": self.body_id,
                "center": self.center.tolist(), "shape": self.shape.tolist()}


class Ball(Ellipsoid):
    """Euklidovská koule B(c, r)."""

    kind = "ball"

    def __init__(self, radius: float = 1.0, center=None, dim: Optional[int] = None, body_id: Optional[str] = None):
        if radius <= 0.0:
            raise BodySpecError(f"Poloměr koule musí být kladný: {radius}")
        if center is None:
            if dim is None:
                raise BodySpecError("Koule potřebuje střed nebo dimenzi")
            center = np.zeros(dim)
        center = np.asarray(center, dtype=float).reshape(-1)
        super().__init__(center, np.eye(center.shape[0]) / radius**2, body_id)
        self.radius = float(radius)

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return bool(np.linalg.norm(np.asarray(x, dtype=float) - self.center) <= self.radius + tol)

    def support(self, u) -> Tuple[float, np.ndarray]:
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        return float(u @ self.center) + self.radius, self.center + self.radius * u

    def depth(self, x) -> float:
        return max(self.radius - float(np.linalg.norm(np.asarray(x, dtype=float) - self.center)), 0.0)

    def spec(self) -> Dict:
        return {"type": "ball", "dim": self.dim, "id": self.body_id,
                "radius": self.radius, "center": self.center.tolist()}


class Box(ConvexBodyOracle):
    """Osově rovnoběžný kvádr c + Π [−w_i, w_i]."""

    kind = "box"

    def __init__(self, half_widths, center=None, body_id: Optional[str] = None):
        w = np.asarray(half_widths, dtype=float).reshape(-1)
        super().__init__(w.shape[0], body_id)
        if np.any(w <= 0.0):
            raise BodySpecError(f"Poloviční šířky kvádru musí být kladné: {w}")
        self.half_widths = w
        self.center = np.zeros(self.dim) if center is None else np.asarray(center, dtype=float).reshape(-1)

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return bool(np.all(np.abs(np.asarray(x, dtype=float) - self.center) <= self.half_widths + tol))

    def contains_many(self, points, tol: float = INCIDENCE_TOLERANCE) -> np.ndarray:
        return np.all(np.abs(np.atleast_2d(points) - self.center) <= self.half_widths + tol, axis=1)

    def support(self, u) -> Tuple[float, np.ndarray]:
        u = np.asarray(u, dtype=float)
        point = self.center + np.where(u >= 0.0, 1.0, -1.0) * self.half_widths
        return float(u @ point), point

    def support_many(self, directions) -> np.ndarray:
        U = np.atleast_2d(directions)
        return U @ self.center + np.abs(U) @ self.half_widths

    def support_points(self, directions) -> np.ndarray:
        U = np.atleast_2d(directions)
        return self.center + np.where(U >= 0.0, 1.0, -1.0) * self.half_widths

    def boundary_ray(self, x0, u) -> np.ndarray:
        x0 = np.asarray(x0, dtype=float)
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        if not self.contains(x0):
            raise OutsideBody(f"Počátek paprsku {x0} neleží v kvádru {self.body_id}")
        w = x0 - self.center
        moving = np.abs(u) > NORMAL_TOLERANCE
        limits = (np.sign(u[moving]) * self.half_widths[moving] - w[moving]) / u[moving]
        return x0 + max(float(np.min(limits)), 0.0) * u

    def depth(self, x) -> float:
        return max(float(np.min(self.half_widths - np.abs(np.asarray(x, dtype=float) - self.center))), 0.0)

    def gauge(self, x) -> float:
        if np.linalg.norm(self.center) <= NORMAL_TOLERANCE:
            return float(np.max(np.abs(np.asarray(x, dtype=float)) / self.half_widths))
        return super().gauge(x)

    def exact_polytope(self) -> Polytope:
        from app.services.geom.hull import convex_hull

        corners = np.array(np.meshgrid(*[[-1.0, 1.0]] * self.dim, indexing="ij")).reshape(self.dim, -1).T
        return convex_hull(self.center + corners * self.half_widths)

    def transformed(self, T: AffineMap) -> ConvexBodyOracle:
        from app.services.bodies.polytope_body import PolytopeBody
        from app.services.geom.transform import apply_map

        return PolytopeBody(apply_map(T, self.exact_polytope()), f"{self.body_id}@T")

    def analytic_john(self) -> Ellipsoid:
        """Největší vepsaný elipsoid kvádru má poloosy rovné polovičním šířkám."""
        return Ellipsoid.from_axes(self.center, self.half_widths)

    def spec(self) -> Dict:
        return {"type": "box", "dim": self.dim, "id": self.body_id,
                "half_widths": self.half_widths.tolist(), "center": self.center.tolist()}


class LpBall(ConvexBodyOracle):
    """
    Koule r·B_p = {x : ‖x‖_p ≤ r}, p ∈ [1, ∞].

    Opěrná funkce je r·‖u‖_q se sdruženým exponentem 1/p + 1/q = 1.
    """

    kind = "lp"

    def __init__(self, p: float, dim: int, radius: float = 1.0, body_id: Optional[str] = None):
        super().__init__(dim, body_id)
        p = float(p)
        if p < 1.0:
            raise BodySpecError(f"Exponent ℓ_p koule musí splňovat p ≥ 1 (dostáno {p})")
        if radius <= 0.0:
            raise BodySpecError(f"Poloměr ℓ_p koule musí být kladný: {radius}")
        self.p = p
        self.radius = float(radius)
        if p == 1.0:
            self.q = np.inf
        elif np.isinf(p):
            self.q = 1.0
        else:
            self.q = p / (p - 1.0)

    def norm(self, x) -> np.ndarray:
        return np.linalg.norm(np.atleast_2d(np.asarray(x, dtype=float)), ord=self.p, axis=1)

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return bool(self.norm(x)[0] <= self.radius + tol)

    def contains_many(self, points, tol: float = INCIDENCE_TOLERANCE) -> np.ndarray:
        return self.norm(points) <= self.radius + tol

    def support_many(self, directions) -> np.ndarray:
        return self.radius * np.linalg.norm(np.atleast_2d(directions), ord=self.q, axis=1)

    def support_points(self, directions) -> np.ndarray:
        U = np.atleast_2d(np.asarray(directions, dtype=float))
        if self.p == 1.0:
            points = np.zeros_like(U)
            k = np.argmax(np.abs(U), axis=1)
            rows = np.arange(U.shape[0])
            points[rows, k] = np.sign(U[rows, k])
            return self.radius * points
        if np.isinf(self.p):
            return self.radius * np.where(U >= 0.0, 1.0, -1.0)
        qn = np.linalg.norm(U, ord=self.q, axis=1)
        return self.radius * np.sign(U) * (np.abs(U) / qn[:, None]) ** (self.q - 1.0)

    def support(self, u) -> Tuple[float, np.ndarray]:
        u = np.asarray(u, dtype=float)
        return float(self.support_many(u)[0]), self.support_points(u)[0]

    def boundary_ray(self, x0, u) -> np.ndarray:
        x0 = np.asarray(x0, dtype=float)
        if np.linalg.norm(x0) > 0.0:
            return super().boundary_ray(x0, u)
        u = np.asarray(u, dtype=float)
        u = u / np.linalg.norm(u)
        return self.radius * u / self.norm(u)[0]

    def gauge(self, x) -> float:
        return float(self.norm(x)[0] / self.radius)

    def exact_polytope(self) -> Optional[Polytope]:
        from app.services.geom.hull import convex_hull

        if self.p == 1.0:
            eye = np.eye(self.dim) * self.radius
            return convex_hull(np.vstack([eye, -eye]))
        if np.isinf(self.p):
            return Box(np.full(self.dim, self.radius)).exact_polytope()
        return None

    def analytic_john(self) -> Ellipsoid:
        """Symetrie hyperoktaedrické grupy vynutí kouli; poloměr je min_u h(u)."""
        if self.q <= 2.0:
            radius = self.radius
        else:
            radius = self.radius * self.dim ** (1.0 / self.q - 0.5)
        return Ball(radius, np.zeros(self.dim))

    def spec(self) -> Dict:
        p = "inf" if np.isinf(self.p) else self.p
        return {"type": "lp", "dim": self.dim, "id": self.body_id, "p": p, "radius": self.radius}
