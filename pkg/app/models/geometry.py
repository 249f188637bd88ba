"""
Základní geometrické typy: poloprostor, afinní zobrazení, polytop, profil složitosti.

Všechny typy jsou po vytvoření neměnné, a proto bezpečně sdílitelné mezi vlákny.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np

from app.constants.geometry import (
    INCIDENCE_TOLERANCE,
    MAP_ROUNDTRIP_TOLERANCE,
    NORMAL_TOLERANCE,
    SINGULAR_DETERMINANT,
)
from app.exceptions import DegenerateInput, GeometryInvalid


@dataclass(frozen=True, eq=False)
class Halfspace:
    """Poloprostor {x : ⟨u, x⟩ ≤ b} s jednotkovou normálou u."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        normal = np.asarray(self.normal, dtype=float)
        if abs(np.linalg.norm(normal) - 1.0) > NORMAL_TOLERANCE:
            raise GeometryInvalid(f"Normála poloprostoru není jednotková: {normal}")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_vector(cls, vector, offset: float) -> "Halfspace":
        """Vytvoří poloprostor z nenormované normály (offset se přeškáluje)."""
        vector = np.asarray(vector, dtype=float)
        norm = np.linalg.norm(vector)
        if norm == 0.0:
            raise GeometryInvalid("Nulová normála poloprostoru")
        return cls(vector / norm, offset / norm)

    @property
    def dim(self) -> int:
        return self.normal.shape[0]

    def slack(self, x) -> np.ndarray:
        """b − ⟨u, x⟩ (kladné uvnitř); x může být bod nebo matice bodů."""
        return self.offset - np.asarray(x, dtype=float) @ self.normal

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return bool(np.all(self.slack(x) >= -tol))


@dataclass(frozen=True, eq=False)
class AffineMap:
    """Afinní zobrazení x ↦ Ax + t s uloženou inverzí."""

    linear: np.ndarray
    translation: np.ndarray
    inverse_linear: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        linear = np.atleast_2d(np.asarray(self.linear, dtype=float))
        translation = np.asarray(self.translation, dtype=float).reshape(-1)
        if linear.shape != (translation.shape[0], translation.shape[0]):
            raise GeometryInvalid(
                f"Nekompatibilní rozměry zobrazení: {linear.shape} a {translation.shape}"
            )
        det = np.linalg.det(linear)
        if abs(det) <= SINGULAR_DETERMINANT:
            raise DegenerateInput(f"Singulární afinní zobrazení (det = {det:.3e})")
        inverse = np.linalg.inv(linear)
        if not np.allclose(linear @ inverse, np.eye(linear.shape[0]), atol=MAP_ROUNDTRIP_TOLERANCE):
            raise DegenerateInput("Inverze zobrazení je numericky nestabilní")
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "translation", translation)
        object.__setattr__(self, "inverse_linear", inverse)

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(np.eye(d), np.zeros(d))

    @classmethod
    def scaling(cls, factor: float, d: int, center=None) -> "AffineMap":
        """Stejnoměrné škálování faktorem kolem středu (výchozí je počátek)."""
        center = np.zeros(d) if center is None else np.asarray(center, dtype=float)
        return cls(factor * np.eye(d), (1.0 - factor) * center)

    @property
    def dim(self) -> int:
        return self.translation.shape[0]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x @ self.linear.T + self.translation

    def apply_vector(self, v) -> np.ndarray:
        """Aplikuje jen lineární část (směry, rozdíly bodů)."""
        return np.asarray(v, dtype=float) @ self.linear.T

    def inverse(self) -> "AffineMap":
        return AffineMap(self.inverse_linear, -self.inverse_linear @ self.translation)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """Vrátí self ∘ other."""
        return AffineMap(self.linear @ other.linear, self.linear @ other.translation + self.translation)

    def operator_norm(self) -> float:
        return float(np.linalg.norm(self.linear, 2))


@dataclass(frozen=True)
class ComplexityProfile:
    """f-vektor (počty stěn dimenze 0..d−1) a celková kombinatorická složitost."""

    f_vector: Tuple[int, ...]

    @property
    def total(self) -> int:
        return int(sum(self.f_vector))

    @property
    def vertices(self) -> int:
        return self.f_vector[0] if self.f_vector else 0

    def euler_characteristic(self) -> int:
        return int(sum((-1) ** k * f for k, f in enumerate(self.f_vector)))

    def to_dict(self) -> dict:
        return {"faces_by_dim": list(self.f_vector), "total": self.total, "vertices": self.vertices}


@dataclass(frozen=True, eq=False)
class Polytope:
    """
    Konvexní polytop v duální reprezentaci.

    Attributes:
        vertices: matice (n, d) vrcholů
        normals: matice (m, d) jednotkových normál stěn
        offsets: vektor (m,) posunů, stěna i je {x : ⟨normals[i], x⟩ ≤ offsets[i]}
        incidence: pro každou stěnu množina indexů vrcholů, které na ní leží
    """

    vertices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    incidence: Tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", np.atleast_2d(np.asarray(self.vertices, dtype=float)))
        object.__setattr__(self, "normals", np.atleast_2d(np.asarray(self.normals, dtype=float)))
        object.__setattr__(self, "offsets", np.asarray(self.offsets, dtype=float).reshape(-1))
        object.__setattr__(self, "incidence", tuple(frozenset(s) for s in self.incidence))
        if self.normals.shape[0] != self.offsets.shape[0] or len(self.incidence) != self.offsets.shape[0]:
            raise GeometryInvalid("Nesouhlasí počet stěn, posunů a incidencí polytopu")

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_facets(self) -> int:
        return self.offsets.shape[0]

    @property
    def facets(self) -> List[Halfspace]:
        return [Halfspace(n, b) for n, b in zip(self.normals, self.offsets)]

    @property
    def vertex_mean(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def slack(self, x) -> np.ndarray:
        """b − Ax pro bod (m,) nebo matici bodů (k, m)."""
        return self.offsets - np.asarray(x, dtype=float) @ self.normals.T

    def contains(self, x, tol: float = INCIDENCE_TOLERANCE) -> bool:
        return bool(np.all(self.slack(x) >= -tol))

    def contains_many(self, points, tol: float = INCIDENCE_TOLERANCE) -> np.ndarray:
        return np.all(self.slack(np.atleast_2d(points)) >= -tol, axis=1)

    def support(self, u) -> Tuple[float, np.ndarray]:
        values = self.vertices @ np.asarray(u, dtype=float)
        k = int(np.argmax(values))
        return float(values[k]), self.vertices[k]

    def circumradius(self, center=None) -> float:
        center = self.vertex_mean if center is None else np.asarray(center, dtype=float)
        return float(np.max(np.linalg.norm(self.vertices - center, axis=1)))

    @cached_property
    def profile(self) -> ComplexityProfile:
        """Svaz stěn se počítá líně a ukládá na polytop."""
        from app.services.geom.lattice import face_lattice

        return face_lattice(self)

    @cached_property
    def mass(self) -> Tuple[float, np.ndarray]:
        """(objem, těžiště) ze simplexového rozkladu."""
        from app.services.geom.measure import mass_properties

        return mass_properties(self)

    @cached_property
    def incidence_matrix(self):
        """Řídká matice (stěny × vrcholy) incidence."""
        from scipy.sparse import csr_matrix

        rows = np.repeat(np.arange(self.n_facets), [len(s) for s in self.incidence])
        cols = np.fromiter((k for s in self.incidence for k in sorted(s)), dtype=int, count=rows.shape[0])
        return csr_matrix((np.ones(rows.shape[0]), (rows, cols)), shape=(self.n_facets, self.n_vertices))

    def facet_vertices(self, index: int) -> np.ndarray:
        return self.vertices[sorted(self.incidence[index])]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": self.vertices.tolist(),
            "facets": [{"normal": n.tolist(), "offset": float(b)} for n, b in zip(self.normals, self.offsets)],
        }


def as_points(points, d: Optional[int] = None) -> np.ndarray:
    """Převede vstup na matici bodů (n, d) a ověří konečnost souřadnic."""
    array = np.atleast_2d(np.asarray(points, dtype=float))
    if d is not None and array.shape[1] != d:
        raise GeometryInvalid(f"Očekávána dimenze {d}, dostáno {array.shape[1]}")
    if not np.all(np.isfinite(array)):
        raise GeometryInvalid("Souřadnice bodů nejsou konečné")
    return array
