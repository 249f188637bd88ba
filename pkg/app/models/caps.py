"""
Čepičky, Macbethovy oblasti a hraniční pakování.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from app.models.geometry import Halfspace, Polytope


@dataclass(frozen=True, eq=False)
class Cap:
    """
    Čepička C = {x ∈ K : ⟨u, x⟩ ≥ h_K(u) − w}.

    Attributes:
        body: těleso, ze kterého je čepička odříznuta (polytopový pohled)
        direction: jednotková normála báze u (míří ven z tělesa)
        width: šířka w
        full_width: šířka tělesa ve směru u (strop pro expanzi)
        halfspace: poloprostor {⟨−u, x⟩ ≤ −(h − w)} vymezující čepičku
        apex: bod tělesa, ve kterém se nabývá h_K(u)
        polytope: polytop čepičky (None pro degenerovanou čepičku šířky 0)
        base_vertices: vrcholy báze v R^d
        base_coords: vrcholy báze ve vodorovných souřadnicích vertikálního rámce
        base_centroid: těžiště báze v R^d
        base_volume: (d−1)-rozměrný objem báze
        volume: objem čepičky
    """

    body: Any
    direction: np.ndarray
    width: float
    full_width: float
    halfspace: Halfspace
    apex: np.ndarray
    polytope: Optional[Polytope]
    base_vertices: np.ndarray
    base_coords: np.ndarray
    base_centroid: np.ndarray
    base_volume: float
    volume: float

    @property
    def dim(self) -> int:
        return self.direction.shape[0]

    @property
    def offset(self) -> float:
        """Poloha roviny báze ⟨u, x⟩ = h − w."""
        return -self.halfspace.offset

    @property
    def is_full(self) -> bool:
        """Čepička pokrývá celé těleso (C^ρ = K)."""
        return self.width >= self.full_width

    def contains(self, x, tol: float = 1e-9) -> bool:
        x = np.asarray(x, dtype=float)
        return bool(self.halfspace.contains(x, tol) and self.body.contains(x, tol))

    def contains_many(self, points, tol: float = 1e-9) -> np.ndarray:
        points = np.atleast_2d(points)
        inside = points @ self.direction >= self.offset - tol
        return inside & self.body.contains_many(points, tol)

    def to_dict(self) -> Dict:
        return {
            "direction": self.direction.tolist(),
            "width": self.width,
            "volume": self.volume,
            "base_centroid": self.base_centroid.tolist(),
            "apex": self.apex.tolist(),
        }


@dataclass(frozen=True, eq=False)
class MacbeathRegion:
    """
    Macbethova oblast M^λ(x) = x + λ((K − x) ∩ (x − K)).

    Attributes:
        center: střed x
        scale: λ
        region: polytop oblasti
        volume: objem
        depth: δ(x)
    """

    center: np.ndarray
    scale: float
    region: Polytope
    volume: float
    depth: float

    def scaled(self, factor: float) -> "MacbeathRegion":
        """Stejnolehlost kolem středu: M^{λ·f}(x)."""
        from app.services.geom.transform import scale_about

        return MacbeathRegion(
            center=self.center,
            scale=self.scale * factor,
            region=scale_about(self.region, factor, self.center),
            volume=self.volume * factor ** self.center.shape[0],
            depth=self.depth,
        )

    @property
    def unit_volume(self) -> float:
        """Objem M^1(x) = λ^{−d}·vol(M^λ(x))."""
        return self.volume / self.scale ** self.center.shape[0]

    def to_dict(self) -> Dict:
        return {
            "center": self.center.tolist(),
            "scale": self.scale,
            "volume": self.volume,
            "depth": self.depth,
        }


@dataclass(frozen=True, eq=False)
class PackingEntry:
    """Položka pakování: malá oblast M^{1/20}, rozšířená M^{1/5}, směr a objemová třída."""

    region: MacbeathRegion
    expanded: MacbeathRegion
    direction: np.ndarray
    volume_class: int
    accepted: bool = True

    def to_dict(self) -> Dict:
        return {
            "center": self.region.center.tolist(),
            "depth": self.region.depth,
            "volume": self.region.volume,
            "class": self.volume_class,
            "accepted": self.accepted,
        }


@dataclass
class Packing:
    """
    Hladové maximální pakování Macbethových oblastí v hloubce ε.

    Attributes:
        entries: přijaté položky
        epsilon: hloubka ε
        body: těleso
        seed: seed pořadí směrů
        n_dirs: počet zkoušených směrů
        coverage: podíl náhodných paprsků zasahujících rozšířenou oblast
        rejected: počet kandidátů odmítnutých kvůli překryvu
    """

    entries: List[PackingEntry]
    epsilon: float
    body: Any
    seed: int
    n_dirs: int
    coverage: float = 0.0
    rejected: int = 0
    steps: List[Dict] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def to_dict(self) -> Dict:
        return {
            "body": self.body.body_id,
            "dim": self.body.dim,
            "eps": self.epsilon,
            "seed": self.seed,
            "n_dirs": self.n_dirs,
            "count": len(self.entries),
            "rejected": self.rejected,
            "coverage": self.coverage,
            "entries": [entry.to_dict() for entry in self.entries],
        }
