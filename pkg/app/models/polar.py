"""
Polární dvojice, polára duální čepičky a záznamy součinů čepiček.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np

from app.models.geometry import Polytope


@dataclass(frozen=True, eq=False)
class PolarPair:
    """
    Polytop a jeho polára vzhledem ke středu.

    Attributes:
        primal: K
        polar: K* v souřadnicích se středem v počátku
        center: střed polarity
    """

    primal: Polytope
    polar: Polytope
    center: np.ndarray

    def to_dict(self) -> Dict:
        return {
            "center": self.center.tolist(),
            "primal_vertices": self.primal.n_vertices,
            "polar_vertices": self.polar.n_vertices,
        }


@dataclass(frozen=True, eq=False)
class DualCapPolar:
    """
    Polára duální čepičky: G leží v nadrovině z* a G − h* = α·K̄*.

    Attributes:
        base_body: (d−1)-polytop K v nadrovině (vodorovné souřadnice)
        height: výška nadroviny K
        viewpoint: bod z
        crossing: průsečík x úsečky Oz s K
        G: (d−1)-polytop v souřadnicích nadroviny z*, posunutý o h*
        alpha: ‖xz‖/‖Oz‖
        expected: α·K̄* ve stejných souřadnicích
        max_error: největší vzdálenost spárovaných vrcholů G − h* a α·K̄*
    """

    base_body: Polytope
    height: float
    viewpoint: np.ndarray
    crossing: np.ndarray
    G: Polytope
    alpha: float
    expected: Polytope
    max_error: float

    def to_dict(self) -> Dict:
        return {
            "viewpoint": self.viewpoint.tolist(),
            "crossing": self.crossing.tolist(),
            "alpha": self.alpha,
            "max_error": self.max_error,
        }


@dataclass(frozen=True)
class CapProductRecord:
    """Záznam jednoho směru: vol(C), vol(π(C)) a součin normovaný ε^{d+1}."""

    direction: np.ndarray
    eps: float
    cap_volume: float
    polar_cap_volume: float
    normalized_product: float

    def to_dict(self) -> Dict:
        return {
            "direction": np.asarray(self.direction).tolist(),
            "cap_volume": self.cap_volume,
            "polar_cap_volume": self.polar_cap_volume,
            "normalized_product": self.normalized_product,
        }


@dataclass(frozen=True)
class BaseSandwich:
    """s₁X* ⊆ base(C) − h* ⊆ s₂X*; c₁ = s₁/ε, c₂ = s₂/ε."""

    direction: np.ndarray
    eps: float
    s1: float
    s2: float

    @property
    def c1(self) -> float:
        return self.s1 / self.eps

    @property
    def c2(self) -> float:
        return self.s2 / self.eps

    def to_dict(self) -> Dict:
        return {
            "direction": np.asarray(self.direction).tolist(),
            "eps": self.eps,
            "s1": self.s1,
            "s2": self.s2,
            "c1": self.c1,
            "c2": self.c2,
        }
