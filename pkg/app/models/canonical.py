"""
Kanonický tvar tělesa: √γ·B ⊆ T(K) ⊆ B/√γ.
"""

from dataclasses import dataclass
from typing import Any

from app.models.geometry import AffineMap


@dataclass(frozen=True)
class CanonicalForm:
    """
    Výsledek kanonizace.

    Attributes:
        map: afinní zobrazení T
        inverse: T⁻¹
        gamma: dosažené γ (z ověřených vzorků opěrné funkce)
        body: kanonizované těleso T(K)
        source: původní těleso K
        inradius: min_u h_{T(K)}(u) na kontrolních směrech
        circumradius: max_u h_{T(K)}(u) na kontrolních směrech
    """

    map: AffineMap
    inverse: AffineMap
    gamma: float
    body: Any
    source: Any
    inradius: float
    circumradius: float

    def to_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "inradius": self.inradius,
            "circumradius": self.circumradius,
            "linear": self.map.linear.tolist(),
            "translation": self.map.translation.tolist(),
        }
