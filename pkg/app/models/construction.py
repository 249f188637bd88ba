"""
Datové typy konstrukce: typované čepičky, vrstvy, svědci a sběrače, výsledek aproximace.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.models.caps import Cap, MacbeathRegion
from app.models.geometry import ComplexityProfile, Polytope


@dataclass(frozen=True, eq=False)
class TypedCap:
    """
    Vyvážená čepička s typem j.

    Attributes:
        cap: čepička C
        type_j: typ (v_j ≤ vol(C) < 2v_j), oříznutý na [−t, t]
        base_centroid: těžiště báze x_i
        shrunken_region: M′(x_i)
        balanced: b₁w_j ≤ width ≤ b₂w_j
        raw_type: typ před oříznutím
    """

    cap: Cap
    type_j: int
    base_centroid: np.ndarray
    shrunken_region: Optional[MacbeathRegion]
    balanced: bool
    raw_type: int

    @property
    def width(self) -> float:
        return self.cap.width


@dataclass(frozen=True, eq=False)
class CoverEntry:
    """
    Prvek vyváženého pokrytí: A_i, R′_i = M′(x_i), C′_i = A_i^β.

    x_i je těžiště báze A_i^{1/β}.
    """

    typed: TypedCap
    center: np.ndarray
    witness: MacbeathRegion
    collector_cap: Cap
    direction: np.ndarray

    @property
    def type_j(self) -> int:
        return self.typed.type_j


@dataclass
class BalancedCover:
    """Výsledek hladového pokrytí včetně kontrol vlastností 2 a 3."""

    entries: List[CoverEntry]
    alpha: float
    t: int
    beta: float
    sigma: float
    candidates: int = 0
    rejected: int = 0
    property2: Dict[str, Any] = field(default_factory=dict)
    property3: Dict[str, Any] = field(default_factory=dict)
    steps: List[Dict] = field(default_factory=list)

    def type_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for entry in self.entries:
            counts[entry.type_j] = counts.get(entry.type_j, 0) + 1
        return dict(sorted(counts.items()))


@dataclass
class LayerSystem:
    """
    Soustava vrstev K_j = s_j·K pro −t−1 ≤ j ≤ t.

    Attributes:
        epsilon: cílová přesnost ε (kanonické souřadnice)
        alpha: šířka čepiček pokrytí α = c₀·ε
        c1: konstanta tloušťky vrstvy
        t: počet typů na každou stranu
        scales: s_j, index j + t + 1
        gamma: γ kanonického tělesa
        properties: výsledky kontrol (a)–(e)
    """

    epsilon: float
    alpha: float
    c1: float
    t: int
    scales: np.ndarray
    gamma: float
    properties: Dict[str, Any] = field(default_factory=dict)

    def scale(self, j: int) -> float:
        """s_j; pro j > t vrací 1, pro j < −t−1 vrací s_{−t−1}."""
        j = max(min(j, self.t), -self.t - 1)
        return float(self.scales[j + self.t + 1])

    def layer_of(self, g: np.ndarray) -> np.ndarray:
        """Index vrstvy pro hodnoty gauge: L_r ⇔ s_{r−1} < g ≤ s_r (mimo vrstvy −t−2 / t+1)."""
        idx = np.searchsorted(self.scales, np.asarray(g, dtype=float), side="left")
        return idx - self.t - 1

    @property
    def total_scale(self) -> float:
        return float(self.scales[0])


@dataclass(frozen=True, eq=False)
class CollectorRegion:
    """
    Sběrač C = ⋃_{r=j}^{t} E_r^σ ∩ L_r jako predikát příslušnosti.

    Attributes:
        direction: společná normála bází kusů
        type_j: typ zdrojové čepičky
        pieces: dvojice (r, poloha roviny σ-expandované čepičky E_r^σ vrstvy K_r)
    """

    direction: np.ndarray
    type_j: int
    pieces: Tuple[Tuple[int, float], ...]

    def contains_many(self, points: np.ndarray, layers: np.ndarray) -> np.ndarray:
        """Příslušnost bodů se známými indexy vrstev."""
        heights = np.atleast_2d(points) @ self.direction
        inside = np.zeros(heights.shape[0], dtype=bool)
        for r, offset in self.pieces:
            inside |= (layers == r) & (heights >= offset - 1e-12)
        return inside


@dataclass
class WitnessCollectorSystem:
    """Svědci R_i = T_j(R′_i), sběrače a jejich přiřazení."""

    witnesses: List[Polytope]
    centers: np.ndarray
    collectors: List[CollectorRegion]
    assignment: List[Tuple[int, int]]
    layers: LayerSystem
    body: Any
    witness_in_layer: List[bool] = field(default_factory=list)
    cut_offsets: List[float] = field(default_factory=list)
    growth: List[Dict] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.witnesses)


@dataclass
class ApproximationResult:
    """
    Výsledek aproximace.

    Attributes:
        points: S (jeden bod na svědka), v souřadnicích původního tělesa
        polytope: P = conv(S)
        profile: f-vektor P
        hausdorff_est: odhad Hausdorffovy vzdálenosti
        stats: počty, konstanty, verifikace, čas
    """

    body: Any
    epsilon: float
    method: str
    seed: int
    points: np.ndarray
    polytope: Polytope
    profile: ComplexityProfile
    hausdorff_est: float
    runtime_ms: float
    constants: Dict[str, float] = field(default_factory=dict)
    stats: Dict[str, Any] = field(default_factory=dict)
    system: Optional[WitnessCollectorSystem] = None

    @property
    def hausdorff_ok(self) -> bool:
        return bool(self.stats.get("hausdorff_ok", False))

    def to_dict(self) -> Dict:
        return {
            "body": self.body.body_id,
            "dim": self.body.dim,
            "eps": self.epsilon,
            "method": self.method,
            "seed": self.seed,
            "constants": self.constants,
            "counts": {
                "vertices": self.profile.vertices,
                "faces_by_dim": {str(k): v for k, v in enumerate(self.profile.f_vector)},
                "total": self.profile.total,
            },
            "hausdorff_est": self.hausdorff_est,
            "witness_count": int(self.stats.get("witness_count", self.points.shape[0])),
            "collector_max_points": self.stats.get("collector_max_points"),
            "runtime_ms": self.runtime_ms,
            "stats": self.stats,
        }
