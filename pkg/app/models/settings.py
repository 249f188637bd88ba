"""
Nastavení výpočtu předávané službám.

Služby nikdy nečtou konfiguraci Flasku přímo; dostávají ApproximationSettings,
sestavené z app.config (klíče CAPCOVER_*) nebo s výchozími hodnotami.
"""

import os
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Mapping, Optional

from app.constants.construction import (
    DEFAULT_B1,
    DEFAULT_B2,
    DEFAULT_BETA,
    DEFAULT_C0,
    DEFAULT_COVER_DIRECTIONS,
    DEFAULT_DELTA0,
    DEFAULT_PACKING_DIRECTIONS,
    DEFAULT_POLAR_C,
    DEFAULT_SIGMA,
    HAUSDORFF_DIRECTIONS,
    HAUSDORFF_REFINE,
    PROPERTY_CHECK_DIRECTIONS,
    PROXY_MAX_POINTS,
    REPAIR_ROUNDS,
)
from app.exceptions import ConfigurationError

TRUE_VALUES = ("1", "true", "yes", "on")
FALSE_VALUES = ("0", "false", "no", "off")


def _parse_flag(raw: Any) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in TRUE_VALUES:
        return True
    if text in FALSE_VALUES:
        return False
    raise ValueError(f"neznámá logická hodnota {raw!r}")


@dataclass(frozen=True)
class ApproximationSettings:
    """
    Konstanty a rozpočty konstrukce.

    Attributes:
        threads: počet vláken pro paralelní části
        beta: expanze kolektorové čepičky C′ = A^β
        sigma: expanze kusů kolektoru E_r^σ
        polar_c: konstanta c zobrazení π
        delta0: prahová šířka Δ₀
        c0: počáteční c₀ (α = c₀·ε)
        b1, b2: okno vyváženosti
        proxy_max_points: strop počtu bodů polytopového zástupce
        cover_dirs: počet směrů hladového pokrytí
        packing_dirs: počet směrů hraničního pakování
        hausdorff_dirs: počet směrů odhadu Hausdorffovy vzdálenosti
        hausdorff_refine: počet lokálně zpřesňovaných nejhorších směrů
        property_dirs: počet čerstvých směrů kontroly vlastnosti 3
        repair_rounds: počet kol doplňování svědků
        strict: selhání kontrol vlastností pokrytí a vrstev vyhodí InvariantViolated
    """

    threads: int = 1
    beta: float = DEFAULT_BETA
    sigma: float = DEFAULT_SIGMA
    polar_c: float = DEFAULT_POLAR_C
    delta0: float = DEFAULT_DELTA0
    c0: float = DEFAULT_C0
    b1: float = DEFAULT_B1
    b2: float = DEFAULT_B2
    proxy_max_points: int = PROXY_MAX_POINTS
    cover_dirs: int = DEFAULT_COVER_DIRECTIONS
    packing_dirs: int = DEFAULT_PACKING_DIRECTIONS
    hausdorff_dirs: int = HAUSDORFF_DIRECTIONS
    hausdorff_refine: int = HAUSDORFF_REFINE
    property_dirs: int = PROPERTY_CHECK_DIRECTIONS
    repair_rounds: int = REPAIR_ROUNDS
    strict: bool = False

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.type is bool:
                continue
            if f.name == "repair_rounds":
                if value < 0:
                    raise ConfigurationError(f"Neplatný počet kol doplňování: {value}")
            elif value <= 0:
                raise ConfigurationError(f"Neplatná hodnota nastavení {f.name}: {value}")
        if self.b1 >= self.b2:
            raise ConfigurationError(f"Okno vyváženosti musí splňovat b₁ < b₂ (dostáno {self.b1}, {self.b2})")
        if self.beta < 1.0 or self.sigma < 1.0:
            raise ConfigurationError(f"β a σ musí být alespoň 1 (dostáno β={self.beta}, σ={self.sigma})")

    @classmethod
    def from_mapping(cls, mapping: Optional[Mapping[str, Any]] = None, **overrides) -> "ApproximationSettings":
        """
        Sestaví nastavení z mapy klíčů CAPCOVER_<POLE> (např. app.config).

        Chybějící klíče a hodnoty None mají výchozí hodnotu; overrides mají přednost.

        Raises:
            ConfigurationError: hodnota nejde převést nebo je mimo rozsah

        Examples:
            {"CAPCOVER_BETA": "3"} → beta = 3.0
            {"CAPCOVER_THREADS": "abc"} → ConfigurationError
        """
        mapping = mapping or {}
        values: Dict[str, Any] = {}
        for f in fields(cls):
            raw = overrides.get(f.name)
            if raw is None:
                raw = mapping.get(f"CAPCOVER_{f.name.upper()}")
            if raw is None:
                continue
            try:
                if f.type is bool:
                    values[f.name] = _parse_flag(raw)
                else:
                    values[f.name] = int(float(raw)) if f.type is int else float(raw)
            except (TypeError, ValueError):
                raise ConfigurationError(f"Neplatná hodnota CAPCOVER_{f.name.upper()}: {raw!r}")
        return cls(**values)

    @classmethod
    def default_threads(cls) -> int:
        return os.cpu_count() or 1

    def constants(self) -> Dict[str, float]:
        return {"beta": self.beta, "sigma": self.sigma, "c": self.polar_c, "c0": self.c0,
                "b1": self.b1, "b2": self.b2, "delta0": self.delta0}

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
