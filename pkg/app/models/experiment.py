"""
Záznamy experimentální mřížky a regresní fity škálování.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional


@dataclass
class ExperimentRecord:
    """
    Jedna buňka mřížky (těleso × ε × metoda × seed).

    Attributes:
        faces_by_dim: f-vektor {"0": vrcholy, "1": hrany, ...}
        total_faces: celková kombinatorická složitost
        packing_histogram: počty pakování podle třídy objemu (volitelně)
        error: text chyby, pokud buňka selhala; ostatní míry jsou pak prázdné,
            kromě překročení Hausdorffovy rezervy, kde zůstávají pro diagnostiku
    """

    body: str
    dim: int
    eps: float
    method: str
    seed: int
    vertices: Optional[int] = None
    faces_by_dim: Dict[str, int] = field(default_factory=dict)
    total_faces: Optional[int] = None
    hausdorff_est: Optional[float] = None
    runtime_ms: Optional[float] = None
    packing_histogram: Optional[Dict[str, int]] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    @classmethod
    def from_result(cls, result, packing_histogram: Optional[Dict[int, int]] = None,
                    error: Optional[str] = None) -> "ExperimentRecord":
        """Záznam z výsledku aproximace; s error je buňka selhaná, ale míry zůstávají pro diagnostiku."""
        data = result.to_dict()
        return cls(
            body=data["body"],
            dim=data["dim"],
            eps=data["eps"],
            method=data["method"],
            seed=data["seed"],
            vertices=data["counts"]["vertices"],
            faces_by_dim=data["counts"]["faces_by_dim"],
            total_faces=data["counts"]["total"],
            hausdorff_est=data["hausdorff_est"],
            runtime_ms=data["runtime_ms"],
            packing_histogram=None if packing_histogram is None
            else {str(k): int(v) for k, v in packing_histogram.items()},
            error=error,
        )

    def to_row(self) -> Dict[str, Any]:
        """Řádek CSV (prázdné hodnoty pro selhané buňky)."""
        return {
            "body": self.body,
            "dim": self.dim,
            "eps": self.eps,
            "method": self.method,
            "seed": self.seed,
            "vertices": "" if self.vertices is None else self.vertices,
            "total_faces": "" if self.total_faces is None else self.total_faces,
            "hausdorff": "" if self.hausdorff_est is None else self.hausdorff_est,
            "runtime_ms": "" if self.runtime_ms is None else self.runtime_ms,
        }

    def to_dict(self, include_runtime: bool = True) -> Dict[str, Any]:
        data = {
            "body": self.body,
            "dim": self.dim,
            "eps": self.eps,
            "method": self.method,
            "seed": self.seed,
            "counts": {
                "vertices": self.vertices,
                "faces_by_dim": self.faces_by_dim,
                "total": self.total_faces,
            },
            "hausdorff_est": self.hausdorff_est,
            "packing_histogram": self.packing_histogram,
            "error": self.error,
        }
        if include_runtime:
            data["runtime_ms"] = self.runtime_ms
        return data


@dataclass(frozen=True)
class ScalingFit:
    """
    Přímka log(total) = slope·log(1/ε) + intercept.

    Teoretický sklon je (d − 1)/2.
    """

    method: str
    body: str
    dim: int
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    @property
    def expected_slope(self) -> float:
        return (self.dim - 1) / 2.0

    def predict(self, eps: float) -> float:
        return math.exp(self.intercept + self.slope * math.log(1.0 / eps))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "body": self.body,
            "dim": self.dim,
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "n_points": self.n_points,
            "expected_slope": self.expected_slope,
        }
