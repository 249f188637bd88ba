"""
Soustava vrstev K_j = s_j·K.

s_t = 1 a s_{j−1} = s_j·(1 − c₁·w_j) pro j = t, …, −t; vrstva L_j = K_j \\ K_{j−1}.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

from app.exceptions import ConstantsInfeasible
from app.models.construction import LayerSystem
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.construction.types import type_range, type_width
from app.services.geom.sampling import sphere_directions

logger = logging.getLogger(__name__)

LAYER_CHECK_DIRECTIONS = 1000
"""Počet směrů pro ověření vlastností vrstev"""

LAYER_SLACK = 1e-6
"""Numerická rezerva kontrol vrstev"""


def layer_constant(b2: float, gamma: float) -> float:
    """c₁ = 2b₂/√γ."""
    return 2.0 * b2 / np.sqrt(gamma)


def layer_scales(alpha: float, c1: float, t: int) -> np.ndarray:
    """Škály s_j pro j = −t−1, …, t (index j + t + 1)."""
    scales = np.empty(2 * t + 2)
    scales[-1] = 1.0
    for j in range(t, -t - 1, -1):
        factor = 1.0 - c1 * type_width(j, alpha)
        if factor <= 0.0:
            raise ConstantsInfeasible(
                f"Vrstva {j}: 1 − c₁·w_j = {factor:.3g} ≤ 0 (c₁={c1:g}, α={alpha:g}); je potřeba menší c₀"
            )
        scales[j + t] = scales[j + t + 1] * factor
    return scales


def check_layer_properties(layers: LayerSystem, K: ConvexBodyOracle,
                           n_dirs: int = LAYER_CHECK_DIRECTIONS) -> Dict:
    """
    Vlastnosti (a)–(e) soustavy vrstev na vzorku opěrné funkce.

    (a) mezera vrstvy j leží v [√γ·c₁w_j/2, c₁w_j/√γ]
    (b) celková mezera mezi K a K_{−t−1} je nejvýše ε
    (c) vrstvy jsou vnořené
    (d) všechny škály leží v [1/2, 1]
    (e) vol(K_j)/vol(K) = s_j^d ∈ [2^{−d}, 1]
    """
    d, t, s = K.dim, layers.t, layers.scales
    h = K.support_many(sphere_directions(n_dirs, d, seed=3))
    root = np.sqrt(layers.gamma)
    steps: List[Dict] = []

    worst_low, worst_high = np.inf, 0.0
    for j in range(-t, t + 1):
        w = type_width(j, layers.alpha)
        gap = (layers.scale(j) - layers.scale(j - 1)) * h
        lower, upper = root * layers.c1 * w / 2.0, layers.c1 * w / root
        worst_low = min(worst_low, float(gap.min()) / lower)
        worst_high = max(worst_high, float(gap.max()) / upper)
    gaps_ok = worst_low >= 1.0 - LAYER_SLACK and worst_high <= 1.0 + LAYER_SLACK
    steps.append({"step": "(a) mezery vrstev", "detail": f"min poměr k dolní mezi {worst_low:.4g}, "
                  f"max poměr k horní mezi {worst_high:.4g}", "result": "OK" if gaps_ok else "SELHALA"})

    total_gap = float(((1.0 - layers.total_scale) * h).max())
    total_ok = total_gap <= layers.epsilon * (1.0 + LAYER_SLACK)
    steps.append({"step": "(b) celková mezera", "detail": f"{total_gap:.6g} vs ε={layers.epsilon:g}",
                  "result": "OK" if total_ok else "SELHALA"})

    nested = bool(np.all(np.diff(s) > 0.0))
    steps.append({"step": "(c) vnoření", "detail": f"{s.shape[0]} škál", "result": "OK" if nested else "SELHALA"})

    bounded = bool(s.min() >= 0.5 and s.max() <= 1.0)
    steps.append({"step": "(d) škály v [1/2, 1]", "detail": f"min {s.min():.6g}",
                  "result": "OK" if bounded else "SELHALA"})

    ratios = s**d
    volume_ok = bool(ratios.min() >= 0.5**d and ratios.max() <= 1.0)
    steps.append({"step": "(e) poměr objemů", "detail": f"min {ratios.min():.6g} vs {0.5**d:.6g}",
                  "result": "OK" if volume_ok else "SELHALA"})

    return {
        "gaps": gaps_ok,
        "total_gap": total_gap,
        "total": total_ok,
        "nested": nested,
        "bounded": bounded,
        "volume": volume_ok,
        "passed": gaps_ok and total_ok and nested and bounded and volume_ok,
        "steps": steps,
    }


def build_layers(
    K: ConvexBodyOracle,
    eps: float,
    c1: float,
    gamma: float = 1.0,
    alpha: Optional[float] = None,
    n_dirs: int = LAYER_CHECK_DIRECTIONS,
) -> LayerSystem:
    """
    Soustava vrstev pro cílovou přesnost ε a šířku čepiček α.

    Args:
        K: kanonické těleso
        eps: povolená celková mezera
        c1: konstanta tloušťky vrstvy (2b₂/√γ)
        gamma: γ kanonického tělesa
        alpha: šířka čepiček pokrytí (výchozí ε)
        n_dirs: počet směrů pro kontrolu vlastností

    Raises:
        ConstantsInfeasible: celková mezera přesahuje ε

    Examples:
        α malé vůči ε/c₁ → všechny škály v [1/2, 1], celková mezera ≤ ε
    """
    alpha = eps if alpha is None else alpha
    t = type_range(alpha)
    layers = LayerSystem(epsilon=eps, alpha=alpha, c1=c1, t=t, scales=layer_scales(alpha, c1, t), gamma=gamma)
    layers.properties = check_layer_properties(layers, K, n_dirs)
    if not layers.properties["total"]:
        raise ConstantsInfeasible(
            f"Celková mezera vrstev {layers.properties['total_gap']:.4g} přesahuje ε = {eps:g} "
            f"(α={alpha:g}, c₁={c1:g})"
        )
    if not layers.properties["passed"]:
        failed = [s["step"] for s in layers.properties["steps"] if s["result"] != "OK"]
        logger.warning(f"Vrstvy {K.body_id}: nesplněné vlastnosti {failed}")
    logger.info(f"Vrstvy {K.body_id}: t={t}, s_(−t−1)={layers.total_scale:.6g}, "
                f"mezera {layers.properties['total_gap']:.4g}")
    return layers
