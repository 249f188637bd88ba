"""
Typy čepiček a vyvažování.

Čepička je typu j, pokud v_j ≤ vol(C) < 2v_j, kde v_j = 2^j·ε^{(d+1)/2}.
Vyvážená čepička má šířku mezi b₁·w_j a b₂·w_j, kde w_j = ε / max(j², 1).
"""

import logging
import math
from typing import Dict, List, Sequence

import numpy as np

from app.constants.construction import DEFAULT_B1, DEFAULT_B2
from app.exceptions import GeometryInvalid
from app.models.caps import Cap
from app.models.construction import TypedCap

logger = logging.getLogger(__name__)


def cap_type(vol: float, eps: float, d: int) -> int:
    """
    Dyadická třída objemu.

    Examples:
        vol = ε^{(d+1)/2} → 0; vol = 8·ε^{(d+1)/2} → 3; vol = 0.999·ε^{(d+1)/2} → −1
    """
    if vol <= 0.0:
        raise GeometryInvalid(f"Typ čepičky vyžaduje kladný objem (dostáno {vol})")
    ratio = vol / eps ** ((d + 1) / 2.0)
    j = math.floor(math.log2(ratio))
    # ochrana proti zaokrouhlení na hranici třídy
    if 2.0 ** (j + 1) <= ratio:
        j += 1
    elif 2.0**j > ratio:
        j -= 1
    return int(j)


def type_volume(j: int, eps: float, d: int) -> float:
    """v_j = 2^j·ε^{(d+1)/2}."""
    return 2.0**j * eps ** ((d + 1) / 2.0)


def type_factor(j: int) -> int:
    """a_j = max(j², 1)."""
    return max(j * j, 1)


def type_width(j: int, eps: float) -> float:
    """w_j = ε / a_j."""
    return eps / type_factor(j)


def type_range(eps: float) -> int:
    """t = ⌈log₂(1/ε)⌉."""
    return max(1, int(math.ceil(math.log2(1.0 / eps))))


def clamp_type(j: int, t: int) -> int:
    return max(-t, min(t, j))


def balance_cap(
    F: Cap,
    eps: float,
    t: int,
    b1: float = DEFAULT_B1,
    b2: float = DEFAULT_B2,
    with_region: bool = True,
) -> TypedCap:
    """
    Vyvážení čepičky šířky ε: C = F^{1/a_j} pro j = typ(F).

    Zmenšení může posunout typ C dál od nuly (záporné typy); pak se F zmenšuje
    znovu s a_j nového typu, dokud a_{typ(C)} ≤ b₂·a. Šířka C je tím nejvýše b₂·w_{typ(C)}.

    Args:
        F: čepička šířky ε
        eps: šířka ε
        t: mez typů
        b1, b2: okno vyváženosti
        with_region: připojit M′(těžiště báze)

    Examples:
        koule: j ≈ 0, a_j = 1 → C = F
        roh čtverce: j = −2 → F^{1/4} má typ −4 → další zmenšení F^{1/16}
    """
    from app.services.caps.cap import expand_cap
    from app.services.caps.macbeath import shrunken_macbeath

    d = F.dim
    factor = type_factor(clamp_type(cap_type(F.volume, eps, d), t))
    for _ in range(t + 2):
        C = expand_cap(F, 1.0 / factor)
        raw_c = cap_type(C.volume, eps, d) if C.volume > 0.0 else -t
        j_c = clamp_type(raw_c, t)
        if type_factor(j_c) <= b2 * factor:
            break
        factor = type_factor(j_c)
    w = type_width(j_c, eps)
    balanced = b1 * w <= C.width * (1.0 + 1e-12) and C.width <= b2 * w * (1.0 + 1e-12)
    region = shrunken_macbeath(C.body, C.base_centroid) if with_region else None
    return TypedCap(cap=C, type_j=j_c, base_centroid=C.base_centroid, shrunken_region=region,
                    balanced=bool(balanced), raw_type=raw_c)


def fit_balance_window(caps: Sequence[TypedCap], eps: float) -> Dict[str, float]:
    """Empirické b₁, b₂: min a max poměru width / w_j přes seznam typovaných čepiček."""
    ratios = np.array([tc.width / type_width(tc.type_j, eps) for tc in caps])
    return {"b1": float(ratios.min()), "b2": float(ratios.max()), "count": int(ratios.shape[0])}


def type_histogram(caps: Sequence[TypedCap]) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for tc in caps:
        counts[tc.type_j] = counts.get(tc.type_j, 0) + 1
    return dict(sorted(counts.items()))


def type_bounds(eps: float, d: int, types: List[int]) -> Dict[int, float]:
    """min(w_j/v_j, v_j/w_j^d) pro každý typ (mez počtu čepiček daného typu)."""
    bounds = {}
    for j in types:
        v, w = type_volume(j, eps, d), type_width(j, eps)
        bounds[j] = min(w / v, v / w**d)
    return bounds
