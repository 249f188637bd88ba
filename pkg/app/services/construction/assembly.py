"""
Sestavení svědků a sběračů.

Svědek R_i = T_j(R′_i) je M′(x_i) škálovaná do vrstvy svého typu j. Sběrač je
sjednocení kusů E_r^σ ∩ L_r pro r = j, …, t, kde E_r je čepička K_r odříznutá
nadrovinou T_j(H′_i) a H′_i je nadrovina báze C′_i.
"""

import logging
from typing import Dict, List, Optional

import numpy as np
from scipy.optimize import linprog

from app.exceptions import InvariantViolated
from app.models.construction import BalancedCover, CollectorRegion, CoverEntry, LayerSystem, WitnessCollectorSystem
from app.models.geometry import Polytope
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.proxy import as_polytope_body
from app.services.caps.cap import build_cap
from app.services.geom.transform import scale_about

logger = logging.getLogger(__name__)

GAUGE_FACETS = 64
"""Počet nejaktivnějších stěn v LP dolní mezi gauge přes svědka"""

GROWTH_SAMPLE = 32
"""Počet sběračů, u kterých se měří růst objemů kusů"""

LAYER_TOLERANCE = 1e-9
"""Tolerance příslušnosti svědka k vrstvě"""


def polytope_gauge(P: Polytope, points) -> np.ndarray:
    """Gauge ‖y‖_P = max_i ⟨a_i, y⟩/b_i (počátek ve vnitřku P)."""
    return np.max(np.atleast_2d(points) @ P.normals.T / P.offsets, axis=1)


def min_gauge_bound(P: Polytope, region: Polytope, center: np.ndarray, n_facets: int = GAUGE_FACETS) -> float:
    """
    Dolní mez min_{y ∈ region} ‖y‖_P z LP nad podmnožinou stěn P.

    Vynechání stěn maximum jen zmenší, takže optimum LP je platná dolní mez.
    """
    ratios = (P.normals @ center) / P.offsets
    active = np.argsort(-ratios)[:n_facets]
    d = P.dim
    A_gauge = np.hstack([P.normals[active] / P.offsets[active, None], -np.ones((active.shape[0], 1))])
    A_region = np.hstack([region.normals, np.zeros((region.n_facets, 1))])
    cost = np.zeros(d + 1)
    cost[-1] = 1.0
    result = linprog(
        cost,
        A_ub=np.vstack([A_gauge, A_region]),
        b_ub=np.concatenate([np.zeros(active.shape[0]), region.offsets]),
        bounds=[(None, None)] * (d + 1),
        method="highs",
    )
    if result.status != 0:
        return float(polytope_gauge(P, region.vertices).min())
    return float(result.x[-1])


def collector_pieces(entry: CoverEntry, body, layers: LayerSystem, sigma: float) -> CollectorRegion:
    """Kusy sběrače: (r, poloha roviny E_r^σ) pro r = j, …, t."""
    u = entry.direction
    j = entry.type_j
    h_top = body.support(u)[0]
    h_bottom = body.support(-u)[0]
    cut = layers.scale(j) * entry.collector_cap.offset
    pieces = []
    for r in range(j, layers.t + 1):
        s_r = layers.scale(r)
        top = s_r * h_top
        width = top - cut
        pieces.append((r, float(max(top - sigma * width, -s_r * h_bottom))))
    return CollectorRegion(direction=u, type_j=j, pieces=tuple(pieces))


def witness_in_layer(P: Polytope, entry: CoverEntry, layers: LayerSystem) -> bool:
    """
    R ⊆ L_j: vrcholy R′ mají gauge ≤ 1 a min gauge přes R′ je alespoň s_{j−1}/s_j.
    """
    j = entry.type_j
    region = entry.witness.region
    if polytope_gauge(P, region.vertices).max() > 1.0 + LAYER_TOLERANCE:
        return False
    floor = layers.scale(j - 1) / layers.scale(j) if j > -layers.t - 1 else 0.0
    return min_gauge_bound(P, region, entry.center) >= floor - LAYER_TOLERANCE


def _piece_volume(body, u: np.ndarray, s_r: float, width: float) -> float:
    """Objem čepičky s_r·K šířky w = s_r^d·vol(čepička K šířky w/s_r)."""
    return s_r**body.dim * build_cap(body, u, width / s_r).volume


def collector_growth(system: WitnessCollectorSystem, limit: Optional[int] = GROWTH_SAMPLE) -> List[Dict]:
    """
    Růst objemů kusů sběrače: vol(E_r)/vol(E_j) ve srovnání s (r − j)^{3d}.

    Returns:
        pro každý měřený sběrač {collector, type, ratios, growth_constant}, kde
        growth_constant = max_{r>j} vol(E_r)/(vol(E_j)·(r − j)^{3d})
    """
    body, layers = system.body, system.layers
    d = body.dim
    indices = np.arange(len(system.collectors))
    if limit is not None and indices.shape[0] > limit:
        indices = indices[np.linspace(0, indices.shape[0] - 1, limit).astype(int)]
    records = []
    for i in indices:
        collector = system.collectors[i]
        cover_index = system.assignment[i][1]
        u, j = collector.direction, collector.type_j
        cut = layers.scale(j) * system.cut_offsets[cover_index]
        h_top = body.support(u)[0]
        volumes = []
        for r, _ in collector.pieces:
            s_r = layers.scale(r)
            volumes.append(_piece_volume(body, u, s_r, s_r * h_top - cut))
        base = volumes[0]
        ratios = [v / base if base > 0.0 else float("inf") for v in volumes]
        bounds = [ratios[k] / k ** (3 * d) for k in range(1, len(ratios))]
        records.append({
            "collector": int(i),
            "type": int(j),
            "ratios": ratios,
            "growth_constant": max(bounds) if bounds else 0.0,
        })
    return records


def assemble(
    K: ConvexBodyOracle,
    cover: BalancedCover,
    layers: LayerSystem,
    sigma: Optional[float] = None,
    growth_limit: Optional[int] = GROWTH_SAMPLE,
    strict: bool = False,
) -> WitnessCollectorSystem:
    """
    Svědci ve vrstvách a sběrače jako predikáty příslušnosti.

    Args:
        K: těleso, na kterém bylo pokrytí postaveno (polytopový pohled)
        cover: vyvážené pokrytí
        layers: soustava vrstev se stejným α
        sigma: expanze kusů (výchozí σ pokrytí)
        growth_limit: počet sběračů pro měření růstu (None = všechny, 0 = vypnuto)
        strict: svědek mimo svou vrstvu vyhodí InvariantViolated

    Raises:
        InvariantViolated: strict a některý svědek neleží ve své vrstvě

    Examples:
        počet kusů sběrače typu j je t − j + 1
    """
    sigma = cover.sigma if sigma is None else sigma
    body = as_polytope_body(K, layers.alpha)
    P = body.polytope

    witnesses: List[Polytope] = []
    centers, collectors, assignment, in_layer = [], [], [], []
    for i, entry in enumerate(cover.entries):
        s_j = layers.scale(entry.type_j)
        witnesses.append(scale_about(entry.witness.region, s_j))
        centers.append(s_j * entry.center)
        collectors.append(collector_pieces(entry, body, layers, sigma))
        assignment.append((entry.type_j, i))
        in_layer.append(witness_in_layer(P, entry, layers))

    system = WitnessCollectorSystem(
        witnesses=witnesses,
        centers=np.array(centers).reshape(-1, body.dim),
        collectors=collectors,
        assignment=assignment,
        layers=layers,
        body=body,
        witness_in_layer=in_layer,
        cut_offsets=[e.collector_cap.offset for e in cover.entries],
    )
    misplaced = len(in_layer) - sum(in_layer)
    if misplaced:
        logger.warning(f"Sestavení {K.body_id}: {misplaced} svědků mimo svou vrstvu")
        if strict:
            raise InvariantViolated(f"Sestavení {K.body_id}: {misplaced} z {len(in_layer)} svědků mimo svou vrstvu")
    if growth_limit != 0:
        system.growth = collector_growth(system, growth_limit)
    logger.info(f"Sestavení {K.body_id}: {len(witnesses)} svědků, {len(collectors)} sběračů")
    return system
