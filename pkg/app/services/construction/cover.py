"""
Hladové pokrytí vyváženými čepičkami.

Pro každý směr u se vytvoří čepička F šířky ε, vyváží se na A, x je těžiště báze
A^{1/β}. Kandidát se přijme, pokud má M′(x) vnitřek disjunktní se všemi přijatými.
Ukládá se R′ = M′(x) a C′ = A^β.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Dict, List, Optional

import numpy as np

from app.exceptions import BoundaryPoint, EpsilonTooLarge, InvariantViolated, OutsideBody, Unbounded
from app.models.caps import Cap
from app.models.construction import BalancedCover, CoverEntry
from app.models.settings import ApproximationSettings
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.polytope_body import PolytopeBody
from app.services.bodies.proxy import as_polytope_body
from app.services.caps.cap import build_cap, expand_cap
from app.services.caps.macbeath import shrunken_macbeath
from app.services.construction.types import balance_cap, type_range
from app.services.geom.sampling import sphere_directions
from app.services.geom.separation import interiors_disjoint

logger = logging.getLogger(__name__)

PROPERTY_SEED_OFFSET = 7919
"""Posun seedu pro čerstvé směry kontroly vlastnosti 3"""

PROPERTY_NEIGHBOURS = 16
"""Počet prvků pokrytí s nejbližší normálou, které se zkoušejí při kontrole vlastnosti 3"""


def _cap_inside(inner: Cap, outer: Cap) -> bool:
    """Čepičky téhož tělesa: inner ⊆ outer, právě když vrcholy inner leží v poloprostoru outer."""
    vertices = inner.polytope.vertices if inner.polytope is not None else inner.base_vertices
    return outer.halfspace.contains(vertices)


def cover_candidate(body: PolytopeBody, u: np.ndarray, eps: float, t: int,
                    settings: ApproximationSettings) -> Optional[CoverEntry]:
    """
    Kandidát pokrytí ve směru u, nebo None, pokud x padne na hranici.
    """
    F = build_cap(body, u, eps)
    if F.volume <= 0.0:
        return None
    typed = balance_cap(F, eps, t, settings.b1, settings.b2, with_region=False)
    A = typed.cap
    x = expand_cap(A, 1.0 / settings.beta).base_centroid
    try:
        region = shrunken_macbeath(body, x)
    except (BoundaryPoint, OutsideBody, Unbounded) as e:
        logger.debug(f"Kandidát ve směru {u} vynechán: {e}")
        return None
    return CoverEntry(
        typed=replace(typed, base_centroid=x, shrunken_region=region),
        center=x,
        witness=region,
        collector_cap=expand_cap(A, settings.beta),
        direction=u,
    )


def _greedy(candidates: List[Optional[CoverEntry]], accepted: Optional[List[CoverEntry]] = None):
    """Sekvenční přijímání v pořadí směrů; opsané koule slouží jako předfiltr LP testu."""
    accepted = list(accepted or [])
    centers: List[np.ndarray] = [e.center for e in accepted]
    radii: List[float] = [e.witness.region.circumradius(e.center) for e in accepted]
    rejected = skipped = 0
    for entry in candidates:
        if entry is None:
            skipped += 1
            continue
        radius = entry.witness.region.circumradius(entry.center)
        if accepted:
            gaps = np.linalg.norm(np.asarray(centers) - entry.center, axis=1)
            near = np.flatnonzero(gaps < np.asarray(radii) + radius)
            if any(not interiors_disjoint(entry.witness.region, accepted[k].witness.region) for k in near):
                rejected += 1
                continue
        accepted.append(entry)
        centers.append(entry.center)
        radii.append(radius)
    return accepted, rejected, skipped


def extend_cover(cover: BalancedCover, body: PolytopeBody, directions: np.ndarray,
                 settings: ApproximationSettings) -> int:
    """
    Doplní pokrytí kandidáty v zadaných směrech; přidá jen ty, jejichž R′ je vnitřně
    disjunktní se všemi prvky. Vrací počet přidaných.
    """
    with ThreadPoolExecutor(max_workers=max(1, settings.threads)) as pool:
        candidates = list(pool.map(lambda u: cover_candidate(body, u, cover.alpha, cover.t, settings), directions))
    before = len(cover.entries)
    cover.entries, rejected, _ = _greedy(candidates, cover.entries)
    cover.candidates += len(candidates)
    cover.rejected += rejected
    return len(cover.entries) - before


def sandwich_bound(beta: float, d: int) -> float:
    """Mez σ pro C′_i ⊆ (R′_i)^σ: 15·d·(2β² − 1)."""
    return 15.0 * d * (2.0 * beta * beta - 1.0)


def sandwich_sigma(entry: CoverEntry) -> float:
    """Nejmenší σ s C′ ⊆ (R′)^σ kolem x: max přes stěny R′ a vrcholy C′ poměru (⟨a, v⟩ − ⟨a, x⟩)/(b − ⟨a, x⟩)."""
    R, C = entry.witness.region, entry.collector_cap
    reach = R.normals @ entry.center
    vertices = C.polytope.vertices if C.polytope is not None else C.base_vertices
    ratios = (vertices @ R.normals.T - reach) / (R.offsets - reach)
    return float(max(ratios.max(), 1.0))


def check_property2(cover: BalancedCover) -> Dict:
    """
    R′_i ⊆ C′_i (vrcholy R′ v poloprostoru C′) a C′_i ⊆ (R′_i)^σ* se σ* ≤ 15·d·(2β² − 1).

    Změřené σ* se vrací jako sandwich_sigma (maximum přes prvky).
    """
    bound = sandwich_bound(cover.beta, cover.entries[0].center.shape[0]) if cover.entries else 0.0
    not_inside = not_within = 0
    worst = 0.0
    for entry in cover.entries:
        if not entry.collector_cap.halfspace.contains(entry.witness.region.vertices):
            not_inside += 1
        sigma = sandwich_sigma(entry)
        worst = max(worst, sigma)
        if sigma > bound * (1.0 + 1e-9):
            not_within += 1
    return {
        "entries": len(cover.entries),
        "witness_in_collector_failures": not_inside,
        "collector_in_expanded_failures": not_within,
        "sandwich_sigma": worst,
        "sandwich_bound": bound,
        "passed": not_inside == 0 and not_within == 0,
    }


def _property3_direction(body: PolytopeBody, cover: BalancedCover, normals: np.ndarray, u: np.ndarray,
                         settings: ApproximationSettings) -> bool:
    F = build_cap(body, u, cover.alpha)
    if F.volume <= 0.0:
        return True
    C = balance_cap(F, cover.alpha, cover.t, settings.b1, settings.b2, with_region=False).cap
    order = np.argsort(-(normals @ u))[:PROPERTY_NEIGHBOURS]
    for k in order:
        entry = cover.entries[k]
        if not C.halfspace.contains(entry.witness.region.vertices):
            continue
        if not _cap_inside(C, entry.collector_cap):
            continue
        if _cap_inside(expand_cap(entry.collector_cap, 1.0 / cover.sigma), C):
            return True
    return False


def check_property3(body: PolytopeBody, cover: BalancedCover, settings: ApproximationSettings,
                    seed: int = 0) -> Dict:
    """
    Pro čerstvé směry: existuje i s R′_i ⊆ C a C_i^{1/σ} ⊆ C ⊆ C_i, kde C je vyvážená čepička směru.

    Maximalita pokrytí je jen vzhledem ke vzorku směrů, proto se výsledek zaznamenává a nevyhazuje.
    """
    if not cover.entries:
        return {"directions": 0, "failures": 0, "passed": False}
    directions = sphere_directions(settings.property_dirs, body.dim, seed + PROPERTY_SEED_OFFSET)
    normals = np.array([e.direction for e in cover.entries])
    with ThreadPoolExecutor(max_workers=max(1, settings.threads)) as pool:
        found = list(pool.map(lambda u: _property3_direction(body, cover, normals, u, settings), directions))
    failures = int(len(found) - sum(found))
    return {"directions": int(directions.shape[0]), "failures": failures, "passed": failures == 0}


def build_balanced_cover(
    K: ConvexBodyOracle,
    eps: float,
    settings: Optional[ApproximationSettings] = None,
    seed: int = 0,
    n_dirs: Optional[int] = None,
    check_properties: bool = True,
) -> BalancedCover:
    """
    Hladové pokrytí vyváženými čepičkami šířky ε.

    Args:
        K: kanonické těleso (nebo jeho polytopový zástupce)
        eps: šířka čepiček (v konstrukci α = c₀·ε)
        settings: β, σ, b₁, b₂, počet vláken a směrů
        seed: seed pořadí směrů
        n_dirs: přepíše settings.cover_dirs
        check_properties: ověřit vlastnosti 2 a 3

    Raises:
        EpsilonTooLarge: ε mimo (0, Δ₀]
        InvariantViolated: settings.strict a vlastnost 2 nesplněna

    Examples:
        koule d=2: |pokrytí| roste zhruba jako ε^{−1/2}
    """
    settings = settings or ApproximationSettings()
    if eps <= 0.0 or eps > settings.delta0:
        raise EpsilonTooLarge(f"Šířka čepiček pokrytí ε = {eps:g} musí ležet v (0, Δ₀ = {settings.delta0:g}]")
    body = as_polytope_body(K, eps, settings.proxy_max_points)
    t = type_range(eps)
    n_dirs = n_dirs or settings.cover_dirs
    directions = sphere_directions(n_dirs, body.dim, seed)

    with ThreadPoolExecutor(max_workers=max(1, settings.threads)) as pool:
        candidates = list(pool.map(lambda u: cover_candidate(body, u, eps, t, settings), directions))
    entries, rejected, skipped = _greedy(candidates)

    cover = BalancedCover(entries=entries, alpha=eps, t=t, beta=settings.beta, sigma=settings.sigma,
                          candidates=len(candidates), rejected=rejected)
    cover.steps.append({
        "step": "Hladové pokrytí",
        "detail": f"ε={eps:g}, t={t}, {n_dirs} směrů, seed {seed}",
        "result": f"{len(entries)} čepiček, odmítnuto {rejected}, vynecháno {skipped}",
    })
    unbalanced = sum(1 for e in entries if not e.typed.balanced)
    if unbalanced:
        logger.warning(f"Pokrytí {K.body_id}: {unbalanced} čepiček mimo okno vyváženosti")
    cover.steps.append({
        "step": "Okno vyváženosti",
        "detail": f"b₁={settings.b1:g}, b₂={settings.b2:g}",
        "result": "OK" if unbalanced == 0 else f"{unbalanced} mimo okno",
    })

    if check_properties:
        cover.property2 = check_property2(cover)
        cover.property3 = check_property3(body, cover, settings, seed)
        for name, report in (("Vlastnost 2", cover.property2), ("Vlastnost 3", cover.property3)):
            cover.steps.append({"step": name, "detail": str({k: v for k, v in report.items() if k != "passed"}),
                                "result": "OK" if report["passed"] else "SELHALA"})
            if not report["passed"]:
                logger.warning(f"Pokrytí {K.body_id}: {name.lower()} nesplněna {report}")
        if settings.strict and not cover.property2["passed"]:
            raise InvariantViolated(f"Pokrytí {K.body_id} při ε={eps:g}: vlastnost 2 nesplněna {cover.property2}")
    else:
        cover.steps.append({"step": "Vlastnosti 2 a 3", "detail": "kontrola vypnuta", "result": "SKIP"})

    logger.info(f"Pokrytí {K.body_id} při ε={eps:g}: {len(entries)} čepiček, typy {cover.type_counts()}")
    return cover
