"""
Hlavní výpočetní engine aproximace.

Orchestruje celý postup: kanonizace tělesa, volba konstant, pokrytí vyváženými
čepičkami, soustava vrstev, sestavení svědků a sběračů, výběr bodů S, doplnění
pokrytí ve směrech s nedostatečným pokrytím a převod P = conv(S) zpět.
Základní metody (Dudley, Bronštejn–Ivanov) sdílí kanonizaci a měření.
"""

import logging
import time
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.constants.construction import C0_MAX_SHRINKS, C0_SHRINK_FACTOR, HAUSDORFF_SLACK, METHODS
from app.exceptions import ConfigurationError, ConstantsInfeasible, EpsilonTooLarge, HausdorffExceeded, NotNested
from app.models.canonical import CanonicalForm
from app.models.construction import ApproximationResult, BalancedCover, LayerSystem, WitnessCollectorSystem
from app.models.settings import ApproximationSettings
from app.services.bodies.canonical import to_canonical
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.polytope_body import PolytopeBody
from app.services.bodies.proxy import as_polytope_body
from app.services.construction.assembly import GROWTH_SAMPLE, assemble
from app.services.construction.baselines import bronshteyn_ivanov, dudley
from app.services.construction.cover import build_balanced_cover, extend_cover
from app.services.construction.layers import build_layers, layer_constant
from app.services.construction.verification import membership_matrix
from app.services.geom.hull import convex_hull
from app.services.geom.sampling import sphere_directions
from app.services.geom.transform import apply_map
from app.services.metrics.hausdorff import hausdorff_inner, hausdorff_outer, support_deficits

logger = logging.getLogger(__name__)

EPSILON_MARGIN = 0.98
"""Podíl ε použitý v kanonických souřadnicích (rezerva pro převod zpět)"""

REPAIR_BATCH = 512
"""Nejvýše tolik nejhorších směrů se zkouší v jednom kole doplňování"""


def canonical_epsilon(canon: CanonicalForm, eps: float) -> float:
    """
    ε v kanonických souřadnicích: ε_c = 0.98·ε/‖T⁻¹‖.

    Raises:
        EpsilonTooLarge: ε ≤ 0 nebo ε_c ≥ δ(O)/4 kanonického tělesa
    """
    if eps <= 0.0:
        raise EpsilonTooLarge(f"ε musí být kladné (dostáno {eps:g})")
    eps_c = EPSILON_MARGIN * eps / canon.inverse.operator_norm()
    if eps_c >= canon.inradius / 4.0:
        raise EpsilonTooLarge(
            f"ε = {eps:g} je pro těleso {canon.source.body_id} příliš velké "
            f"(kanonicky {eps_c:.4g} ≥ {canon.inradius / 4.0:.4g})"
        )
    return eps_c


def choose_layers(Kc: ConvexBodyOracle, eps_c: float, gamma: float,
                  settings: ApproximationSettings) -> Tuple[LayerSystem, float, List[Dict]]:
    """
    Zmenšuje c₀, dokud celková mezera vrstev nevyhoví ε.

    Returns:
        (vrstvy, výsledné c₀, protokol)

    Raises:
        ConstantsInfeasible: ani po C0_MAX_SHRINKS zmenšeních
    """
    c1 = layer_constant(settings.b2, gamma)
    c0 = settings.c0
    log = []
    for shrinks in range(C0_MAX_SHRINKS + 1):
        try:
            layers = build_layers(Kc, eps_c, c1, gamma, alpha=c0 * eps_c)
        except ConstantsInfeasible as e:
            logger.debug(f"c₀ = {c0:.4g}: {e}")
            c0 *= C0_SHRINK_FACTOR
            continue
        log.append({"step": "Volba c₀", "detail": f"c₁={c1:.4g}, {shrinks} zmenšení",
                    "result": f"c₀={c0:.4g}, α={c0 * eps_c:.4g}"})
        log.extend(layers.properties["steps"])
        return layers, c0, log
    raise ConstantsInfeasible(f"Mezera vrstev nevyhoví ε = {eps_c:g} ani s c₀ = {c0:.3g}; upravte b₂ nebo c₀")


def stabbing_repair(
    body: PolytopeBody,
    Kc: ConvexBodyOracle,
    cover: BalancedCover,
    layers: LayerSystem,
    eps_c: float,
    settings: ApproximationSettings,
) -> Tuple[WitnessCollectorSystem, Dict]:
    """
    Doplnění pokrytí ve směrech, kde h_K − h_conv(S) přesahuje ε.

    V každém kole se pro nejhorší směry postaví kandidáti pokrytí a přidají se ty,
    jejichž R′ je vnitřně disjunktní se všemi stávajícími.

    Returns:
        (soustava bez měření růstu, záznam {rounds, added, remaining, worst})
    """
    directions = sphere_directions(settings.hausdorff_dirs, body.dim)
    added_total, rounds = 0, 0
    while True:
        system = assemble(body, cover, layers, growth_limit=0)
        deficits = support_deficits(convex_hull(system.centers), Kc, directions)
        bad = np.flatnonzero(deficits > eps_c)
        if bad.shape[0] == 0 or rounds >= settings.repair_rounds:
            break
        rounds += 1
        worst = bad[np.argsort(-deficits[bad])][:REPAIR_BATCH]
        added = extend_cover(cover, body, directions[worst], settings)
        added_total += added
        logger.debug(f"Doplnění {rounds}: {bad.shape[0]} směrů nad ε, přidáno {added}")
        if added == 0:
            break
    remaining = int(bad.shape[0])
    if remaining:
        logger.warning(f"Doplnění pokrytí: {remaining} směrů s deficitem nad ε po {rounds} kolech")
    return system, {"rounds": rounds, "added": added_total, "remaining": remaining,
                    "worst": float(deficits.max())}


def _layer_counts(system: WitnessCollectorSystem) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for j, _ in system.assignment:
        counts[str(j)] = counts.get(str(j), 0) + 1
    return dict(sorted(counts.items(), key=lambda item: int(item[0])))


def _layered(K: ConvexBodyOracle, canon: CanonicalForm, eps: float, eps_c: float,
             settings: ApproximationSettings, seed: int, log: List[Dict]):
    Kc = canon.body
    proxy = as_polytope_body(Kc, eps_c, settings.proxy_max_points)
    layers, c0, layer_log = choose_layers(Kc, eps_c, canon.gamma, settings)
    log.extend(layer_log)

    cover = build_balanced_cover(proxy, layers.alpha, settings, seed)
    log.extend(cover.steps)

    _, repair = stabbing_repair(proxy, Kc, cover, layers, eps_c, settings)
    log.append({"step": "Doplnění pokrytí", "detail": f"{repair['rounds']} kol, přidáno {repair['added']}",
                "result": "OK" if repair["remaining"] == 0 else f"{repair['remaining']} směrů nad ε"})

    system = assemble(proxy, cover, layers, growth_limit=GROWTH_SAMPLE, strict=settings.strict)
    members = membership_matrix(system, system.centers)
    collector_max = int(members.sum(axis=1).max()) if members.size else 0
    constants = {**settings.constants(), "c0": c0, "c1": layers.c1, "alpha": layers.alpha, "gamma": canon.gamma}
    stats = {
        "witness_count": len(system),
        "collector_max_points": collector_max,
        "types": {str(j): n for j, n in cover.type_counts().items()},
        "layers": _layer_counts(system),
        "t": layers.t,
        "layer_properties": {k: v for k, v in layers.properties.items() if k != "steps"},
        "property2": cover.property2,
        "property3": cover.property3,
        "witness_in_layer": int(sum(system.witness_in_layer)),
        "growth_constant": max((g["growth_constant"] for g in system.growth), default=0.0),
        "repair": repair,
        "proxy_vertices": proxy.polytope.n_vertices,
    }
    return convex_hull(system.centers), constants, stats, system


def approximate(
    K: ConvexBodyOracle,
    eps: float,
    settings: Optional[ApproximationSettings] = None,
    seed: int = 0,
    method: str = "layered",
) -> ApproximationResult:
    """
    Aproximace tělesa K polytopem s přesností ε.

    Args:
        K: libovolné plnodimenzionální těleso
        eps: požadovaná Hausdorffova přesnost
        settings: konstanty a rozpočty
        seed: seed všech náhodných a kvazi-náhodných voleb
        method: "layered" (vnitřní, svědci a sběrače), "dudley" (vnější), "bi" (vnitřní síť)

    Raises:
        ConfigurationError: neznámá metoda
        EpsilonTooLarge: ε je vzhledem k tělesu příliš velké
        NotNested: vnitřní aproximace neleží v K
        HausdorffExceeded: odhad vzdálenosti přesáhl HAUSDORFF_SLACK·ε (výsledek je v e.result)
        InvariantViolated: settings.strict a selhala kontrola pokrytí nebo vrstev

    Examples:
        koule d=2, ε = 0.05 → vepsaný mnohoúhelník s Hausdorffovou vzdáleností ≤ 0.05
    """
    if method not in METHODS:
        raise ConfigurationError(f"Neznámá metoda aproximace: {method} (povoleno {', '.join(METHODS)})")
    settings = settings or ApproximationSettings()
    start = time.perf_counter()
    all_log: List[Dict] = []

    canon = to_canonical(K)
    eps_c = canonical_epsilon(canon, eps)
    all_log.append({"step": "Kanonizace", "detail": f"γ={canon.gamma:.4g}, ‖T⁻¹‖={canon.inverse.operator_norm():.4g}",
                    "result": f"ε_c={eps_c:.4g}"})
    if eps_c > settings.delta0:
        all_log.append({"step": "Práh Δ₀", "detail": f"ε_c={eps_c:.4g} > Δ₀={settings.delta0:g}",
                        "result": "předpoklady malých čepiček nejsou zaručeny"})
        logger.warning(f"{K.body_id}: ε_c={eps_c:.4g} přesahuje Δ₀={settings.delta0:g}")

    system = None
    if method == "layered":
        polytope_c, constants, stats, system = _layered(K, canon, eps, eps_c, settings, seed, all_log)
    elif method == "dudley":
        polytope_c, stats = dudley(canon.body, eps_c, settings, seed)
        constants = {"gamma": canon.gamma}
    else:
        polytope_c, stats = bronshteyn_ivanov(canon.body, eps_c, settings)
        constants = {"gamma": canon.gamma}

    polytope = apply_map(canon.inverse, polytope_c)
    if method == "dudley":
        hausdorff_est = hausdorff_outer(polytope, K, settings.hausdorff_dirs, settings.hausdorff_refine)
    else:
        outside = ~K.contains_many(polytope.vertices)
        if np.any(outside):
            raise NotNested(f"{int(outside.sum())} vrcholů aproximace neleží v tělese {K.body_id}")
        hausdorff_est = hausdorff_inner(polytope, K, settings.hausdorff_dirs, settings.hausdorff_refine)

    hausdorff_ok = hausdorff_est <= HAUSDORFF_SLACK * eps
    all_log.append({"step": "Hausdorffova vzdálenost", "detail": f"{hausdorff_est:.6g} vs ε={eps:g}",
                    "result": "OK" if hausdorff_ok else "PŘEKROČENO"})

    profile = polytope.profile
    runtime_ms = (time.perf_counter() - start) * 1000.0
    stats = {**stats, "hausdorff_ok": bool(hausdorff_ok), "epsilon_canonical": eps_c, "steps": all_log}
    stats.setdefault("witness_count", polytope.n_vertices)

    logger.info(f"Aproximace {K.body_id} ({method}) při ε={eps:g}: {profile.vertices} vrcholů, "
                f"{profile.total} stěn celkem, Hausdorff {hausdorff_est:.4g}, {runtime_ms:.0f} ms")
    result = ApproximationResult(
        body=K,
        epsilon=eps,
        method=method,
        seed=seed,
        points=polytope.vertices if system is None else canon.inverse(system.centers),
        polytope=polytope,
        profile=profile,
        hausdorff_est=float(hausdorff_est),
        runtime_ms=runtime_ms,
        constants=constants,
        stats=stats,
        system=system,
    )
    if not hausdorff_ok:
        raise HausdorffExceeded(
            f"{K.body_id}, {method}: odhad Hausdorffovy vzdálenosti {hausdorff_est:.4g} "
            f"přesahuje {HAUSDORFF_SLACK}·ε = {HAUSDORFF_SLACK * eps:.4g}",
            result=result,
        )
    return result
