"""
Numerické kontroly vlastností čepiček a Macbethových oblastí.

Každá kontrola vrací slovník {"name", "passed", "steps", ...metriky}; kroky mají
tvar {"step", "detail", "result"} stejně jako ostatní protokoly výpočtu.
"""

import logging
from typing import Dict, List, Sequence

import numpy as np

from app.constants.construction import DEFAULT_BETA, MACBEATH_SHRUNKEN, PACKING_BOUND_SLACK
from app.models.caps import Cap, Packing
from app.services.bodies.polytope_body import PolytopeBody
from app.services.caps.cap import build_cap, expand_cap
from app.services.caps.macbeath import in_macbeath, macbeath
from app.services.caps.minimal import minimal_cap
from app.services.construction.types import type_volume
from app.services.geom.sampling import random_directions
from app.services.geom.separation import disjoint

logger = logging.getLogger(__name__)


def _report(name: str, passed: bool, steps: List[Dict], **metrics) -> Dict:
    level = logging.DEBUG if passed else logging.WARNING
    logger.log(level, f"Kontrola {name}: {'OK' if passed else 'SELHALA'} {metrics}")
    return {"name": name, "passed": bool(passed), "steps": steps, **metrics}


def random_caps(body: PolytopeBody, n: int, max_width: float, seed: int = 0) -> List[Cap]:
    """n čepiček v náhodných směrech se šířkou rovnoměrně v [max_width/5, max_width]."""
    rng = np.random.default_rng(seed)
    directions = random_directions(n, body.dim, rng)
    widths = rng.uniform(0.2, 1.0, n) * max_width
    return [build_cap(body, u, w) for u, w in zip(directions, widths)]


def _random_interior(body: PolytopeBody, n: int, max_depth: float, rng: np.random.Generator) -> np.ndarray:
    """Body v hloubce (0, max_depth] podél náhodných paprsků z počátku."""
    from app.services.bodies.depth import point_at_depth

    directions = random_directions(n, body.dim, rng)
    depths = rng.uniform(0.1, 1.0, n) * max_depth
    return np.array([point_at_depth(body, u, t) for u, t in zip(directions, depths)])


# ============================================================================
# MACBETHOVY OBLASTI
# ============================================================================

def check_overlap_containment(body: PolytopeBody, n_pairs: int = 100, max_depth: float = 0.05, seed: int = 0) -> Dict:
    """
    Překrývají-li se M′(x) a M′(y), pak M′(y) ⊆ M^{4/5}(x).

    Obsažení v konvexní oblasti stačí ověřit na vrcholech.
    """
    rng = np.random.default_rng(seed)
    points = _random_interior(body, 2 * n_pairs, max_depth, rng)
    steps, tested, violations = [], 0, 0
    for x, y in zip(points[:n_pairs], points[n_pairs:]):
        Mx, My = macbeath(body, x, MACBEATH_SHRUNKEN), macbeath(body, y, MACBEATH_SHRUNKEN)
        if disjoint(Mx.region, My.region)[0]:
            continue
        tested += 1
        if not all(in_macbeath(body, x, v, 4.0 * MACBEATH_SHRUNKEN) for v in My.region.vertices):
            violations += 1
    steps.append({"step": "M′(y) ⊆ M^{4/5}(x)", "detail": f"{n_pairs} dvojic, {tested} překrývajících se",
                  "result": f"{violations} porušení"})
    return _report("overlap_containment", violations == 0, steps, tested=tested, violations=violations)


def check_depth_stability(body: PolytopeBody, n_points: int = 100, max_depth: float = 0.05, seed: int = 0) -> Dict:
    """Pro x′ ∈ M′(x) platí 4δ(x)/5 ≤ δ(x′) ≤ 4δ(x)/3 (vrcholy M′ a náhodné konvexní kombinace)."""
    rng = np.random.default_rng(seed)
    worst_low, worst_high, violations = np.inf, 0.0, 0
    for x in _random_interior(body, n_points, max_depth, rng):
        M = macbeath(body, x, MACBEATH_SHRUNKEN)
        weights = rng.dirichlet(np.ones(M.region.n_vertices), 8)
        samples = np.vstack([M.region.vertices, weights @ M.region.vertices])
        ratios = np.min(body.polytope.slack(samples), axis=1) / M.depth
        worst_low, worst_high = min(worst_low, ratios.min()), max(worst_high, ratios.max())
        violations += int(np.count_nonzero((ratios < 0.8 - 1e-9) | (ratios > 4.0 / 3.0 + 1e-9)))
    steps = [{"step": "Stabilita hloubky v M′(x)", "detail": f"{n_points} středů",
              "result": f"poměr δ(x′)/δ(x) ∈ [{worst_low:.4f}, {worst_high:.4f}]"}]
    return _report("depth_stability", violations == 0, steps,
                   min_ratio=float(worst_low), max_ratio=float(worst_high), violations=violations)


def check_cap_meets_shrunken(body: PolytopeBody, caps: Sequence[Cap], n_points: int = 50, seed: int = 0) -> Dict:
    """Protíná-li čepička C oblast M′(x), leží všechny vrcholy M′(x) v C²."""
    rng = np.random.default_rng(seed)
    max_width = max(c.width for c in caps)
    points = _random_interior(body, n_points, max_width, rng)
    regions = [macbeath(body, x, MACBEATH_SHRUNKEN) for x in points]
    tested, violations = 0, 0
    for C in caps:
        doubled = None
        for M in regions:
            if disjoint(C.polytope, M.region)[0]:
                continue
            tested += 1
            doubled = doubled or expand_cap(C, 2.0)
            if not np.all(doubled.contains_many(M.region.vertices)):
                violations += 1
    steps = [{"step": "M′(x) ∩ C ≠ ∅ ⇒ M′(x) ⊆ C²", "detail": f"{len(caps)} čepiček × {n_points} oblastí",
              "result": f"{tested} protnutí, {violations} porušení"}]
    return _report("cap_meets_shrunken", violations == 0, steps, tested=tested, violations=violations)


def check_cap_in_macbeath(body: PolytopeBody, caps: Sequence[Cap], delta0: float) -> Dict:
    """Čepička šířky ≤ Δ₀ leží v M^{3d}(x), kde x je těžiště její báze."""
    scale = 3.0 * body.dim
    tested, violations, skipped = 0, 0, 0
    for C in caps:
        if C.width > delta0:
            skipped += 1
            continue
        tested += 1
        if not all(in_macbeath(body, C.base_centroid, v, scale) for v in C.polytope.vertices):
            violations += 1
    steps = [{"step": "C ⊆ M^{3d}(těžiště báze)", "detail": f"Δ₀ = {delta0:g}",
              "result": f"{tested} čepiček, {skipped} nad Δ₀, {violations} porušení"}]
    return _report("cap_in_macbeath", violations == 0, steps,
                   tested=tested, skipped_wide=skipped, violations=violations)


def check_width_depth(body: PolytopeBody, gamma: float, n_points: int = 20, max_depth: float = 0.05,
                      seed: int = 0, n_grid: int = 256) -> Dict:
    """
    δ(x) ≤ width(C(x)) ≤ c·δ(x) pro minimální čepičky; c se zaznamená a musí splnit c ≤ 100/γ.
    """
    rng = np.random.default_rng(seed)
    ratios = []
    for x in _random_interior(body, n_points, max_depth, rng):
        C = minimal_cap(body, x, n_grid=n_grid)
        ratios.append(C.width / body.depth(x))
    ratios = np.array(ratios)
    c = float(ratios.max())
    passed = bool(ratios.min() >= 1.0 - 1e-6 and c <= 100.0 / gamma)
    steps = [{"step": "Šířka minimální čepičky vs. δ(x)", "detail": f"{n_points} bodů, mřížka {n_grid}",
              "result": f"poměr ∈ [{ratios.min():.4f}, {c:.4f}], mez 100/γ = {100.0 / gamma:.2f}"}]
    return _report("width_depth", passed, steps, c=c, min_ratio=float(ratios.min()))


# ============================================================================
# ČEPIČKY
# ============================================================================

def check_cap_expansion_volume(caps: Sequence[Cap], rho: float = 2.0) -> Dict:
    """vol(C^ρ) ≤ ρ^d·vol(C) pro ρ ≥ 1."""
    worst, violations = 0.0, 0
    for C in caps:
        if C.volume <= 0.0:
            continue
        ratio = expand_cap(C, rho).volume / (rho ** C.dim * C.volume)
        worst = max(worst, ratio)
        violations += int(ratio > 1.0 + 1e-9)
    steps = [{"step": "Objem ρ-expanze", "detail": f"ρ = {rho:g}, {len(caps)} čepiček",
              "result": f"max vol(C^ρ)/(ρ^d vol C) = {worst:.4f}"}]
    return _report("cap_expansion_volume", violations == 0, steps, worst_ratio=worst, violations=violations)


def check_angle_property(caps: Sequence[Cap], gamma: float, delta0: float) -> Dict:
    """Pro čepičky šířky ≤ Δ₀ kanonického tělesa a body p čepičky platí cos∠(Op, u) ≥ γ/2."""
    worst, violations, tested = 1.0, 0, 0
    for C in caps:
        if C.width > delta0:
            continue
        tested += 1
        V = C.polytope.vertices
        cosines = (V @ C.direction) / np.linalg.norm(V, axis=1)
        worst = min(worst, float(cosines.min()))
        violations += int(cosines.min() < gamma / 2.0 - 1e-9)
    steps = [{"step": "Úhel paprsku z počátku a normály báze", "detail": f"{tested} čepiček, mez γ/2 = {gamma / 2:.4f}",
              "result": f"min cos = {worst:.4f}"}]
    return _report("angle_property", violations == 0, steps, min_cosine=worst, violations=violations)


def check_width_volume(caps: Sequence[Cap]) -> Dict:
    """Odhad konstant c, c′ s c·w^d ≤ vol(C) ≤ c′·w."""
    widths = np.array([C.width for C in caps])
    volumes = np.array([C.volume for C in caps])
    d = caps[0].dim
    c_low = float(np.min(volumes / widths**d))
    c_high = float(np.max(volumes / widths))
    steps = [{"step": "Objem vs. šířka", "detail": f"{len(caps)} čepiček",
              "result": f"c = {c_low:.4g}, c′ = {c_high:.4g}"}]
    return _report("width_volume", bool(c_low > 0.0 and np.isfinite(c_high)), steps, c=c_low, c_prime=c_high)


def check_macbeath_in_double_cap(body: PolytopeBody, caps: Sequence[Cap], per_cap: int = 4, seed: int = 0) -> Dict:
    """x ∈ C ⇒ M(x) ⊆ C² (body x se berou jako konvexní kombinace vrcholů čepičky)."""
    rng = np.random.default_rng(seed)
    tested, violations = 0, 0
    for C in caps:
        doubled = expand_cap(C, 2.0)
        weights = rng.dirichlet(np.ones(C.polytope.n_vertices), per_cap)
        for x in weights @ C.polytope.vertices:
            if body.depth(x) < 1e-9:
                continue
            tested += 1
            if not np.all(doubled.contains_many(macbeath(body, x).region.vertices)):
                violations += 1
    steps = [{"step": "x ∈ C ⇒ M(x) ⊆ C²", "detail": f"{len(caps)} čepiček", "result": f"{tested} bodů, {violations} porušení"}]
    return _report("macbeath_in_double_cap", violations == 0, steps, tested=tested, violations=violations)


def check_expanded_cap_in_macbeath(body: PolytopeBody, caps: Sequence[Cap], rho: float = 2.0) -> Dict:
    """C^ρ ⊆ M^{3d(2ρ−1)}(x) pro x těžiště báze C a ρ ≥ 1."""
    scale = 3.0 * body.dim * (2.0 * rho - 1.0)
    violations = 0
    for C in caps:
        expanded = expand_cap(C, rho)
        if not all(in_macbeath(body, C.base_centroid, v, scale) for v in expanded.polytope.vertices):
            violations += 1
    steps = [{"step": "C^ρ ⊆ M^{3d(2ρ−1)}(x)", "detail": f"ρ = {rho:g}, λ = {scale:g}",
              "result": f"{len(caps)} čepiček, {violations} porušení"}]
    return _report("expanded_cap_in_macbeath", violations == 0, steps, violations=violations)


def containment_factor(inner: Cap, outer: Cap) -> float:
    """Nejmenší β s inner ⊆ outer^β (uzavřený tvar přes nejnižší vrchol inner ve směru outer)."""
    u = outer.direction
    top = outer.body.support(u)[0]
    return float((top - np.min(inner.polytope.vertices @ u)) / outer.width)


def check_cap_containment_beta(body: PolytopeBody, caps: Sequence[Cap], delta0: float,
                               beta_bound: float = DEFAULT_BETA) -> Dict:
    """
    Pro dvojice čepiček šířky ≤ Δ₀, jejichž M′ v těžištích bází se protínají, změří nejmenší β s C₁ ⊆ C₂^β.

    Projde, pokud změřené β nepřesáhne beta_bound (expanze kolektorové čepičky).
    """
    narrow = [C for C in caps if C.width <= delta0]
    regions = [macbeath(body, C.base_centroid, MACBEATH_SHRUNKEN) for C in narrow]
    betas = []
    for i, (Ci, Mi) in enumerate(zip(narrow, regions)):
        for Cj, Mj in zip(narrow[i + 1:], regions[i + 1:]):
            if disjoint(Mi.region, Mj.region)[0]:
                continue
            betas.append(max(containment_factor(Ci, Cj), containment_factor(Cj, Ci)))
    beta = float(max(betas)) if betas else 0.0
    passed = bool(np.isfinite(beta)) and beta <= beta_bound
    steps = [{"step": "Vzájemné obsažení čepiček", "detail": f"{len(narrow)} čepiček, {len(betas)} překrývajících se dvojic",
              "result": f"β = {beta:.4f} vs {beta_bound:g}"}]
    return _report("cap_containment_beta", passed, steps, beta=beta, beta_bound=beta_bound, pairs=len(betas))


# ============================================================================
# PAKOVÁNÍ
# ============================================================================

def class_capacity(j: int, eps: float, d: int) -> float:
    """min(ε/v_j, v_j/ε^d): mez počtu oblastí pakování třídy j až na konstantu."""
    v = type_volume(j, eps, d)
    return min(eps / v, v / eps**d)


def packing_class_ratios(pack: Packing) -> Dict[int, float]:
    """Poměr počtu oblastí třídy j k její kapacitě min(ε/v_j, v_j/ε^d)."""
    from app.services.caps.packing import volume_histogram

    eps, d = pack.epsilon, pack.body.dim
    return {j: n / class_capacity(j, eps, d) for j, n in volume_histogram(pack).items()}


def fit_packing_constant(pack: Packing) -> float:
    """Konstanta třídové meze: největší poměr počtu ke kapacitě přes třídy referenčního pakování."""
    ratios = packing_class_ratios(pack)
    return float(max(ratios.values())) if ratios else 0.0


def total_packing_bound(pack: Packing, constant: float, slack: float = PACKING_BOUND_SLACK) -> Dict:
    """
    Třídová mez pakování: počet oblastí každé třídy j je nejvýše slack·C·min(ε/v_j, v_j/ε^d).

    C se fituje na referenčním pakování (fit_packing_constant) a pro jiná ε se nemění.

    Examples:
        pakování, ze kterého byla C fitována → passed; každá oblast třikrát → passed = False
    """
    eps, d = pack.epsilon, pack.body.dim
    ratios = packing_class_ratios(pack)
    limit = slack * constant
    exceeded = sorted(j for j, r in ratios.items() if r > limit * (1.0 + 1e-12))
    bound = sum(class_capacity(j, eps, d) for j in ratios)
    reference = eps ** (-(d - 1) / 2.0)
    steps = [
        {"step": "Třídová mez pakování", "detail": f"C = {constant:.4g}, rezerva ×{slack:g}, třídy {sorted(ratios)}",
         "result": "OK" if not exceeded else f"překročeno ve třídách {exceeded}"},
        {"step": "Součtová mez pakování", "detail": f"|pakování| = {len(pack)}",
         "result": f"Σ min(ε/v, v/ε^d) = {bound:.3f}, ε^(−(d−1)/2) = {reference:.3f}"},
    ]
    return _report("total_packing_bound", not exceeded, steps, count=len(pack), class_bound=bound,
                   reference=reference, constant=constant, slack=slack,
                   class_ratios={str(j): r for j, r in ratios.items()}, exceeded=exceeded)
