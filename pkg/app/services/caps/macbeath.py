"""
Macbethovy oblasti M^λ(x) = x + λ((K − x) ∩ (x − K)).

Pro polytop {Ay ≤ b} je M^λ(x) = {y : |⟨a_i, y − x⟩| ≤ λ(b_i − ⟨a_i, x⟩)}.
"""

import logging

import numpy as np

from app.constants.construction import MACBEATH_SHRUNKEN
from app.constants.geometry import BOUNDARY_DEPTH
from app.exceptions import BoundaryPoint, GeometryInvalid, OutsideBody, Unbounded
from app.models.caps import MacbeathRegion
from app.models.geometry import Polytope
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.polytope_body import PolytopeBody
from app.services.bodies.proxy import as_polytope_body
from app.services.geom.hull import halfspace_intersection

logger = logging.getLogger(__name__)

LOCAL_FACETS = 16
"""Počáteční počet nejbližších stěn na dimenzi při výpočtu Macbethovy oblasti"""


def _symmetric_region(normals: np.ndarray, slack: np.ndarray, x: np.ndarray, lam: float) -> Polytope:
    reach = normals @ x
    A = np.vstack([normals, -normals])
    b = np.concatenate([reach + lam * slack, -reach + lam * slack])
    return halfspace_intersection((A, b), interior=x)


def _local_region(normals: np.ndarray, slack: np.ndarray, x: np.ndarray, lam: float) -> Polytope:
    """
    M^λ(x) jen z potřebných stěn.

    Začne se stěnami nejbližšími k x; stěna se sklonem λ·s_i ≥ poloměr oblasti kolem x
    je nadbytečná. Sada se rozšiřuje, dokud takové stěny nechybí.
    """
    order = np.argsort(slack)
    count = min(order.shape[0], LOCAL_FACETS * x.shape[0])
    while True:
        active = order[:count]
        try:
            region = _symmetric_region(normals[active], slack[active], x, lam)
        except Unbounded:
            if count == order.shape[0]:
                raise
            count = min(order.shape[0], 2 * count)
            continue
        radius = float(np.max(np.linalg.norm(region.vertices - x, axis=1)))
        needed = int(np.count_nonzero(lam * slack < radius * (1.0 + 1e-9)))
        if needed <= count:
            return region
        count = needed


def macbeath(K: ConvexBodyOracle, x, lam: float = 1.0) -> MacbeathRegion:
    """
    Macbethova oblast bodu x se škálou λ.

    Args:
        K: těleso (hladká tělesa přes polytopového zástupce s chybou ≤ δ(x)/100)
        x: vnitřní bod
        lam: škála 0 < λ ≤ 1

    Raises:
        BoundaryPoint: δ(x) < 1e−9
        OutsideBody: x neleží v K

    Examples:
        krychle [−1, 1]^d, x = (1 − ε, 0, …), λ = 1 → kvádr [1 − 2ε, 1] × [−1, 1]^{d−1}
    """
    if not 0.0 < lam <= 1.0:
        raise GeometryInvalid(f"Škála Macbethovy oblasti musí ležet v (0, 1] (dostáno {lam})")
    x = np.asarray(x, dtype=float)
    if not K.contains(x):
        raise OutsideBody(f"Střed Macbethovy oblasti {x} neleží v tělese {K.body_id}")
    body = K if isinstance(K, PolytopeBody) else as_polytope_body(K, max(K.depth(x), BOUNDARY_DEPTH))
    P = body.polytope

    slack = P.slack(x)
    depth = float(np.min(slack))
    if depth < BOUNDARY_DEPTH:
        raise BoundaryPoint(f"Bod {x} leží na hranici tělesa (δ = {depth:.3g})")

    region = _local_region(P.normals, slack, x, lam)
    return MacbeathRegion(center=x, scale=float(lam), region=region, volume=region.mass[0], depth=depth)


def shrunken_macbeath(K: ConvexBodyOracle, x) -> MacbeathRegion:
    """M′(x) = M^{1/5}(x)."""
    return macbeath(K, x, MACBEATH_SHRUNKEN)


def in_macbeath(K: ConvexBodyOracle, x, y, lam: float = 1.0, tol: float = 1e-9) -> bool:
    """Příslušnost y ∈ M^λ(x) přímo z orákula: x ± (y − x)/λ ∈ K."""
    x = np.asarray(x, dtype=float)
    step = (np.asarray(y, dtype=float) - x) / lam
    return K.contains(x + step, tol) and K.contains(x - step, tol)
