"""
Konstrukce čepiček a jejich ρ-expanzí.

Čepička se počítá na polytopovém pohledu tělesa: stěny, které zasahují nad rovinu
řezu, plus samotný řez. Báze je stěna řezu, vyjádřená i ve vodorovných souřadnicích
vertikálního rámce směru u.
"""

import logging

import numpy as np

from app.constants.geometry import INCIDENCE_TOLERANCE
from app.exceptions import WidthTooLarge
from app.models.caps import Cap
from app.models.geometry import Halfspace, Polytope
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.bodies.polytope_body import PolytopeBody
from app.services.bodies.proxy import as_polytope_body
from app.services.geom.hull import convex_hull, halfspace_intersection
from app.services.geom.predicates import affine_rank
from app.services.geom.sampling import unit, vertical_frame

logger = logging.getLogger(__name__)

DEGENERATE_WIDTH = 1e-12
"""Čepička užší než tato hodnota je degenerovaná (objem 0, báze = opěrná stěna)"""


def _cut(P: Polytope, u: np.ndarray, offset: float) -> Polytope:
    """P ∩ {⟨u, x⟩ ≥ offset}; ponechá jen stěny s vrcholem nad řezem."""
    above = P.vertices @ u > offset + INCIDENCE_TOLERANCE
    keep = np.flatnonzero(P.incidence_matrix @ above.astype(float) > 0.0)
    A = np.vstack([P.normals[keep], -u[None, :]])
    b = np.concatenate([P.offsets[keep], [-offset]])
    return halfspace_intersection((A, b))


def _base(vertices: np.ndarray, u: np.ndarray, offset: float):
    """Báze čepičky: (vrcholy v R^d, vodorovné souřadnice, těžiště, (d−1)-objem)."""
    d = u.shape[0]
    on_plane = np.abs(vertices @ u - offset) <= max(INCIDENCE_TOLERANCE, 1e-9 * abs(offset))
    base = vertices[on_plane]
    R = vertical_frame(u)
    coords = (base @ R.T)[:, : d - 1]
    if base.shape[0] >= d and affine_rank(coords) == d - 1:
        Q = convex_hull(coords)
        base_volume, centroid_coords = Q.mass
        centroid = R.T @ np.concatenate([centroid_coords, [offset]])
        return base, coords, centroid, float(base_volume)
    return base, coords, base.mean(axis=0), 0.0


def build_cap(body: PolytopeBody, u, width: float) -> Cap:
    """
    Čepička polytopového tělesa s šířkou ořezanou na [0, plná šířka].
    """
    u = unit(u)
    P = body.polytope
    h_top, apex = P.support(u)
    full_width = h_top + P.support(-u)[0]
    width = float(min(max(width, 0.0), full_width))
    offset = h_top - width
    halfspace = Halfspace(-u, -offset)

    if width <= DEGENERATE_WIDTH:
        base_vertices = P.vertices[P.vertices @ u >= h_top - INCIDENCE_TOLERANCE]
        R = vertical_frame(u)
        return Cap(body, u, 0.0, full_width, halfspace, apex, None, base_vertices,
                   (base_vertices @ R.T)[:, :-1], base_vertices.mean(axis=0), 0.0, 0.0)

    polytope = P if width >= full_width else _cut(P, u, offset)
    base_vertices, coords, centroid, base_volume = _base(polytope.vertices, u, offset)
    return Cap(
        body=body,
        direction=u,
        width=width,
        full_width=full_width,
        halfspace=halfspace,
        apex=np.asarray(apex, dtype=float),
        polytope=polytope,
        base_vertices=base_vertices,
        base_coords=coords,
        base_centroid=centroid,
        base_volume=base_volume,
        volume=polytope.mass[0],
    )


def make_cap(K: ConvexBodyOracle, u, w: float) -> Cap:
    """
    Čepička tělesa K šířky w s bází kolmou na u.

    Hladká tělesa se nahrazují vnitřním polytopovým zástupcem s chybou ≤ w/100.

    Raises:
        WidthTooLarge: w ≤ 0 nebo w ≥ šířka tělesa ve směru u

    Examples:
        koule d=2, u = e_2, w = 0.1 → báze je tětiva délky 2√0.19
        krychle [−1, 1]^d, u = e_1, w = ε → deska objemu ε·2^{d−1}
    """
    body = as_polytope_body(K, w)
    u = unit(u)
    full_width = body.width(u)
    if w <= 0.0 or w >= full_width:
        raise WidthTooLarge(f"Šířka čepičky {w:g} mimo interval (0, {full_width:g}) ve směru {u}")
    return build_cap(body, u, w)


def expand_cap(C: Cap, rho: float) -> Cap:
    """
    ρ-expanze C^ρ: stejný směr, šířka min(ρ·w, plná šířka).

    Examples:
        ρ = 1 → stejná čepička; deska krychle při ρ = 2 → dvojnásobný objem
    """
    if rho < 0.0:
        raise WidthTooLarge(f"Faktor expanze musí být nezáporný (dostáno {rho})")
    if rho == 1.0:
        return C
    return build_cap(C.body, C.direction, rho * C.width)


def cap_through(K: ConvexBodyOracle, u, x) -> Cap:
    """Čepička se směrem u, jejíž báze prochází bodem x."""
    body = K if isinstance(K, PolytopeBody) else as_polytope_body(K, K.depth(x))
    u = unit(u)
    return build_cap(body, u, body.support(u)[0] - float(u @ np.asarray(x, dtype=float)))
