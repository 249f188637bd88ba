"""
Konvexní obal a průnik poloprostorů.

Obal počítá Qhull (scipy.spatial.ConvexHull); jeho simpliciální stěny se slučují
podle sousednosti, pokud leží ve stejné nadrovině do INCIDENCE_TOLERANCE. Průnik
poloprostorů jde přes polaritu: posun vnitřního bodu do počátku, obal polárních
bodů a zpětná dualizace, takže vrcholy, stěny i incidence vzniknou z jednoho obalu.
"""

import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from app.constants.geometry import INCIDENCE_TOLERANCE, MAX_DIMENSION
from app.exceptions import DegenerateInput, DimensionError, GeometryInvalid, Unbounded
from app.models.geometry import Halfspace, Polytope, as_points
from app.services.geom.predicates import is_full_dimensional

logger = logging.getLogger(__name__)

HalfspaceInput = Union[Sequence[Halfspace], Tuple[np.ndarray, np.ndarray]]


def _check_dimension(d: int) -> None:
    if d < 1 or d > MAX_DIMENSION:
        raise DimensionError(f"Nepodporovaná dimenze: {d} (povoleno 2..{MAX_DIMENSION})")


def _merged_facets(points: np.ndarray, tol: float = INCIDENCE_TOLERANCE):
    """
    Obal bodů se sloučenými koplanárními stěnami.

    Returns:
        (indexy vrcholů obalu, normály, posuny, incidence jako množiny indexů do points)
    """
    try:
        hull = ConvexHull(points)
    except QhullError as exc:
        raise DegenerateInput(f"Qhull odmítl vstup: {str(exc).splitlines()[0]}") from exc

    normals = hull.equations[:, :-1]
    offsets = -hull.equations[:, -1]
    m = normals.shape[0]

    # Union-find přes sousední simpliciální stěny se stejnou nadrovinou
    parent = list(range(m))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in hull.neighbors[i]:
            if j < 0 or j <= i:
                continue
            if abs(normals[i] @ normals[j] - 1.0) <= tol and abs(offsets[i] - offsets[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    groups = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)

    vertex_idx = np.array(sorted(hull.vertices), dtype=int)
    hull_points = points[vertex_idx]
    merged_normals, merged_offsets, incidence = [], [], []
    for members in groups.values():
        normal = normals[members].mean(axis=0)
        normal /= np.linalg.norm(normal)
        offset = float(np.max(points @ normal))
        on_facet = np.abs(offset - hull_points @ normal) <= tol * max(1.0, abs(offset))
        merged_normals.append(normal)
        merged_offsets.append(offset)
        incidence.append(frozenset(int(k) for k in vertex_idx[on_facet]))
    return vertex_idx, np.array(merged_normals), np.array(merged_offsets), incidence


def _hull_1d(points: np.ndarray) -> Polytope:
    lo, hi = float(points[:, 0].min()), float(points[:, 0].max())
    if hi - lo <= INCIDENCE_TOLERANCE:
        raise DegenerateInput("Jednorozměrné body nemají kladnou délku")
    return Polytope(
        vertices=np.array([[lo], [hi]]),
        normals=np.array([[-1.0], [1.0]]),
        offsets=np.array([-lo, hi]),
        incidence=(frozenset({0}), frozenset({1})),
    )


def convex_hull(points) -> Polytope:
    """
    Konvexní obal bodů.

    Args:
        points: alespoň d+1 afinně nezávislých bodů v R^d

    Returns:
        Polytop s vrcholy, stěnami a incidencí; všechny vstupní body leží uvnitř.

    Raises:
        DegenerateInput: pokud body nejsou plnodimenzionální
    """
    pts = as_points(points)
    n, d = pts.shape
    _check_dimension(d)
    if d == 1:
        return _hull_1d(pts)
    if not is_full_dimensional(pts):
        raise DegenerateInput(f"Body nejsou plnodimenzionální v R^{d} (počet bodů {n})")

    vertex_idx, normals, offsets, incidence = _merged_facets(pts)
    remap = {int(k): i for i, k in enumerate(vertex_idx)}
    polytope = Polytope(
        vertices=pts[vertex_idx],
        normals=normals,
        offsets=offsets,
        incidence=tuple(frozenset(remap[k] for k in facet) for facet in incidence),
    )
    logger.debug(f"Obal {n} bodů v R^{d}: {polytope.n_vertices} vrcholů, {polytope.n_facets} stěn")
    return polytope


def _as_arrays(halfspaces: HalfspaceInput) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(halfspaces, tuple) and len(halfspaces) == 2 and isinstance(halfspaces[0], np.ndarray):
        A = np.atleast_2d(np.asarray(halfspaces[0], dtype=float))
        b = np.asarray(halfspaces[1], dtype=float).reshape(-1)
    else:
        items = list(halfspaces)
        if not items:
            raise Unbounded("Prázdný seznam poloprostorů")
        A = np.array([h.normal for h in items])
        b = np.array([h.offset for h in items])
    norms = np.linalg.norm(A, axis=1)
    if np.any(norms == 0.0):
        raise GeometryInvalid("Poloprostor s nulovou normálou")
    return A / norms[:, None], b / norms


def chebyshev_center(A: np.ndarray, b: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    Střed a poloměr největší vepsané koule polyedru {Ax ≤ b} (LP).

    Raises:
        Unbounded: pokud je LP neomezené
        GeometryInvalid: pokud je polyedr prázdný
    """
    A = np.atleast_2d(A)
    m, d = A.shape
    norms = np.linalg.norm(A, axis=1)
    cost = np.zeros(d + 1)
    cost[-1] = -1.0
    result = linprog(
        cost,
        A_ub=np.hstack([A, norms[:, None]]),
        b_ub=b,
        bounds=[(None, None)] * d + [(0.0, None)],
        method="highs",
    )
    if result.status == 3:
        raise Unbounded("Průnik poloprostorů je neomezený (Čebyševova koule)")
    if result.status != 0:
        raise GeometryInvalid(f"Průnik poloprostorů je prázdný: {result.message}")
    return result.x[:d], float(result.x[-1])


def _intersection_1d(A: np.ndarray, b: np.ndarray) -> Polytope:
    upper = [bi / ai for ai, bi in zip(A[:, 0], b) if ai > 0]
    lower = [bi / ai for ai, bi in zip(A[:, 0], b) if ai < 0]
    if not upper or not lower:
        raise Unbounded("Jednorozměrný průnik je neomezený")
    lo, hi = max(lower), min(upper)
    if hi - lo <= INCIDENCE_TOLERANCE:
        raise GeometryInvalid("Jednorozměrný průnik je prázdný nebo bodový")
    return _hull_1d(np.array([[lo], [hi]]))


def halfspace_intersection(halfspaces: HalfspaceInput, interior=None) -> Polytope:
    """
    Omezený průnik poloprostorů přes polární dualitu.

    Args:
        halfspaces: seznam Halfspace nebo dvojice (A, b)
        interior: bod striktně uvnitř; None = Čebyševův střed

    Raises:
        Unbounded: duální obal neobsahuje počátek ve vnitřku
        GeometryInvalid: zadaný bod není striktně vnitřní
    """
    A, b = _as_arrays(halfspaces)
    d = A.shape[1]
    _check_dimension(d)
    if d == 1:
        return _intersection_1d(A, b)

    if interior is None:
        interior, radius = chebyshev_center(A, b)
        if radius <= INCIDENCE_TOLERANCE:
            raise GeometryInvalid("Průnik poloprostorů nemá vnitřek")
    interior = np.asarray(interior, dtype=float)
    shifted = b - A @ interior
    if np.any(shifted <= 0.0):
        raise GeometryInvalid(f"Bod {interior} neleží striktně uvnitř všech poloprostorů")

    dual = A / shifted[:, None]
    if dual.shape[0] < d + 1 or not is_full_dimensional(dual):
        raise Unbounded("Polární body nejsou plnodimenzionální: průnik je neomezený")
    dual_vertices, dual_normals, dual_offsets, dual_incidence = _merged_facets(dual)
    if np.any(dual_offsets <= INCIDENCE_TOLERANCE):
        raise Unbounded("Duální obal neobsahuje počátek ve vnitřku: průnik je neomezený")

    # stěna duálu ↔ vrchol primáru, vrchol duálu ↔ stěna primáru
    vertices = interior + dual_normals / dual_offsets[:, None]
    facet_pos = {int(k): i for i, k in enumerate(dual_vertices)}
    incidence: List[set] = [set() for _ in dual_vertices]
    for vertex_index, dual_facet in enumerate(dual_incidence):
        for k in dual_facet:
            incidence[facet_pos[k]].add(vertex_index)

    polytope = Polytope(
        vertices=vertices,
        normals=A[dual_vertices],
        offsets=b[dual_vertices],
        incidence=tuple(frozenset(s) for s in incidence),
    )
    logger.debug(
        f"Průnik {A.shape[0]} poloprostorů v R^{d}: {polytope.n_vertices} vrcholů, "
        f"{polytope.n_facets} nezbytných stěn"
    )
    return polytope


def polytope_from_inequalities(A, b, interior: Optional[np.ndarray] = None) -> Polytope:
    """Zkratka pro halfspace_intersection nad maticemi."""
    return halfspace_intersection((np.asarray(A, dtype=float), np.asarray(b, dtype=float)), interior)
