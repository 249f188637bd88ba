"""
Svaz stěn polytopu.

Stěny jsou všechny neprázdné průniky množin vrcholů stěn (uzávěr vůči průniku),
bez duplicit; dimenze stěny je afinní dimenze jejích vrcholů.
"""

import logging
from typing import Dict, FrozenSet, List, Set

from app.models.geometry import ComplexityProfile, Polytope
from app.services.geom.predicates import affine_rank

logger = logging.getLogger(__name__)


def enumerate_faces(P: Polytope) -> Dict[int, Set[FrozenSet[int]]]:
    """
    Vrátí všechny vlastní stěny seskupené podle dimenze.

    Průniky se počítají jen se stěnami, které s danou stěnou sdílí aspoň jeden vrchol.
    """
    facets = [f for f in P.incidence if f]
    facets_of_vertex: Dict[int, List[int]] = {}
    for idx, facet in enumerate(facets):
        for v in facet:
            facets_of_vertex.setdefault(v, []).append(idx)

    all_faces: Set[FrozenSet[int]] = set(facets)
    frontier = set(facets)
    while frontier:
        discovered = set()
        for face in frontier:
            candidates = {g for v in face for g in facets_of_vertex.get(v, [])}
            for g in candidates:
                meet = face & facets[g]
                if meet and meet != face and meet not in all_faces:
                    discovered.add(meet)
        all_faces |= discovered
        frontier = discovered

    by_dim: Dict[int, Set[FrozenSet[int]]] = {k: set() for k in range(P.dim)}
    for face in all_faces:
        k = affine_rank(P.vertices[sorted(face)])
        if k < P.dim:
            by_dim[k].add(face)
    return by_dim


def face_lattice(P: Polytope) -> ComplexityProfile:
    """
    f-vektor polytopu (počty stěn dimenzí 0..d−1).

    Examples:
        Krychle v R^3 → (8, 12, 6), celkem 26.
    """
    by_dim = enumerate_faces(P)
    profile = ComplexityProfile(tuple(len(by_dim[k]) for k in range(P.dim)))
    logger.debug(f"Svaz stěn: f = {profile.f_vector}, celkem {profile.total}")
    return profile
