"""
Afinní zobrazení polytopu: vrcholy dopředu, stěny pravidlem inverzní transpozice.
"""

import numpy as np

from app.models.geometry import AffineMap, Polytope


def apply_map(T: AffineMap, P: Polytope) -> Polytope:
    """
    Obraz polytopu T(P); objem se mění faktorem |det T|.

    Stěna {⟨a, x⟩ ≤ b} přejde na {⟨A^{-T} a, y⟩ ≤ b + ⟨a, A^{-1} t⟩}.
    """
    normals = P.normals @ T.inverse_linear
    offsets = P.offsets + normals @ T.translation
    norms = np.linalg.norm(normals, axis=1)
    return Polytope(
        vertices=T(P.vertices),
        normals=normals / norms[:, None],
        offsets=offsets / norms,
        incidence=P.incidence,
    )


def scale_about(P: Polytope, factor: float, center=None) -> Polytope:
    """Stejnoměrné škálování polytopu kolem bodu (výchozí je počátek)."""
    return apply_map(AffineMap.scaling(factor, P.dim, center), P)
