"""
Disjunktnost polytopů přes přípustnost LP nad spojenou H-reprezentací.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linprog

from app.constants.geometry import SEPARATION_SHRINK
from app.models.geometry import Halfspace, Polytope

logger = logging.getLogger(__name__)


def _shrunk_inequalities(P: Polytope, factor: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    center = P.vertex_mean
    A = P.normals
    b = A @ center + factor * (P.offsets - A @ center)
    vertices = center + factor * (P.vertices - center)
    return A, b, vertices


def _separating_halfspace(vp: np.ndarray, vq: np.ndarray) -> Optional[Halfspace]:
    """Nadrovina ⟨a, x⟩ = β s vrcholy P pod a vrcholy Q nad (maximalizace rezervy t)."""
    d = vp.shape[1]
    # proměnné: a (d), β, t
    cost = np.zeros(d + 2)
    cost[-1] = -1.0
    rows_p = np.hstack([vp, -np.ones((vp.shape[0], 1)), np.ones((vp.shape[0], 1))])
    rows_q = np.hstack([-vq, np.ones((vq.shape[0], 1)), np.ones((vq.shape[0], 1))])
    result = linprog(
        cost,
        A_ub=np.vstack([rows_p, rows_q]),
        b_ub=np.zeros(vp.shape[0] + vq.shape[0]),
        bounds=[(-1.0, 1.0)] * d + [(None, None), (0.0, 1.0)],
        method="highs",
    )
    if result.status != 0 or result.x[-1] <= 0.0:
        return None
    a, beta = result.x[:d], result.x[d]
    if np.linalg.norm(a) == 0.0:
        return None
    return Halfspace.from_vector(a, beta)


def disjoint(P: Polytope, Q: Polytope, shrink: float = 1.0) -> Tuple[bool, Optional[Halfspace]]:
    """
    Rozhodne, zda jsou uzavřené polytopy disjunktní.

    Args:
        P, Q: polytopy stejné dimenze
        shrink: faktor zmenšení obou polytopů kolem jejich středů před testem;
            1.0 = uzavřená sémantika (dotyk = průnik), SEPARATION_SHRINK = disjunktní vnitřky

    Returns:
        (True, oddělující poloprostor obsahující P) nebo (False, None)
    """
    Ap, bp, vp = _shrunk_inequalities(P, shrink)
    Aq, bq, vq = _shrunk_inequalities(Q, shrink)

    # rychlé odmítnutí přes opsané koule
    cp, cq = vp.mean(axis=0), vq.mean(axis=0)
    rp = float(np.max(np.linalg.norm(vp - cp, axis=1)))
    rq = float(np.max(np.linalg.norm(vq - cq, axis=1)))
    gap = float(np.linalg.norm(cq - cp))
    if gap > rp + rq:
        normal = (cq - cp) / gap
        return True, Halfspace(normal, float(normal @ cp) + rp)

    result = linprog(
        np.zeros(P.dim),
        A_ub=np.vstack([Ap, Aq]),
        b_ub=np.concatenate([bp, bq]),
        bounds=[(None, None)] * P.dim,
        method="highs",
    )
    if result.status == 0:
        return False, None
    return True, _separating_halfspace(vp, vq)


def interiors_disjoint(P: Polytope, Q: Polytope) -> bool:
    """Disjunktnost vnitřků (zmenšení o SEPARATION_SHRINK před LP)."""
    return disjoint(P, Q, shrink=SEPARATION_SHRINK)[0]
