"""
Převod tělesa do γ-kanonického tvaru.

T posune střed Johnova elipsoidu do počátku, elipsoid zobrazí na jednotkovou kouli
a stejnoměrně přeškáluje tak, aby √γ·B ⊆ T(K) ⊆ B/√γ. Hodnota γ se bere
z ověřených krajních hodnot opěrné funkce, ne z teoretické meze 1/d.
"""

import logging
from typing import Tuple

import numpy as np
from scipy.optimize import minimize

from app.constants.geometry import CANONICAL_SAMPLE_DIRECTIONS, CANONICAL_SLACK
from app.models.canonical import CanonicalForm
from app.models.geometry import AffineMap
from app.services.bodies.john import john_ellipsoid
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.geom.sampling import sphere_directions

logger = logging.getLogger(__name__)


def _refined_extreme(K: ConvexBodyOracle, directions: np.ndarray, largest: bool) -> float:
    """Extrém opěrné funkce na sféře: mřížka a Nelder–Mead zpřesnění."""
    sign = -1.0 if largest else 1.0
    values = sign * K.support_many(directions)
    best = np.argsort(values)[:3]

    def objective(v):
        n = np.linalg.norm(v)
        return np.inf if n == 0.0 else sign * K.support(v / n)[0]

    extreme = float(values[best[0]])
    for k in best:
        res = minimize(objective, directions[k], method="Nelder-Mead",
                       options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 2000})
        extreme = min(extreme, float(res.fun))
    return sign * extreme


def support_range(K: ConvexBodyOracle, n_directions: int = CANONICAL_SAMPLE_DIRECTIONS) -> Tuple[float, float]:
    """
    (min_u h_K(u), max_u h_K(u)) přes jednotkové směry.

    Pro polytop s počátkem uvnitř jsou obě hodnoty přesné: min posun stěny a max norma vrcholu.
    """
    polytope = K.exact_polytope()
    if polytope is not None and np.all(polytope.offsets > 0.0):
        return float(np.min(polytope.offsets)), float(np.max(np.linalg.norm(polytope.vertices, axis=1)))
    directions = sphere_directions(n_directions, K.dim)
    return _refined_extreme(K, directions, largest=False), _refined_extreme(K, directions, largest=True)


def to_canonical(K: ConvexBodyOracle, n_check: int = CANONICAL_SAMPLE_DIRECTIONS) -> CanonicalForm:
    """
    Kanonizace tělesa přes Johnův elipsoid.

    Args:
        K: plnodimenzionální omezené těleso
        n_check: počet směrů pro ověření sendviče

    Returns:
        CanonicalForm s T, T⁻¹, γ a tělesem T(K)

    Examples:
        jednotková koule → identita, γ = 1
        elipsoid s poloosami (4, 1) → koule, γ = 1
    """
    E = john_ellipsoid(K)
    root_inv = np.linalg.inv(E.root)
    whitening = AffineMap(root_inv, -root_inv @ E.center)
    whitened = K.transformed(whitening)

    r, R = support_range(whitened, n_check)
    r = min(r, 1.0)
    scale = 1.0 / np.sqrt(r * R)
    T = AffineMap.scaling(scale, K.dim).compose(whitening)
    body = K.transformed(T)

    check = sphere_directions(n_check, K.dim, seed=7)
    sampled = body.support_many(check)
    lo = min(float(sampled.min()), scale * r)
    hi = max(float(sampled.max()), scale * R)
    gamma = min(r / R, lo**2, 1.0 / hi**2, 1.0)
    if lo < np.sqrt(r / R) - CANONICAL_SLACK or hi > np.sqrt(R / r) + CANONICAL_SLACK:
        logger.warning(f"Kanonický sendvič {K.body_id} ověřen jen s γ={gamma:.6g} (odhad {r / R:.6g})")

    logger.info(f"Kanonizace {K.body_id}: γ={gamma:.6g}, |det T|={abs(T.det):.6g}")
    return CanonicalForm(
        map=T,
        inverse=T.inverse(),
        gamma=float(gamma),
        body=body,
        source=K,
        inradius=lo,
        circumradius=hi,
    )
