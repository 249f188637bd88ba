"""
Johnův elipsoid (největší vepsaný elipsoid) konvexního tělesa.

Postup:
1. Analytická tělesa vrací elipsoid v uzavřeném tvaru.
2. Polytop: přímá maximalizace log det L za podmínek ⟨a_i, c⟩ + ‖Lᵀa_i‖ ≤ b_i (SLSQP),
   start z Khachiyanova opsaného elipsoidu zmenšeného faktorem 1/d.
3. Obecné orákulum: řezná metoda; do soustavy se v každém kole přidají opěrné
   poloprostory ve směrech, kde elipsoid nejvíce přesahuje těleso.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize

from app.constants.geometry import JOHN_MAX_ROUNDS, JOHN_TOLERANCE
from app.exceptions import NotConverged
from app.services.bodies.analytic import Ellipsoid
from app.services.bodies.oracle import ConvexBodyOracle
from app.services.geom.sampling import sphere_directions

logger = logging.getLogger(__name__)

CUTS_PER_ROUND = 16
"""Počet nejvíce porušených směrů přidaných v jednom kole řezné metody"""

CHECK_DIRECTIONS = {2: 720, 3: 2000, 4: 4000, 5: 6000}
"""Kontrolní směry pro ověření vepsanosti podle dimenze"""


# ============================================================================
# OPSANÝ ELIPSOID (Khachiyan)
# ============================================================================

def enclosing_ellipsoid(points, tol: float = 1e-7, limits: int = 10000) -> Tuple[np.ndarray, np.ndarray]:
    """
    Opsaný elipsoid minimálního objemu (Khachiyanův algoritmus).

    Returns:
        (A, c) s elipsoidem {x : (x − c)ᵀ A (x − c) ≤ 1}
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    N, d = P.shape
    Q = np.vstack((P.T, np.ones(N)))
    u = np.ones(N) / N
    err = tol + 1.0
    while err > tol and limits > 0:
        X_inv = np.linalg.inv(np.einsum("ij,j,kj", Q, u, Q))
        M = np.einsum("ji,jk,ki->i", Q, X_inv, Q)
        j = int(np.argmax(M))
        step = (M[j] - d - 1.0) / ((d + 1.0) * (M[j] - 1.0))
        new_u = (1.0 - step) * u
        new_u[j] += step
        err = float(np.linalg.norm(new_u - u))
        u = new_u
        limits -= 1
    c = u @ P
    A = np.linalg.inv(np.einsum("ji,j,jk", P, u, P) - np.outer(c, c)) / d
    return A, c


# ============================================================================
# VEPSANÝ ELIPSOID NAD POLOPROSTORY
# ============================================================================

def _unpack(x: np.ndarray, d: int) -> Tuple[np.ndarray, np.ndarray]:
    c = x[:d]
    L = np.zeros((d, d))
    L[np.tril_indices(d)] = x[d:]
    L[np.diag_indices(d)] = np.exp(np.diag(L))
    return c, L


def _pack(c: np.ndarray, L: np.ndarray) -> np.ndarray:
    d = c.shape[0]
    M = L.copy()
    M[np.diag_indices(d)] = np.log(np.diag(L))
    return np.concatenate([c, M[np.tril_indices(d)]])


def _as_ellipsoid(c: np.ndarray, L: np.ndarray) -> Ellipsoid:
    shape = np.linalg.inv(L @ L.T)
    return Ellipsoid(c, 0.5 * (shape + shape.T))


def inscribed_ellipsoid(A: np.ndarray, b: np.ndarray, start: Optional[Ellipsoid] = None) -> Ellipsoid:
    """
    Největší elipsoid c + L·B uvnitř {x : Ax ≤ b} (řádky A jednotkové).

    Raises:
        NotConverged: optimalizace neskončila v přípustném bodě
    """
    d = A.shape[1]
    if start is None:
        from app.services.geom.hull import chebyshev_center

        center, radius = chebyshev_center(A, b)
        c0, L0 = center, np.eye(d) * radius * 0.99
    else:
        c0 = start.center
        L0 = np.linalg.cholesky(start.covariance)

    def objective(x):
        return -float(np.sum(x[d:][_diag_positions(d)]))

    def constraints(x):
        c, L = _unpack(x, d)
        return b - A @ c - np.linalg.norm(A @ L, axis=1)

    result = minimize(
        objective,
        _pack(c0, L0),
        method="SLSQP",
        constraints=[{"type": "ineq", "fun": constraints}],
        options={"maxiter": 500, "ftol": 1e-12},
    )
    c, L = _unpack(result.x, d)

    # zpětná přípustnost: zmenšení L tak, aby platila všechna omezení
    room = b - A @ c
    if np.any(room <= 0.0):
        raise NotConverged(f"Střed vepsaného elipsoidu leží mimo polyedr ({result.message})")
    reach = np.linalg.norm(A @ L, axis=1)
    scale = min(1.0, float(np.min(room / reach)))
    if not result.success:
        logger.warning(f"SLSQP pro vepsaný elipsoid skončil bez konvergence: {result.message}")
    return _as_ellipsoid(c, L * scale)


def _diag_positions(d: int) -> np.ndarray:
    rows, cols = np.tril_indices(d)
    return np.flatnonzero(rows == cols)


# ============================================================================
# JOHNŮV ELIPSOID TĚLESA
# ============================================================================

def john_ellipsoid(
    K: ConvexBodyOracle,
    tol: float = JOHN_TOLERANCE,
    max_rounds: int = JOHN_MAX_ROUNDS,
    use_analytic: bool = True,
) -> Ellipsoid:
    """
    Největší vepsaný elipsoid tělesa K.

    Args:
        K: plnodimenzionální těleso
        tol: povolený přesah h_E(u) − h_K(u) na kontrolních směrech
        max_rounds: maximální počet kol řezné metody
        use_analytic: použít uzavřený tvar, pokud jej těleso zná

    Returns:
        Elipsoid E ⊆ K, pro který platí K ⊆ d·E kolem středu E.

    Raises:
        NotConverged: řezná metoda nedosáhla tolerance

    Examples:
        kvádr [−1, 1]^d → jednotková koule; elipsoid → on sám
    """
    if use_analytic:
        analytic = K.analytic_john()
        if analytic is not None:
            return analytic

    polytope = K.exact_polytope()
    if polytope is not None:
        A_out, c_out = enclosing_ellipsoid(polytope.vertices)
        start = Ellipsoid(c_out, A_out * (K.dim**2) * 1.001)
        E = inscribed_ellipsoid(polytope.normals, polytope.offsets, start)
        logger.debug(f"Johnův elipsoid polytopu {K.body_id}: poloosy {np.sort(E.axes)}")
        return E

    d = K.dim
    check = sphere_directions(CHECK_DIRECTIONS.get(d, 6000), d, seed=1)
    h_check = K.support_many(check)
    normals = sphere_directions(16 * d * d, d)
    offsets = K.support_many(normals)

    A_out, c_out = enclosing_ellipsoid(K.support_points(normals))
    E = Ellipsoid(c_out, A_out * d**2 * 1.001)
    for round_no in range(max_rounds):
        E = inscribed_ellipsoid(normals, offsets, E)
        excess = E.support_many(check) - h_check
        worst = np.argsort(excess)[::-1][:CUTS_PER_ROUND]
        if excess[worst[0]] <= tol:
            logger.debug(f"Johnův elipsoid {K.body_id}: {round_no + 1} kol, {normals.shape[0]} poloprostorů")
            return E
        worst = worst[excess[worst] > tol]
        normals = np.vstack([normals, check[worst]])
        offsets = np.concatenate([offsets, h_check[worst]])
    raise NotConverged(f"Johnův elipsoid tělesa {K.body_id} nekonvergoval po {max_rounds} kolech")
