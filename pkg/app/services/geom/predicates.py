"""
Orientační predikáty s adaptivní přesností.

Determinant se nejprve spočte v plovoucí čárce; pokud je jeho velikost pod
EXACT_FALLBACK_RATIO × (Hadamardova mez), přepočte se přesně ve zlomcích.
"""

from fractions import Fraction
from typing import List

import numpy as np

from app.constants.geometry import EXACT_FALLBACK_RATIO


def _exact_determinant(rows: List[List[Fraction]]) -> Fraction:
    """Gaussova eliminace nad racionálními čísly (přesný výsledek)."""
    m = [row[:] for row in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            if factor:
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def determinant_sign(matrix) -> int:
    """Znaménko determinantu čtvercové matice s přesným záložním výpočtem."""
    matrix = np.asarray(matrix, dtype=float)
    det = float(np.linalg.det(matrix))
    scale = float(np.prod(np.maximum(np.linalg.norm(matrix, axis=1), 1e-300)))
    if abs(det) > EXACT_FALLBACK_RATIO * scale:
        return 1 if det > 0 else -1
    exact = _exact_determinant([[Fraction(float(v)) for v in row] for row in matrix])
    return (exact > 0) - (exact < 0)


def orientation(simplex, q) -> int:
    """
    Orientace bodu q vůči nadrovině určené d body simplexu.

    Args:
        simplex: matice (d, d) bodů v R^d
        q: testovaný bod

    Returns:
        +1, −1 nebo 0 (q leží přesně na nadrovině)
    """
    simplex = np.asarray(simplex, dtype=float)
    q = np.asarray(q, dtype=float)
    return determinant_sign(simplex - q)


def affine_rank(points, tol: float = 1e-9) -> int:
    """Afinní dimenze bodové množiny (SVD s relativní tolerancí)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[0] <= 1:
        return 0
    centered = points[1:] - points[0]
    singular = np.linalg.svd(centered, compute_uv=False)
    scale = max(1.0, float(singular[0])) if singular.size else 1.0
    return int(np.sum(singular > tol * scale))


def is_full_dimensional(points) -> bool:
    """
    Ověří afinní plnodimenzionalitu; hraniční případy rozhoduje přesný determinant
    simplexu vybraného z nejvzdálenějších bodů.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n, d = points.shape
    if n < d + 1:
        return False
    if affine_rank(points, tol=1e-6) == d:
        return True
    if affine_rank(points, tol=1e-14) < d:
        return False
    chosen = [0]
    for _ in range(d):
        base = points[chosen]
        if len(chosen) == 1:
            dist = np.linalg.norm(points - base[0], axis=1)
        else:
            q, _ = np.linalg.qr((base[1:] - base[0]).T)
            diff = points - base[0]
            dist = np.linalg.norm(diff - (diff @ q) @ q.T, axis=1)
        chosen.append(int(np.argmax(dist)))
    simplex = points[chosen]
    return determinant_sign(simplex[1:] - simplex[0]) != 0
