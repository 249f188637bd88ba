"""
Deterministické vzorkování směrů na sféře.

d = 2: rovnoměrné úhly; d = 3: Fibonacciho mřížka; d ≥ 4: skramblovaná Haltonova
posloupnost převedená přes normální kvantily. Seed otáčí mřížku náhodnou rotací.
"""

from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy.stats import norm, qmc, special_ortho_group


def _fibonacci_sphere(n: int) -> np.ndarray:
    offset = 2.0 / n
    increment = np.pi * (3.0 - np.sqrt(5.0))
    i = np.arange(n)
    z = (i * offset - 1.0) + offset / 2.0
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = i * increment
    return np.column_stack([np.cos(phi) * r, np.sin(phi) * r, z])


def _circle(n: int) -> np.ndarray:
    theta = 2.0 * np.pi * (np.arange(n) + 0.5) / n
    return np.column_stack([np.cos(theta), np.sin(theta)])


def _halton_sphere(n: int, d: int, seed: Optional[int]) -> np.ndarray:
    sampler = qmc.Halton(d=d, scramble=True, seed=0 if seed is None else seed)
    u = np.clip(sampler.random(n), 1e-12, 1.0 - 1e-12)
    g = norm.ppf(u)
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def random_rotation(d: int, seed: int) -> np.ndarray:
    """Náhodná rotace SO(d) určená seedem."""
    return special_ortho_group.rvs(d, random_state=seed)


def sphere_directions(n: int, d: int, seed: Optional[int] = None) -> np.ndarray:
    """
    n kvazi-uniformních jednotkových směrů v R^d.

    Args:
        n: počet směrů
        d: dimenze
        seed: None = kanonická poloha mřížky, jinak náhodně otočená mřížka

    Returns:
        matice (n, d)
    """
    if n <= 0:
        return np.zeros((0, d))
    if d == 2:
        dirs = _circle(n)
    elif d == 3:
        dirs = _fibonacci_sphere(n)
    else:
        dirs = _halton_sphere(n, d, seed)
    if seed is not None:
        dirs = dirs @ random_rotation(d, seed).T
    return dirs


def random_directions(n: int, d: int, rng: np.random.Generator) -> np.ndarray:
    """Náhodné (seedované) směry pro Monte Carlo kontroly."""
    g = rng.standard_normal((n, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


@lru_cache(maxsize=4096)
def _frame_cached(key: Tuple[float, ...]) -> np.ndarray:
    u = np.array(key)
    d = u.shape[0]
    e = np.zeros(d)
    e[-1] = 1.0
    v = u - e
    if np.linalg.norm(v) < 1e-14:
        return np.eye(d)
    H = np.eye(d) - 2.0 * np.outer(v, v) / (v @ v)
    # Householder má determinant −1; otočením první osy vznikne rotace
    H[0, :] *= -1.0
    return H


def vertical_frame(u) -> np.ndarray:
    """
    Ortonormální rotace R s R·u = e_d ("vertikální" rámec směru u).

    Rámec se ukládá podle směru, takže opakované výpočty jsou bitově shodné.
    """
    u = np.asarray(u, dtype=float)
    u = u / np.linalg.norm(u)
    return _frame_cached(tuple(float(x) for x in u)).copy()


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)
