"""
Načítání těles z JSON popisu (vstup --body pro CLI a API).

Formát:
    {"type": "ball"|"box"|"ellipsoid"|"lp"|"polytope"|"transformed", "dim": d, ...}

Chyby ve vstupu se hlásí jako BodySpecError (konfigurační chyba, exit kód 3).
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from app.exceptions import BodySpecError, CapCoverError, ConfigurationError
from app.models.geometry import AffineMap
from app.services.bodies.analytic import Ball, Box, Ellipsoid, LpBall
from app.services.bodies.oracle import ConvexBodyOracle, check_body_dimension
from app.services.bodies.polytope_body import PolytopeBody, random_polytope
from app.services.bodies.transformed import TransformedBody

logger = logging.getLogger(__name__)

BODY_TYPES = ("ball", "box", "ellipsoid", "lp", "polytope", "transformed")
"""Podporované typy těles"""


def _require(spec: Dict[str, Any], key: str):
    if key not in spec:
        raise BodySpecError(f"Popis tělesa typu '{spec.get('type')}' postrádá pole '{key}'")
    return spec[key]


def _dimension(spec: Dict[str, Any], fallback=None) -> int:
    d = spec.get("dim", fallback)
    if d is None:
        raise BodySpecError(f"Popis tělesa typu '{spec.get('type')}' postrádá dimenzi 'dim'")
    d = int(d)
    check_body_dimension(d)
    return d


def _vector(value, d: int, name: str) -> np.ndarray:
    vec = np.asarray(value, dtype=float).reshape(-1)
    if vec.shape[0] == 1 and d > 1:
        vec = np.full(d, vec[0])
    if vec.shape[0] != d:
        raise BodySpecError(f"Pole '{name}' má délku {vec.shape[0]}, očekáváno {d}")
    return vec


def body_from_spec(spec: Dict[str, Any]) -> ConvexBodyOracle:
    """
    Vytvoří těleso z JSON slovníku.

    Examples:
        {"type": "ball", "dim": 3, "radius": 1}
        {"type": "box", "dim": 2, "half_widths": [1, 0.01]}
        {"type": "ellipsoid", "dim": 2, "axes": [4, 1]}
        {"type": "lp", "dim": 3, "p": 4}
        {"type": "polytope", "dim": 3, "random": {"n_vertices": 30, "seed": 1}}
        {"type": "transformed", "linear": [[2, 0], [0, 1]], "body": {...}}
    """
    if not isinstance(spec, dict):
        raise BodySpecError(f"Popis tělesa musí být JSON objekt, dostáno {type(spec).__name__}")
    kind = spec.get("type")
    if kind not in BODY_TYPES:
        raise BodySpecError(f"Neznámý typ tělesa: {kind!r} (povoleno {', '.join(BODY_TYPES)})")
    body_id = spec.get("id")

    try:
        if kind == "ball":
            d = _dimension(spec)
            center = _vector(spec.get("center", np.zeros(d)), d, "center")
            return Ball(float(spec.get("radius", 1.0)), center, body_id=body_id)

        if kind == "box":
            d = _dimension(spec)
            widths = _vector(spec.get("half_widths", 1.0), d, "half_widths")
            center = _vector(spec.get("center", np.zeros(d)), d, "center")
            return Box(widths, center, body_id=body_id)

        if kind == "ellipsoid":
            d = _dimension(spec)
            center = _vector(spec.get("center", np.zeros(d)), d, "center")
            if "shape" in spec:
                return Ellipsoid(center, np.asarray(spec["shape"], dtype=float), body_id=body_id)
            axes = _vector(_require(spec, "axes"), d, "axes")
            rotation = spec.get("rotation")
            return Ellipsoid.from_axes(center, axes, None if rotation is None else np.asarray(rotation), body_id)

        if kind == "lp":
            d = _dimension(spec)
            p = _require(spec, "p")
            p = np.inf if str(p).lower() in ("inf", "infinity") else float(p)
            return LpBall(p, d, float(spec.get("radius", 1.0)), body_id=body_id)

        if kind == "polytope":
            if "vertices" in spec:
                from app.services.geom.hull import convex_hull

                vertices = np.atleast_2d(np.asarray(spec["vertices"], dtype=float))
                _dimension(spec, vertices.shape[1])
                return PolytopeBody(convex_hull(vertices), body_id)
            d = _dimension(spec)
            random_spec = _require(spec, "random")
            n = int(_require(random_spec, "n_vertices"))
            if n < d + 1:
                raise BodySpecError(f"Náhodný polytop v R^{d} potřebuje alespoň {d + 1} vrcholů (dostáno {n})")
            return random_polytope(n, d, int(random_spec.get("seed", 0)), body_id)

        inner = body_from_spec(_require(spec, "body"))
        d = inner.dim
        linear = np.asarray(spec.get("linear", np.eye(d)), dtype=float)
        if linear.shape != (d, d):
            raise BodySpecError(f"Lineární část zobrazení má rozměr {linear.shape}, očekáváno {(d, d)}")
        translation = _vector(spec.get("translation", np.zeros(d)), d, "translation")
        return TransformedBody(AffineMap(linear, translation), inner, body_id)

    except ConfigurationError:
        raise
    except CapCoverError as exc:
        raise BodySpecError(f"Neplatné těleso {kind}: {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise BodySpecError(f"Neplatné parametry tělesa {kind}: {exc}") from exc


def load_bodies(source: Union[str, Path, Dict, List]) -> List[ConvexBodyOracle]:
    """
    Načte jedno nebo více těles ze souboru, JSON řetězce nebo již načtené struktury.
    """
    if isinstance(source, (dict, list)):
        data = source
    else:
        text = str(source)
        try:
            is_file = not text.lstrip().startswith(("{", "[")) and Path(text).is_file()
            data = json.loads(Path(text).read_text(encoding="utf-8")) if is_file else json.loads(text)
        except json.JSONDecodeError as exc:
            raise BodySpecError(f"Popis tělesa není platný JSON: {exc}") from exc
        except OSError as exc:
            raise BodySpecError(f"Soubor s tělesem nelze načíst: {exc}") from exc
    items = data if isinstance(data, list) else [data]
    bodies = [body_from_spec(item) for item in items]
    logger.info(f"Načteno {len(bodies)} těles: {', '.join(b.body_id for b in bodies)}")
    return bodies
