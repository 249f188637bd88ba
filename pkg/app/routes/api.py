"""
JSON API nad výpočetními službami.

Endpointy zrcadlí podpříkazy CLI approximate, pack, polar-check a verify.
Tělo požadavku: {"body": <popis tělesa>, "eps": ε, ...}.
"""
import json

from flask import Blueprint, current_app, request

from app import current_settings
from app.constants.construction import METHODS, POLAR_CHECK_DIRECTIONS
from app.exceptions import BodySpecError, CapCoverError, ConfigurationError
from app.extensions import cache, limiter
from app.services.bodies.spec_loader import body_from_spec
from app.services.construction.engine import approximate
from app.services.export_service import to_json
from app.services.reports import packing_report, polar_report, verify_report

api_bp = Blueprint("api", __name__, url_prefix="/api")


def _json_response(data, status: int = 200):
    return current_app.response_class(to_json(data), status=status, mimetype="application/json")


def _payload() -> dict:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise BodySpecError("Tělo požadavku musí být JSON objekt")
    if "body" not in data or "eps" not in data:
        raise BodySpecError("Požadavek musí obsahovat pole 'body' a 'eps'")
    return data


def _number(data: dict, key: str, cast, default=None):
    if data.get(key) is None:
        return default
    try:
        return cast(data[key])
    except (TypeError, ValueError):
        raise ConfigurationError(f"Neplatná hodnota pole '{key}': {data[key]!r}")


def _eps(data: dict) -> float:
    eps = _number(data, "eps", float)
    if eps is None:
        raise ConfigurationError("Pole 'eps' nesmí být prázdné")
    return eps


def _cached(compute):
    """Výsledek podle cesty a obsahu požadavku; výpočty jsou deterministické pro daný seed."""
    key = f"api:{request.path}:{json.dumps(request.get_json(silent=True), sort_keys=True)}"
    payload = cache.get(key)
    if payload is None:
        payload = to_json(compute())
        cache.set(key, payload)
    return current_app.response_class(payload, status=200, mimetype="application/json")


@api_bp.errorhandler(ConfigurationError)
def handle_configuration_error(e):
    current_app.logger.warning(f"API: chybná konfigurace: {e}")
    return _json_response({"error": str(e), "kind": type(e).__name__}, 400)


@api_bp.errorhandler(CapCoverError)
def handle_geometry_error(e):
    current_app.logger.warning(f"API: výpočet selhal: {e}")
    return _json_response({"error": str(e), "kind": type(e).__name__}, 422)


@api_bp.route("/approximate", methods=["POST"])
@limiter.limit(lambda: current_app.config["API_RATE_LIMIT"])
def approximate_body():
    """
    Aproximace tělesa.

    Tělo: {"body": {...}, "eps": 0.05, "seed": 0, "method": "layered"}
    """
    data = _payload()
    method = data.get("method", "layered")
    if method not in METHODS:
        raise ConfigurationError(f"Neznámá metoda aproximace: {method}")
    K = body_from_spec(data["body"])

    def compute():
        result = approximate(K, _eps(data), current_settings(), _number(data, "seed", int, 0), method)
        return {**result.to_dict(), "vertices": result.polytope.vertices}

    return _cached(compute)


@api_bp.route("/pack", methods=["POST"])
@limiter.limit(lambda: current_app.config["API_RATE_LIMIT"])
def pack_body():
    """Hraniční pakování. Tělo: {"body": {...}, "eps": 0.05, "dirs": 2048, "seed": 0}"""
    data = _payload()
    K = body_from_spec(data["body"])
    return _cached(lambda: packing_report(K, _eps(data), current_settings(),
                                          _number(data, "seed", int, 0), _number(data, "dirs", int)))


@api_bp.route("/polar-check", methods=["POST"])
@limiter.limit(lambda: current_app.config["API_RATE_LIMIT"])
def polar_check():
    """Součiny čepiček. Tělo: {"body": {...}, "eps": 0.01, "dirs": 256, "c": 8, "seed": 0}"""
    data = _payload()
    c = _number(data, "c", float)
    if c is not None and c <= 0.0:
        raise ConfigurationError(f"Konstanta c musí být kladná (dostáno {c:g})")
    K = body_from_spec(data["body"])
    return _cached(lambda: polar_report(K, _eps(data), current_settings(),
                                        _number(data, "dirs", int, POLAR_CHECK_DIRECTIONS), c,
                                        _number(data, "seed", int, 0)))


@api_bp.route("/verify", methods=["POST"])
@limiter.limit(lambda: current_app.config["API_RATE_LIMIT"])
def verify_body():
    """
    Ověření soustavy svědků a sběračů.

    Tělo: {"body": {...}, "eps": 0.05, "halfspaces": 1000, "seed": 0}; výsledek ověření je
    v poli "passed" (HTTP 200 i při selhání ověření).
    """
    data = _payload()
    K = body_from_spec(data["body"])
    _, report = verify_report(K, _eps(data), current_settings(),
                              _number(data, "seed", int, 0), _number(data, "halfspaces", int, 1000))
    return _json_response(report)
