"""
Inicializace Flask aplikace.

Tento modul obsahuje tovární funkci create_app, která:
1. Inicializuje aplikaci a načítá konfiguraci (proměnné prostředí CAPCOVER_* mají přednost).
2. Nastavuje logování.
3. Inicializuje rozšíření (Cache, Limiter).
4. Registruje blueprinty (health, api) a příkazovou skupinu capcover.
5. Definuje globální obsluhu chyb (404, 429, 500) s JSON odpovědí.
"""

from flask import Flask, current_app, jsonify, request
from .config import environment_overrides, get_config
from .extensions import cache, limiter


def create_app(config_name=None):
    """Tovární funkce pro vytvoření instance aplikace."""
    app = Flask(__name__)

    # Načtení konfigurace podle prostředí
    config = get_config(config_name)
    app.config.from_object(config)
    app.config.update(environment_overrides())

    # === Nastavení logování ===
    from .logging_config import setup_logging
    setup_logging(app)

    # Inicializace rozšíření
    limiter.init_app(app)
    cache.init_app(app)

    # Registrace blueprintů (moduly aplikace)
    from .routes.health import health_bp
    from .routes.api import api_bp

    app.register_blueprint(health_bp)
    app.register_blueprint(api_bp)

    # Příkazová řádka: flask capcover ...
    from .cli import capcover
    app.cli.add_command(capcover)

    # Obsluha chyb (Error Handlers)
    @app.errorhandler(404)
    def page_not_found(e):
        app.logger.warning(f'404 Error: {request.path}')
        return jsonify({"error": "Nenalezeno", "path": request.path}), 404

    @app.errorhandler(500)
    def internal_server_error(e):
        app.logger.error(f'500 Error: {e}', exc_info=True)
        return jsonify({"error": "Interní chyba serveru"}), 500

    # Obsluha překročení rate limitu (Too Many Requests)
    @app.errorhandler(429)
    def ratelimit_handler(e):
        app.logger.warning(f'Rate limit exceeded: {request.remote_addr}')
        return jsonify({"error": "Překročen limit požadavků", "detail": str(e.description)}), 429

    return app


def current_settings(**overrides):
    """
    ApproximationSettings z konfigurace aktivní aplikace.

    Raises:
        ConfigurationError: neplatná hodnota CAPCOVER_*
    """
    from .models.settings import ApproximationSettings

    return ApproximationSettings.from_mapping(current_app.config, **overrides)
