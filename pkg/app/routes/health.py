"""
Health check endpoints pro monitoring.
"""
from flask import Blueprint, jsonify, current_app
from app.extensions import cache, limiter
from datetime import datetime, timezone

health_bp = Blueprint('health', __name__)

# Vyjmi health endpoints z rate limitingu
limiter.exempt(health_bp)


def _timestamp():
    return datetime.now(timezone.utc).isoformat()


@health_bp.route('/health')
def health_check():
    """
    Základní health check - rychlá kontrola dostupnosti.
    """
    return jsonify({
        'status': 'healthy',
        'timestamp': _timestamp(),
    }), 200


@health_bp.route('/health/detailed')
def detailed_health_check():
    """
    Detailní health check - kontrola numerického jádra, konfigurace a cache.
    """
    health_status = {
        'status': 'healthy',
        'timestamp': _timestamp(),
        'checks': {}
    }

    # === 1. NUMERICKÉ JÁDRO ===
    try:
        import numpy as np
        from app.services.geom.hull import convex_hull

        square = convex_hull(np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]))
        area = square.mass[0]
        health_status['checks']['geometry'] = {
            'status': 'healthy' if abs(area - 4.0) < 1e-9 else 'unhealthy',
            'numpy': np.__version__,
        }
        if abs(area - 4.0) >= 1e-9:
            health_status['status'] = 'unhealthy'
    except Exception as e:
        current_app.logger.error(f"Health check failed: {e}")
        health_status['status'] = 'unhealthy'
        health_status['checks']['geometry'] = {
            'status': 'unhealthy',
            'error': str(e)
        }

    # === 2. KONFIGURACE ===
    try:
        from app import current_settings

        settings = current_settings()
        health_status['checks']['settings'] = {
            'status': 'healthy',
            'threads': settings.threads,
            'constants': settings.constants(),
        }
    except ValueError as e:
        health_status['status'] = 'unhealthy'
        health_status['checks']['settings'] = {
            'status': 'unhealthy',
            'error': str(e)
        }

    # === 3. CACHE ===
    try:
        cache.set('health_check', 'ok', timeout=5)
        value = cache.get('health_check')

        health_status['checks']['cache'] = {
            'status': 'healthy' if value == 'ok' else 'degraded',
            'type': current_app.config.get('CACHE_TYPE')
        }
    except Exception as e:
        health_status['checks']['cache'] = {
            'status': 'unhealthy',
            'error': str(e)
        }

    status_code = 200 if health_status['status'] == 'healthy' else 503
    return jsonify(health_status), status_code
