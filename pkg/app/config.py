import os
from dotenv import load_dotenv

basedir = os.path.abspath(os.path.dirname(os.path.dirname(__file__)))
load_dotenv(os.path.join(basedir, ".env"))

SETTINGS_PREFIX = "CAPCOVER_"
"""Prefix klíčů konfigurace, které se předávají výpočtu (ApproximationSettings)"""


class Config:
    """
    Základní konfigurace pro všechna prostředí.

    Klíče CAPCOVER_* s hodnotou None znamenají výchozí hodnotu z app/constants/.
    Proměnné prostředí CAPCOVER_* mají přednost (viz create_app).
    """
    JSON_AS_ASCII = False
    JSON_SORT_KEYS = False

    # Security limits
    MAX_CONTENT_LENGTH = 2 * 1024 * 1024  # 2 MB (popisy těles a mřížek)

    # Caching výsledků API
    CACHE_TYPE = os.environ.get("CACHE_TYPE", "SimpleCache")
    CACHE_DEFAULT_TIMEOUT = int(os.environ.get("CACHE_DEFAULT_TIMEOUT", 3600))

    # Rate limiting výpočetních endpointů
    RATELIMIT_STORAGE_URI = os.environ.get("RATELIMIT_STORAGE_URI", "memory://")
    API_RATE_LIMIT = os.environ.get("API_RATE_LIMIT", "30 per minute")

    # Výpočet
    CAPCOVER_THREADS = os.cpu_count() or 1
    CAPCOVER_LOG_DIR = None
    CAPCOVER_BETA = None
    CAPCOVER_SIGMA = None
    CAPCOVER_POLAR_C = None
    CAPCOVER_DELTA0 = None
    CAPCOVER_C0 = None
    CAPCOVER_B1 = None
    CAPCOVER_B2 = None
    CAPCOVER_PROXY_MAX_POINTS = None
    CAPCOVER_COVER_DIRS = None
    CAPCOVER_PACKING_DIRS = None
    CAPCOVER_HAUSDORFF_DIRS = None
    CAPCOVER_HAUSDORFF_REFINE = None
    CAPCOVER_PROPERTY_DIRS = None
    CAPCOVER_REPAIR_ROUNDS = None
    CAPCOVER_STRICT = None


class DevelopmentConfig(Config):
    """Konfigurace pro development prostředí."""
    DEBUG = True
    TESTING = False

    # selhané kontroly konstrukce končí výjimkou
    CAPCOVER_STRICT = True


class ProductionConfig(Config):
    """Konfigurace pro production prostředí."""
    DEBUG = False
    TESTING = False

    # Redis cache/limiter (volitelné, pokud je REDIS_URL)
    _redis_url = os.environ.get('REDIS_URL')
    if _redis_url:
        CACHE_TYPE = "RedisCache"
        CACHE_REDIS_URL = _redis_url
        RATELIMIT_STORAGE_URI = _redis_url


class TestingConfig(Config):
    """Konfigurace pro testování: nižší rozpočty vzorkování, aby sada běžela rychle."""
    DEBUG = False
    TESTING = True
    CACHE_TYPE = "NullCache"
    RATELIMIT_ENABLED = False

    CAPCOVER_THREADS = 2
    CAPCOVER_PROXY_MAX_POINTS = 20_000
    CAPCOVER_COVER_DIRS = 1024
    CAPCOVER_PACKING_DIRS = 512
    CAPCOVER_HAUSDORFF_DIRS = 2000
    CAPCOVER_HAUSDORFF_REFINE = 8
    CAPCOVER_PROPERTY_DIRS = 200


# Mapa konfigurací
config_map = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
}


def get_config(config_name=None):
    """Vrátí konfigurační třídu podle jména prostředí."""
    if config_name is not None and not isinstance(config_name, str):
        return config_name

    if config_name is None:
        config_name = os.environ.get('FLASK_ENV', 'development')

    return config_map.get(config_name, DevelopmentConfig)


def environment_overrides(environ=None):
    """Proměnné prostředí CAPCOVER_* (neprázdné), které přepisují konfiguraci."""
    environ = os.environ if environ is None else environ
    return {key: value for key, value in environ.items() if key.startswith(SETTINGS_PREFIX) and value != ""}
