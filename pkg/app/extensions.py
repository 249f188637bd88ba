"""
Inicializace Flask rozšíření.

Obsahuje definice a konfiguraci Cache (výsledky API) a Limiter (výpočetní endpointy).
"""
from flask_caching import Cache
from flask_limiter import Limiter
from flask_limiter.util import get_remote_address

cache = Cache()

# === Rate Limiter ===
limiter = Limiter(
    key_func=get_remote_address,  # Limituj podle IP adresy
    default_limits=["2000 per day", "200 per hour"],  # Globální limity
)
