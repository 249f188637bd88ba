"""
Hierarchie výjimek capcover.

Všechny výjimky dědí z ValueError, takže volající, kteří zachytávají ValueError,
fungují beze změny. ConfigurationError a její potomci vedou v CLI na návratový kód 3.
"""


class CapCoverError(ValueError):
    """Základní chyba geometrického výpočtu."""


# ============================================================================
# KONFIGURACE
# ============================================================================

class ConfigurationError(CapCoverError):
    """Chybná konfigurace nebo vstup, odmítnutý před výpočtem."""


class EpsilonTooLarge(ConfigurationError):
    """ε je vzhledem k tělesu příliš velké."""


class ConstantsInfeasible(ConfigurationError):
    """Celková mezera vrstev přesahuje ε; je potřeba ladit c₀/c₁."""


class DimensionError(ConfigurationError):
    """Dimenze mimo podporovaný rozsah."""


class BodySpecError(ConfigurationError):
    """Neplatný JSON popis tělesa nebo mřížky."""


# ============================================================================
# GEOMETRIE
# ============================================================================

class DegenerateInput(CapCoverError):
    """Body nejsou afinně plnodimenzionální."""


class Unbounded(CapCoverError):
    """Průnik poloprostorů je neomezený."""


class NotConverged(CapCoverError):
    """Iterace nedosáhla tolerance."""


class OutsideBody(CapCoverError):
    """Bod neleží v tělese."""


class OriginQuery(CapCoverError):
    """Dotaz v počátku, kde není směr definován."""


class DepthTooLarge(CapCoverError):
    """Požadovaná hloubka je větší než hloubka počátku."""


class WidthTooLarge(CapCoverError):
    """Šířka čepičky přesahuje šířku tělesa ve směru."""


class BoundaryPoint(CapCoverError):
    """Bod leží (téměř) na hranici tělesa."""


class CenterNotInterior(CapCoverError):
    """Střed polarity neleží ve vnitřku."""


class OriginPolar(CapCoverError):
    """Polára počátku nebo nadroviny procházející počátkem není definována."""


class GeometryInvalid(CapCoverError):
    """Geometrická konfigurace nesplňuje předpoklady."""


class NotNested(CapCoverError):
    """Vnitřní polytop neleží v tělese."""


# ============================================================================
# KONSTRUKCE
# ============================================================================

class InvariantViolated(CapCoverError):
    """Kontrola vlastnosti konstrukce selhala v přísném režimu."""


class HausdorffExceeded(CapCoverError):
    """Odhad Hausdorffovy vzdálenosti přesáhl povolenou rezervu nad ε."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result
