"""
Konstanty geometrického jádra.

Tolerance pro incidenci, degeneraci a numerické iterace. Všechna tělesa jsou po kanonizaci
řádu O(1), proto jsou tolerance absolutní.
"""

# ============================================================================
# DIMENZE
# ============================================================================

MIN_DIMENSION = 2
"""Nejmenší podporovaná dimenze prostoru"""

MAX_DIMENSION = 5
"""Největší podporovaná dimenze prostoru (tvrdý kontrakt)"""


# ============================================================================
# TOLERANCE
# ============================================================================

NORMAL_TOLERANCE = 1e-12
"""Odchylka normy jednotkové normály poloprostoru"""

INCIDENCE_TOLERANCE = 1e-9
"""Vrchol ve vzdálenosti do této hodnoty od nadroviny stěny leží na stěně"""

EXACT_FALLBACK_RATIO = 1e-10
"""Relativní velikost determinantu, pod kterou se orientace přepočítá přesně (Fraction)"""

SINGULAR_DETERMINANT = 1e-12
"""Determinant, pod kterým je afinní zobrazení považováno za singulární"""

MAP_ROUNDTRIP_TOLERANCE = 1e-9
"""Povolená chyba složení zobrazení s inverzí"""

SEPARATION_SHRINK = 1.0 - 1e-9
"""Zmenšení obou polytopů kolem středu před LP testem disjunktnosti"""

BOUNDARY_DEPTH = 1e-9
"""Bod s menší hloubkou je považován za hraniční"""


# ============================================================================
# ITERACE
# ============================================================================

BISECTION_ITERATIONS = 80
"""Maximální počet půlení při hledání průsečíku paprsku s hranicí"""

BISECTION_EARLY_EXIT = 1e-12
"""Délka intervalu, při které půlení končí dříve"""

DEPTH_TOLERANCE = 1e-9
"""Přesnost bodu v zadané hloubce (point_at_depth)"""

JOHN_TOLERANCE = 1e-6
"""Tolerance porušení opěrné funkce u vepsaného elipsoidu"""

JOHN_MAX_ROUNDS = 10_000
"""Maximální počet kol přidávání opěrných bodů při hledání Johnova elipsoidu"""

CANONICAL_SAMPLE_DIRECTIONS = 1000
"""Počet směrů pro ověření kanonického tvaru"""

CANONICAL_SLACK = 1e-6
"""Rezerva při ověřování kanonického sendviče"""

DELTA_GRID_DIRECTIONS = 512
"""Hrubá mřížka směrů pro obecný výpočet vzdálenosti od hranice"""
