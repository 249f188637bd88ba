"""
Konstanty konstrukce aproximace.

Výchozí hodnoty konstant, které jsou v teorii zadány jen existenčně
("dostatečně velká/malá konstanta"). Všechny lze přepsat konfigurací.
"""

# ============================================================================
# KONSTANTY POKRYTÍ A VRSTEV
# ============================================================================

DEFAULT_BETA = 2.0
"""Expanze čepičky pro kolektor (C = A^β) a zmenšení pro střed báze (A^{1/β})"""

DEFAULT_SIGMA = 4.0
"""Expanze čepiček kolektorových kusů E_r^σ"""

DEFAULT_POLAR_C = 8.0
"""Konstanta c zobrazení π: hloubka bodu v polárním tělese je ε/c"""

DEFAULT_DELTA0 = 0.1
"""Prahová šířka Δ₀ pro předpoklady o malých čepičkách"""

DEFAULT_C0 = 0.5
"""Počáteční c₀ (α = c₀·ε) před automatickým zmenšováním"""

C0_SHRINK_FACTOR = 0.8
"""Faktor zmenšení c₀, dokud celková mezera vrstev přesahuje ε"""

C0_MAX_SHRINKS = 60
"""Maximální počet zmenšení c₀"""

DEFAULT_B1 = 1.0 / 16.0
"""Dolní mez okna vyváženosti (šířka ≥ b₁·w_j)"""

DEFAULT_B2 = 2.0
"""Horní mez okna vyváženosti (šířka ≤ b₂·w_j); na kouli je poměr 1, zde s dvojnásobnou rezervou"""

MACBEATH_SHRUNKEN = 0.2
"""Zmenšená Macbeathova oblast M′ = M^{1/5}"""

PACKING_SCALE = 1.0 / 20.0
"""Škála Macbeathových oblastí v balení"""

PACKING_EXPANSION = 4.0
"""Faktor zvětšení oblastí balení (1/20 → 1/5)"""

PACKING_REFERENCE_EPS = 0.05
"""Hloubka pakování, na které se fituje konstanta třídové meze"""

PACKING_BOUND_SLACK = 2.0
"""Násobek fitované konstanty, který smí třída pakování při jiném ε dosáhnout"""


# ============================================================================
# VZORKOVÁNÍ
# ============================================================================

DEFAULT_COVER_DIRECTIONS = 4096
"""Počet směrů pro hladové pokrytí vyváženými čepičkami"""

DEFAULT_PACKING_DIRECTIONS = 2048
"""Počet směrů pro hladové balení"""

MINCAP_DIRECTIONS_LOW = 2048
"""Hrubá mřížka směrů minimální čepičky pro d ≤ 3"""

MINCAP_DIRECTIONS_HIGH = 10_000
"""Hrubá mřížka směrů minimální čepičky pro d ∈ {4, 5}"""

MINCAP_CENTROID_TOLERANCE = 0.02
"""Povolená vzdálenost těžiště báze od x (v násobcích šířky)"""

PROXY_BASE_POINTS = 64
"""Základ počtu opěrných bodů polytopového zástupce: 64·(10/ε)^{(d−1)/2}"""

PROXY_MAX_POINTS = 200_000
"""Horní mez počtu bodů zástupce"""

PROXY_ERROR_FRACTION = 0.01
"""Povolená Hausdorffova chyba zástupce jako podíl ε"""

COVERAGE_RAYS = 10_000
"""Počet náhodných paprsků pro statistiku pokrytí balení"""

PROPERTY_CHECK_DIRECTIONS = 1000
"""Počet čerstvých směrů pro ověření vlastnosti 3 pokrytí"""


# ============================================================================
# METRIKY A EXPERIMENTY
# ============================================================================

HAUSDORFF_DIRECTIONS = 10_000
"""Počet kvazi-uniformních směrů pro odhad Hausdorffovy vzdálenosti"""

HAUSDORFF_REFINE = 32
"""Počet nejhorších směrů lokálně zpřesňovaných"""

HAUSDORFF_SLACK = 1.05
"""Akceptační rezerva Hausdorffova odhadu vůči ε"""

REPAIR_ROUNDS = 3
"""Počet kol doplňování svědků ve směrech s nedostatečným pokrytím"""

BASELINE_REFINE_ROUNDS = 10
"""Počet zjemnění u základních metod (Dudley, Bronshteyn–Ivanov)"""

SVG_WIDTH = 800
"""Šířka SVG grafu"""

SVG_HEIGHT = 600
"""Výška SVG grafu"""

CSV_COLUMNS = [
    "body",
    "dim",
    "eps",
    "method",
    "seed",
    "vertices",
    "total_faces",
    "hausdorff",
    "runtime_ms",
]
"""Přesné pořadí sloupců CSV výstupu"""

METHODS = ("layered", "dudley", "bi")
"""Podporované metody aproximace"""

EXIT_OK = 0
"""Úspěch"""

EXIT_VERIFY_FAILED = 2
"""Porušení invariantu při ověření"""

EXIT_CONFIG_ERROR = 3
"""Chybná konfigurace"""

# ============================================================================
# POLÁRNÍ KONTROLY
# ============================================================================

POLAR_GRID = 512
"""Hrubá mřížka směrů při hledání minimální čepičky v polárním tělese"""

POLAR_CHECK_DIRECTIONS = 256
"""Výchozí počet směrů příkazu polar-check"""

DUAL_CAP_TOLERANCE = 1e-6
"""Povolená odchylka vrcholů při ověření G − h* = α·K̄*"""
