from .duality import polar_body, polar_point, polar_hyperplane, mahler, mahler_band
from .cap_map import pi_map, mahler_cap_product, macbeath_cap_product, base_sandwich, cap_product_sweep
from .dual_cap import dual_cap_polar
