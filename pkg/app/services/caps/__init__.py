from .cap import make_cap, build_cap, expand_cap, cap_through
from .macbeath import macbeath, shrunken_macbeath, in_macbeath
from .minimal import minimal_cap
from .packing import boundary_packing, volume_histogram
