from .geometry import Halfspace, AffineMap, ComplexityProfile, Polytope
from .canonical import CanonicalForm
from .caps import Cap, MacbeathRegion, PackingEntry, Packing
from .construction import (
    TypedCap,
    CoverEntry,
    BalancedCover,
    LayerSystem,
    CollectorRegion,
    WitnessCollectorSystem,
    ApproximationResult,
)
from .polar import PolarPair, DualCapPolar, CapProductRecord, BaseSandwich
from .experiment import ExperimentRecord, ScalingFit
from .settings import ApproximationSettings
