from .oracle import ConvexBodyOracle
from .analytic import Ball, Box, Ellipsoid, LpBall
from .polytope_body import PolytopeBody, random_polytope
from .transformed import TransformedBody
from .john import john_ellipsoid
from .canonical import to_canonical
from .depth import delta, ray_distance, point_at_depth
from .proxy import polytopal_proxy
from .spec_loader import body_from_spec, load_bodies
