from .hull import convex_hull, halfspace_intersection, chebyshev_center, polytope_from_inequalities
from .lattice import face_lattice, enumerate_faces
from .measure import volume, centroid
from .separation import disjoint, interiors_disjoint
from .transform import apply_map, scale_about
from .sampling import sphere_directions, random_directions, vertical_frame
