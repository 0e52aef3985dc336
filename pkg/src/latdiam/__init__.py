"""latdiam: exact skeletons, diameters, and short-path certificates for
lattice polytopes given by integer vertex sets.

All geometry runs on exact rational arithmetic; nothing is ever rounded.
The package is wrapped by a FastAPI service (``latdiam.service``) and a thin
CLI client (``latdiam.cli``).
"""

__version__ = "0.1.0"

from .errors import InputError, InternalError, VerificationFailure
from .exactlp import LinProgram, LpOutcome, Rational, affine_rank, lp_solve
from .generators import GeneratorSpec, generate
from .paths import (
    BoundCertificate,
    VertexPath,
    construct_path,
    diameter_bound,
    face_route,
    full_dimensionalize,
    min_face,
    monotone_walk,
    verify_certificate,
)
from .polytope import (
    LatticePolytope,
    VertexMap,
    canonicalize_vertices,
    cartesian_product,
    drop_coordinate,
    flip_coordinate,
    scale_to_0k,
)
from .skeleton import (
    DistanceResult,
    Skeleton,
    are_adjacent,
    bfs_distance,
    build_skeleton,
    diameter,
    distance_to_face,
    is_vertex,
)

__all__ = [
    "BoundCertificate",
    "DistanceResult",
    "GeneratorSpec",
    "InputError",
    "InternalError",
    "LatticePolytope",
    "LinProgram",
    "LpOutcome",
    "Rational",
    "Skeleton",
    "VerificationFailure",
    "VertexMap",
    "VertexPath",
    "affine_rank",
    "are_adjacent",
    "bfs_distance",
    "build_skeleton",
    "canonicalize_vertices",
    "cartesian_product",
    "construct_path",
    "diameter",
    "diameter_bound",
    "distance_to_face",
    "drop_coordinate",
    "face_route",
    "flip_coordinate",
    "full_dimensionalize",
    "generate",
    "is_vertex",
    "lp_solve",
    "min_face",
    "monotone_walk",
    "scale_to_0k",
    "verify_certificate",
]
