"""Lattice polytopes in V-representation.

A polytope here is a duplicate-free, lexicographically sorted list of integer
points inside the box [0, k]^n, plus a flag saying whether the list is known
to be exactly the set of hull vertices.  Every transform (coordinate flip,
coordinate drop, product, half-integral scaling) re-canonicalizes the point
order, so indices and serialized files are reproducible.

The grid bound k is declared metadata, not the observed coordinate spread:
diameter bounds depend on the declared grid, and flips reflect inside it.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


@dataclass(frozen=True)
class LatticePolytope:
    """Integer point set in [0, k]^ambient_dim whose hull is the polytope."""

    ambient_dim: int
    k: int
    points: tuple
    vertices_confirmed: bool = False

    def __post_init__(self):
        if self.ambient_dim < 0:
            raise InputError("ambient_dim must be nonnegative")
        if self.k < 0:
            raise InputError("grid bound k must be nonnegative")
        cleaned = set()
        for pt in self.points:
            row = tuple(int(c) for c in pt)
            if any(a != b for a, b in zip(row, pt)):
                raise InputError(f"non-integer coordinate in point {pt!r}")
            if len(row) != self.ambient_dim:
                raise InputError("point length does not match ambient_dim")
            if any(c < 0 or c > self.k for c in row):
                raise InputError(f"point {row!r} lies outside [0, {self.k}]^n")
            cleaned.add(row)
        if not cleaned:
            raise InputError("a polytope needs at least one point")
        object.__setattr__(self, "points", tuple(sorted(cleaned)))

    def index_of(self, pt) -> int:
        """Index of a point in the canonical (lex-sorted) order."""
        pt = tuple(pt)
        i = bisect_left(self.points, pt)
        if i == len(self.points) or self.points[i] != pt:
            raise InputError(f"{pt!r} is not a point of this polytope")
        return i


@dataclass(frozen=True)
class VertexMap:
    """Index map from a transformed polytope's vertices back to the source."""

    forward: dict  # image index -> source index
    description: str
    bijective: bool


def canonicalize_vertices(p: LatticePolytope) -> LatticePolytope:
    """Keep exactly the hull vertices of the point set; idempotent.

    A point survives iff it is not a convex combination of the others, decided
    by exact LP feasibility.
    """
    from .skeleton import is_vertex  # local import to avoid a module cycle

    keep = [pt for pt in p.points if is_vertex(p.points, pt)]
    return LatticePolytope(p.ambient_dim, p.k, tuple(keep), vertices_confirmed=True)


def flip_coordinate(p: LatticePolytope, i: int):
    """Reflect coordinate i (0-based) inside the declared grid: x_i -> k - x_i.

    An involution and a unimodular affine bijection, so vertex status and the
    skeleton survive; the returned VertexMap carries the index bijection.
    """
    if not 0 <= i < p.ambient_dim:
        raise InputError(f"coordinate index {i} out of range")
    mapped = [pt[:i] + (p.k - pt[i],) + pt[i + 1:] for pt in p.points]
    q = LatticePolytope(p.ambient_dim, p.k, tuple(mapped), p.vertices_confirmed)
    forward = {q.index_of(m): src for src, m in enumerate(mapped)}
    return q, VertexMap(forward, f"flip({i})", bijective=True)


def drop_coordinate(p: LatticePolytope, i: int):
    """Project onto the hyperplane of the remaining coordinates.

    When two source points collide the map is flagged non-bijective; callers
    that need a skeleton-preserving projection must reject such drops.
    """
    if not 0 <= i < p.ambient_dim:
        raise InputError(f"coordinate index {i} out of range")
    mapped = [pt[:i] + pt[i + 1:] for pt in p.points]
    bijective = len(set(mapped)) == len(mapped)
    q = LatticePolytope(p.ambient_dim - 1, p.k, tuple(set(mapped)), vertices_confirmed=False)
    forward = {}
    for src, m in enumerate(mapped):
        forward.setdefault(q.index_of(m), src)
    return q, VertexMap(forward, f"drop({i})", bijective=bijective)


def cartesian_product(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    """Concatenate coordinates; the vertex set is the product of vertex sets."""
    if not (p.vertices_confirmed and q.vertices_confirmed):
        raise InputError("cartesian_product needs vertex-confirmed factors")
    pts = tuple(a + b for a in p.points for b in q.points)
    return LatticePolytope(
        p.ambient_dim + q.ambient_dim, max(p.k, q.k), pts, vertices_confirmed=True
    )


def scale_to_0k(points) -> LatticePolytope:
    """Double a half-integral point list ({0, 1/2, 1} coordinates) to a (0,2) grid.

    Scaling is affine, so the hull, vertex set, and skeleton are unchanged up
    to the coordinate doubling.
    """
    pts = [tuple(pt) for pt in points]
    if not pts:
        raise InputError("scale_to_0k needs at least one point")
    scaled = []
    for pt in pts:
        row = []
        for c in pt:
            f = Fraction(c)
            if f not in (Fraction(0), Fraction(1, 2), Fraction(1)):
                raise InputError(f"coordinate {c!r} is not in {{0, 1/2, 1}}")
            row.append(int(2 * f))
        scaled.append(tuple(row))
    return LatticePolytope(len(pts[0]), 2, tuple(scaled), vertices_confirmed=False)


def min_grid_bound(points) -> int:
    """Smallest k with all coordinates in [0, k]."""
    return max((c for pt in points for c in pt), default=0)


# --- Polytope JSON format ---------------------------------------------------
# Integer variant: {"ambient_dim": n, "k": k, "points": [[int, ...], ...]}.
# Half-integral variant: coordinates encoded as the strings "0", "1/2", "1";
# it is loaded through scale_to_0k and comes back as a (0,2)-polytope.


def polytope_to_json(p: LatticePolytope) -> dict:
    return {
        "ambient_dim": p.ambient_dim,
        "k": p.k,
        "points": [list(pt) for pt in p.points],
    }


def polytope_from_json(obj) -> LatticePolytope:
    if not isinstance(obj, dict):
        raise InputError("polytope JSON must be an object")
    try:
        n = int(obj["ambient_dim"])
        k = int(obj["k"])
        points = obj["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed polytope JSON: {exc}") from exc
    if not isinstance(points, list) or not points:
        raise InputError("polytope JSON needs a nonempty points array")
    if any(isinstance(c, str) for pt in points for c in pt):
        half = [[Fraction(c) for c in pt] for pt in points]
        p = scale_to_0k(half)
        if p.ambient_dim != n:
            raise InputError("ambient_dim does not match point length")
        return p
    return LatticePolytope(n, k, tuple(tuple(pt) for pt in points))


def dumps_canonical(obj) -> str:
    """Deterministic JSON serialization used for every file this tool writes."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
