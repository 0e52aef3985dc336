"""Exact 1-skeletons: vertex tests, edge tests, BFS distances, diameters.

Two vertices u, v of a polytope P = conv(V) are adjacent iff the segment
[u, v] is a face of P, i.e. iff some linear functional c has c(v-u) = 0 and
c(w-u) >= 1 for every other vertex w (the +1 margin is equivalent to strict
positivity because the vertex set is finite and rational).  By LP duality
that system is feasible iff the line through u and v misses the convex hull
of the remaining vertices, so the decision is made by one small-basis exact
feasibility LP in convex multipliers; the functional form stays available as
``edge_witness_program`` for certificates and cross-checks.

Skeletons are cached per canonical point tuple: path construction re-queries
adjacency heavily, and the cache behaves as a write-once map under a lock.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass


from .errors import InputError, InternalError
from .exactlp import LinProgram, lp_solve
from .polytope import LatticePolytope


@dataclass(frozen=True)
class Skeleton:
    """Adjacency lists (sorted, symmetric, irreflexive) over vertex indices."""

    vertex_count: int
    adjacency: tuple


@dataclass(frozen=True)
class DistanceResult:
    source: int
    target: int
    distance: int | None  # None when unreachable


_cache_lock = threading.Lock()
_skeleton_cache: dict = {}


def clear_skeleton_cache():
    with _cache_lock:
        _skeleton_cache.clear()


def is_vertex(points, p) -> bool:
    """True iff p is not a convex combination of the other points.

    Feasibility of {lambda >= 0, sum lambda = 1, sum lambda w = p} over the
    other points w decides it: infeasible means p is a hull vertex.
    """
    pts = [tuple(q) for q in points]
    p = tuple(p)
    if p not in pts:
        raise InputError(f"{p!r} is not in the point list")
    others = [q for q in pts if q != p]
    if not others:
        return True
    n = len(p)
    constraints = [((1,) * len(others), "=", 1)]
    for j in range(n):
        constraints.append((tuple(w[j] for w in others), "=", p[j]))
    program = LinProgram.build(len(others), constraints, var_sign="nonneg")
    return lp_solve(program).status == "infeasible"


def edge_witness_program(points, iu, iv) -> LinProgram:
    """LP over a free functional c certifying that [u, v] is an edge.

    Feasible iff c(v-u) = 0 and c(w-u) >= 1 for every other vertex w; any
    feasible point is a supporting-direction certificate for the edge.
    """
    pts = [tuple(q) for q in points]
    u, v = pts[iu], pts[iv]
    n = len(u)
    constraints = [(tuple(v[j] - u[j] for j in range(n)), "=", 0)]
    for t, w in enumerate(pts):
        if t in (iu, iv):
            continue
        constraints.append((tuple(w[j] - u[j] for j in range(n)), ">=", 1))
    return LinProgram.build(n, constraints, var_sign="free")


def _line_hits_hull(points, iu, iv) -> bool:
    """Does the line through u and v meet conv(points minus {u, v})?

    This is the Farkas complement of the edge-witness system: the witness LP
    is feasible exactly when this one is not, so edges are decided with a
    basis of only ambient_dim + 1 rows.
    """
    pts = points
    u, v = pts[iu], pts[iv]
    n = len(u)
    others = [w for t, w in enumerate(pts) if t not in (iu, iv)]
    if not others:
        return False
    m = len(others)
    # Variables: convex multipliers y_w >= 0, free line parameter t.
    constraints = [((1,) * m + (0,), "=", 1)]
    for j in range(n):
        row = tuple(w[j] for w in others) + (-(v[j] - u[j]),)
        constraints.append((row, "=", u[j]))
    program = LinProgram.build(m + 1, constraints, var_sign=("nonneg",) * m + ("free",))
    return lp_solve(program).status == "feasible"


def are_adjacent(p: LatticePolytope, u: int, v: int) -> bool:
    """True iff the segment between vertices u and v is an edge of p."""
    if u == v:
        raise InputError("adjacency needs two distinct vertices")
    if not p.vertices_confirmed:
        raise InputError("are_adjacent needs a vertex-confirmed polytope")
    count = len(p.points)
    if not (0 <= u < count and 0 <= v < count):
        raise InputError("vertex index out of range")
    return not _line_hits_hull(p.points, u, v)


def build_skeleton(p: LatticePolytope, use_cache: bool = True) -> Skeleton:
    """Adjacency over all vertex pairs; asserts symmetry and connectivity."""
    if not p.vertices_confirmed:
        raise InputError("build_skeleton needs a vertex-confirmed polytope")
    key = p.points
    if use_cache:
        with _cache_lock:
            hit = _skeleton_cache.get(key)
        if hit is not None:
            return hit
    count = len(key)
    neigh = [[] for _ in range(count)]
    for i in range(count):
        for j in range(i + 1, count):
            if not _line_hits_hull(key, i, j):
                neigh[i].append(j)
                neigh[j].append(i)
    skel = Skeleton(count, tuple(tuple(ns) for ns in neigh))
    if count > 1:
        seen = _bfs_all(skel, 0)
        if any(d is None for d in seen):
            raise InternalError(
                "polytope skeleton is disconnected",
                dump={"points": [list(pt) for pt in key]},
            )
    if use_cache:
        with _cache_lock:
            skel = _skeleton_cache.setdefault(key, skel)
    return skel


def induced_subskeleton(s: Skeleton, indices):
    """Skeleton of a face given its (sorted) vertex indices in the parent.

    The edges of a face are exactly the parent edges between its vertices, so
    no new adjacency tests are needed.
    """
    pos = {orig: new for new, orig in enumerate(indices)}
    adj = tuple(
        tuple(sorted(pos[j] for j in s.adjacency[orig] if j in pos))
        for orig in indices
    )
    return Skeleton(len(indices), adj)


def relabel_skeleton(s: Skeleton, forward: dict) -> Skeleton:
    """Rewrite a skeleton through an index bijection (image -> source)."""
    inverse = {src: img for img, src in forward.items()}
    adj = [()] * s.vertex_count
    for img in range(s.vertex_count):
        src = forward[img]
        adj[img] = tuple(sorted(inverse[j] for j in s.adjacency[src]))
    return Skeleton(s.vertex_count, tuple(adj))


def edge_set(s: Skeleton) -> frozenset:
    return frozenset(
        (i, j) for i in range(s.vertex_count) for j in s.adjacency[i] if i < j
    )


def _bfs_all(s: Skeleton, source):
    dist = [None] * s.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        for nxt in s.adjacency[cur]:
            if dist[nxt] is None:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def bfs_distance(s: Skeleton, u: int, v: int) -> DistanceResult:
    """Exact shortest-path length between two vertex indices."""
    if not (0 <= u < s.vertex_count and 0 <= v < s.vertex_count):
        raise InputError("vertex index out of range")
    return DistanceResult(u, v, _bfs_all(s, u)[v])


def diameter(s: Skeleton) -> int:
    """Largest pairwise BFS distance (all-pairs BFS)."""
    best = 0
    for src in range(s.vertex_count):
        for d in _bfs_all(s, src):
            if d is None:
                raise InternalError("diameter of a disconnected skeleton")
            if d > best:
                best = d
    return best


def diameter_pairs(s: Skeleton):
    """All vertex pairs realizing the diameter, with the diameter itself."""
    best, pairs = 0, []
    for src in range(s.vertex_count):
        dist = _bfs_all(s, src)
        for tgt in range(src + 1, s.vertex_count):
            d = dist[tgt]
            if d is None:
                raise InternalError("diameter of a disconnected skeleton")
            if d > best:
                best, pairs = d, [(src, tgt)]
            elif d == best and best > 0:
                pairs.append((src, tgt))
    return best, pairs


def distance_to_face(s: Skeleton, u: int, face) -> int:
    """Minimum BFS distance from u to any vertex index in the face set."""
    face = set(face)
    if not face:
        raise InputError("face must be a nonempty index set")
    if u in face:
        return 0
    dist = _bfs_all(s, u)
    vals = [dist[t] for t in face if dist[t] is not None]
    if not vals:
        raise InternalError("face unreachable in a connected skeleton")
    return min(vals)


def skeleton_to_json(s: Skeleton) -> dict:
    return {
        "vertex_count": s.vertex_count,
        "adjacency": [list(ns) for ns in s.adjacency],
    }


def skeleton_to_dot(s: Skeleton, labels=None) -> str:
    """Graphviz DOT rendering of the skeleton (undirected)."""
    name = lambda i: f'"{labels[i]}"' if labels else str(i)
    lines = ["graph skeleton {"]
    for i in range(s.vertex_count):
        lines.append(f"  {name(i)};")
    for i in range(s.vertex_count):
        for j in s.adjacency[i]:
            if i < j:
                lines.append(f"  {name(i)} -- {name(j)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
