"""Distance bounds and the constructive short-path algorithm.

For a vertex-confirmed lattice polytope in [0, k]^n of affine rank d, the
guaranteed budget is

    diameter_bound(d, k) = floor((2k - 1) * d / 2)   for k >= 2,
                           d                          for k = 1.

``construct_path`` builds an explicit skeleton walk between two vertices
whose length never exceeds that budget.  It recurses through a fixed case
order, each case spending part of the budget and descending into a face of
strictly smaller rank:

  claim1     ambient dimension exceeds the rank: drop an affinely dependent
             coordinate (verified skeleton-preserving) and continue there.
  claim2     some coordinate spans a range of at most k-1: walk both
             endpoints into the extreme face on the cheaper side (combined
             cost <= range) and recurse inside it.
  claim3     some coordinate has u_i + v_i != k: after an optional flip the
             cheap side costs at most k-1; recurse in the minimizing facet.
  claim4     u has a coordinate strictly between 0 and k: step to a neighbor
             that moves two coordinates at once, walk both ends into the
             face minimizing their sum, route along one coordinate inside
             that face, and recurse two ranks down.
  edge-case  endpoints are antipodal box corners and the straightened corner
             is a vertex: take that single box edge, recurse in the facet.
  walk-case  otherwise walk the high endpoint down (cost <= k), realign one
             coordinate (cost <= k-1), and recurse two ranks down.

Flips are applied to working copies; finished sub-paths are mapped back, so
callers always see indices of the polytope they passed in.  All walks run on
cached skeletons, and faces inherit adjacency from their parent instead of
re-running edge LPs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalError
from .exactlp import affine_rank
from .polytope import (
    LatticePolytope,
    drop_coordinate,
    flip_coordinate,
    polytope_to_json,
)
from .skeleton import (
    Skeleton,
    build_skeleton,
    edge_set,
    induced_subskeleton,
    relabel_skeleton,
)

CASE_LABELS = ("claim1", "claim2", "claim3", "claim4", "edge-case", "walk-case")


@dataclass(frozen=True)
class VertexPath:
    """Vertex-index walk on a polytope's skeleton; consecutive entries adjacent."""

    polytope: LatticePolytope
    indices: tuple

    @property
    def length(self) -> int:
        return len(self.indices) - 1


@dataclass(frozen=True)
class BoundCertificate:
    """Witness that a constructed path respects the rank/grid budget."""

    d: int
    k: int
    bound_value: int
    path_length: int
    case_trace: tuple


def diameter_bound(d: int, k: int) -> int:
    """Guaranteed diameter budget for rank d on a (0,k) grid."""
    if d < 0 or k < 0:
        raise InputError("rank and grid bound must be nonnegative")
    if d == 0 or k == 0:
        return 0
    if k == 1:
        return d
    return (2 * k - 1) * d // 2


def _dot(c, pt) -> int:
    return sum(a * b for a, b in zip(c, pt))


def min_face(p: LatticePolytope, c):
    """Minimum of the integral functional c over the vertices, with its face.

    Returns (gamma, index tuple of the argmin vertices); gamma is an integer
    because both c and the vertices are integral.
    """
    if not p.vertices_confirmed:
        raise InputError("min_face needs a vertex-confirmed polytope")
    c = tuple(int(x) for x in c)
    if len(c) != p.ambient_dim:
        raise InputError("functional length does not match ambient_dim")
    values = [_dot(c, pt) for pt in p.points]
    gamma = min(values)
    face = tuple(i for i, val in enumerate(values) if val == gamma)
    return gamma, face


def _walk_indices(p: LatticePolytope, skel: Skeleton, start: int, c):
    """Greedy strictly-decreasing walk to the c-minimal face.

    Among improving neighbors the one with minimal c-value is taken, ties
    broken by lexicographically smallest vertex, so walks are deterministic.
    """
    pts = p.points
    gamma = min(_dot(c, pt) for pt in pts)
    path = [start]
    cur = start
    cur_val = _dot(c, pts[cur])
    while cur_val > gamma:
        best, best_key = None, None
        for t in skel.adjacency[cur]:
            tv = _dot(c, pts[t])
            if tv < cur_val:
                key = (tv, pts[t])
                if best is None or key < best_key:
                    best, best_key = t, key
        if best is None:
            raise InternalError(
                "no objective-improving neighbor although the minimum is not reached",
                dump={
                    "polytope": polytope_to_json(p),
                    "vertex": list(pts[cur]),
                    "functional": list(c),
                },
            )
        cur = best
        cur_val = best_key[0]
        path.append(cur)
    return path, cur


def monotone_walk(p: LatticePolytope, u: int, c, skel: Skeleton | None = None):
    """Walk from vertex u along strictly c-decreasing edges into the minimal face.

    Each step lowers the integral functional by at least 1, so the length is
    at most c*u - min(c over the polytope).  Returns (path, landing index).
    """
    if not p.vertices_confirmed:
        raise InputError("monotone_walk needs a vertex-confirmed polytope")
    if not 0 <= u < len(p.points):
        raise InputError("vertex index out of range")
    c = tuple(int(x) for x in c)
    if len(c) != p.ambient_dim:
        raise InputError("functional length does not match ambient_dim")
    if skel is None:
        skel = build_skeleton(p)
    path, landing = _walk_indices(p, skel, u, c)
    return VertexPath(p, tuple(path)), landing


def face_route(p: LatticePolytope, u: int, v: int, c, skel: Skeleton | None = None):
    """Walk both endpoints into the c-minimizing face.

    Returns (walk from u, walk from v, face index set).  The combined walk
    length is at most c*u + c*v - 2*gamma; closing the remaining gap inside
    the face is the caller's recursion obligation.
    """
    if skel is None:
        skel = build_skeleton(p)
    walk_u, _ = monotone_walk(p, u, c, skel)
    walk_v, _ = monotone_walk(p, v, c, skel)
    _, face = min_face(p, c)
    return walk_u, walk_v, face


def full_dimensionalize(p: LatticePolytope, skel: Skeleton | None = None):
    """Drop coordinates until the ambient dimension equals the affine rank.

    Each candidate drop must be injective on the vertices, preserve the rank,
    and (verified by recomputing adjacency on the image) preserve the
    skeleton; a dependent coordinate passing all three always exists for a
    non-full-dimensional polytope, so failure raises an internal error with a
    diagnostic dump.  Returns the image and the chain of index maps.
    """
    if not p.vertices_confirmed:
        raise InputError("full_dimensionalize needs a vertex-confirmed polytope")
    d = affine_rank(p.points)
    if d < 1:
        raise InputError("full_dimensionalize needs affine rank at least 1")
    cur = p
    cur_skel = skel if skel is not None else build_skeleton(p)
    chain = []
    while affine_rank(cur.points) < cur.ambient_dim:
        for i in range(cur.ambient_dim):
            image, vmap = drop_coordinate(cur, i)
            if not vmap.bijective:
                continue
            if affine_rank(image.points) != d:
                continue
            image = LatticePolytope(
                image.ambient_dim, image.k, image.points, vertices_confirmed=True
            )
            image_skel = build_skeleton(image)
            mapped = frozenset(
                tuple(sorted((vmap.forward[a], vmap.forward[b])))
                for a, b in edge_set(image_skel)
            )
            if mapped != edge_set(cur_skel):
                continue
            cur, cur_skel = image, image_skel
            chain.append(vmap)
            break
        else:
            raise InternalError(
                "no coordinate drop preserves the skeleton",
                dump={"polytope": polytope_to_json(cur), "rank": d},
            )
    return cur, tuple(chain)


# --- construct_path internals ------------------------------------------------


def _face_view(p: LatticePolytope, skel: Skeleton, face):
    """Sub-polytope on a face's vertices with its inherited skeleton."""
    pts = tuple(p.points[i] for i in face)
    sub = LatticePolytope(p.ambient_dim, p.k, pts, vertices_confirmed=True)
    pos = {orig: new for new, orig in enumerate(face)}
    return sub, induced_subskeleton(skel, tuple(face)), pos


def _flip_view(p: LatticePolytope, skel: Skeleton, coords):
    """Polytope with the given coordinates flipped, plus the index translation."""
    idxmap = {i: i for i in range(len(p.points))}
    cur, cur_skel = p, skel
    for i in coords:
        cur, vmap = flip_coordinate(cur, i)
        cur_skel = relabel_skeleton(cur_skel, vmap.forward)
        inverse = {src: img for img, src in vmap.forward.items()}
        idxmap = {orig: inverse[mid] for orig, mid in idxmap.items()}
    return cur, cur_skel, idxmap


def _unflip_points(points, coords, k):
    out = []
    for pt in points:
        pt = list(pt)
        for i in coords:
            pt[i] = k - pt[i]
        out.append(tuple(pt))
    return out


def _stitch(*segments):
    """Concatenate point segments, merging repeated endpoints."""
    out = []
    for seg in segments:
        for pt in seg:
            if out and out[-1] == pt:
                continue
            out.append(pt)
    return out


def _unit(n, *idxs):
    c = [0] * n
    for i in idxs:
        c[i] += 1
    return tuple(c)


def _range_descent(p, skel, ui, vi, coord, trace):
    """Walk both endpoints to the cheaper extreme of one coordinate and recurse.

    Costs at most (max - min of the coordinate) edges before the recursion.
    """
    pts = p.points
    lo = min(pt[coord] for pt in pts)
    hi = max(pt[coord] for pt in pts)
    flips = [coord] if pts[ui][coord] + pts[vi][coord] > lo + hi else []
    q, sq, idxmap = _flip_view(p, skel, flips)
    uq, vq = idxmap[ui], idxmap[vi]
    c = _unit(p.ambient_dim, coord)
    walk_u, land_u = _walk_indices(q, sq, uq, c)
    walk_v, land_v = _walk_indices(q, sq, vq, c)
    _, face = _min_face_indices(q, c)
    sub, sub_skel, pos = _face_view(q, sq, face)
    mid = _route(sub, sub_skel, pos[land_u], pos[land_v], trace)
    path = _stitch(
        [q.points[t] for t in walk_u], mid, [q.points[t] for t in reversed(walk_v)]
    )
    return _unflip_points(path, flips, p.k)


def _min_face_indices(p, c):
    values = [_dot(c, pt) for pt in p.points]
    gamma = min(values)
    return gamma, tuple(i for i, val in enumerate(values) if val == gamma)


def _two_coord_descent(p, skel, ui, vi, coord, trace):
    """Spend one edge to leave an intermediate coordinate, then descend two ranks."""
    pts = p.points
    n = p.ambient_dim
    u = pts[ui]
    candidates = [
        t
        for t in skel.adjacency[ui]
        if pts[t][coord] != u[coord]
        and any(pts[t][j] != u[j] for j in range(n) if j != coord)
    ]
    if not candidates:
        raise InternalError(
            "no neighbor moves the intermediate coordinate together with another",
            dump={"polytope": polytope_to_json(p), "vertex": list(u), "coord": coord},
        )
    w_idx = min(candidates, key=lambda t: pts[t])
    w = pts[w_idx]
    other = min(j for j in range(n) if j != coord and w[j] != u[j])
    flips = [c for c, flipped in ((coord, w[coord] > u[coord]), (other, w[other] > u[other])) if flipped]
    q, sq, idxmap = _flip_view(p, skel, flips)
    uq, wq, vq = idxmap[ui], idxmap[w_idx], idxmap[vi]
    c = _unit(n, coord, other)
    walk_w, land_w = _walk_indices(q, sq, wq, c)
    walk_v, land_v = _walk_indices(q, sq, vq, c)
    _, face = _min_face_indices(q, c)
    sub, sub_skel, pos = _face_view(q, sq, face)
    # Inside the face the two coordinates sum to gamma, so routing along one of
    # them costs at most gamma before the rank-(d-2) recursion.
    mid = _range_descent(sub, sub_skel, pos[land_w], pos[land_v], coord, trace)
    path = _stitch(
        [q.points[uq]],
        [q.points[t] for t in walk_w],
        mid,
        [q.points[t] for t in reversed(walk_v)],
    )
    return _unflip_points(path, flips, p.k)


def _corner_descent(p, skel, ui, vi, trace):
    """Antipodal box-corner endpoints: straighten the first coordinate."""
    pts = p.points
    n, k = p.ambient_dim, p.k
    flips = [0] if pts[ui][0] == 0 else []
    q, sq, idxmap = _flip_view(p, skel, flips)
    uq, vq = idxmap[ui], idxmap[vi]
    uu, vv = q.points[uq], q.points[vq]
    c1 = _unit(n, 0)
    gamma, face = _min_face_indices(q, c1)
    if gamma != 0:
        raise InternalError(
            "corner case entered although a coordinate does not reach 0",
            dump={"polytope": polytope_to_json(q)},
        )
    sub, sub_skel, pos = _face_view(q, sq, face)
    straightened = (0,) + uu[1:]
    try:
        s_idx = q.index_of(straightened)
    except InputError:
        s_idx = None
    if s_idx is not None:
        trace.append("edge-case")
        # A box edge between two vertices of the polytope is an edge of the
        # polytope, so this single step is guaranteed.
        if s_idx not in sq.adjacency[uq]:
            raise InternalError(
                "box edge between two vertices is missing from the skeleton",
                dump={"polytope": polytope_to_json(q), "u": list(uu), "u2": list(straightened)},
            )
        mid = _route(sub, sub_skel, pos[s_idx], pos[vq], trace)
        path = _stitch([uu], mid)
        return _unflip_points(path, flips, k)

    trace.append("walk-case")
    walk_u, land_u = _walk_indices(q, sq, uq, c1)
    if land_u == vq:
        return _unflip_points([q.points[t] for t in walk_u], flips, k)
    u2 = q.points[land_u]
    coord = next((j for j in range(1, n) if u2[j] + vv[j] != k), None)
    if coord is None:
        raise InternalError(
            "walk landing agrees with the target on every remaining coordinate",
            dump={"polytope": polytope_to_json(q), "landing": list(u2), "target": list(vv)},
        )
    inner_flips = [coord] if u2[coord] + vv[coord] > k else []
    sub2, sub2_skel, m2 = _flip_view(sub, sub_skel, inner_flips)
    ci = _unit(n, coord)
    walk_a, land_a = _walk_indices(sub2, sub2_skel, m2[pos[land_u]], ci)
    walk_b, land_b = _walk_indices(sub2, sub2_skel, m2[pos[vq]], ci)
    _, face2 = _min_face_indices(sub2, ci)
    deep, deep_skel, pos2 = _face_view(sub2, sub2_skel, face2)
    mid = _route(deep, deep_skel, pos2[land_a], pos2[land_b], trace)
    inner = _stitch(
        [sub2.points[t] for t in walk_a], mid, [sub2.points[t] for t in reversed(walk_b)]
    )
    inner = _unflip_points(inner, inner_flips, k)
    path = _stitch([q.points[t] for t in walk_u], inner)
    return _unflip_points(path, flips, k)


def _route(p, skel, ui, vi, trace):
    """Recursive worker: a path between two vertices as a list of points of p."""
    pts = p.points
    if ui == vi:
        return [pts[ui]]
    d = affine_rank(pts)
    if d == 0:
        raise InternalError("two distinct vertices in a rank-0 polytope")
    if d == 1:
        # A rank-1 vertex-confirmed polytope is a segment: its two vertices
        # are adjacent.
        return [pts[ui], pts[vi]]
    if d < p.ambient_dim:
        trace.append("claim1")
        image, chain = full_dimensionalize(p, skel)
        inverses = [{src: img for img, src in vmap.forward.items()} for vmap in chain]
        down_u, down_v = ui, vi
        for inv in inverses:
            down_u, down_v = inv[down_u], inv[down_v]
        image_skel = build_skeleton(image)
        sub_path = _route(image, image_skel, down_u, down_v, trace)
        lifted = []
        for pt in sub_path:
            idx = image.index_of(pt)
            for vmap in reversed(chain):
                idx = vmap.forward[idx]
            lifted.append(pts[idx])
        return lifted
    k = p.k
    n = p.ambient_dim
    for i in range(n):
        lo = min(pt[i] for pt in pts)
        hi = max(pt[i] for pt in pts)
        if hi - lo <= k - 1:
            trace.append("claim2")
            return _range_descent(p, skel, ui, vi, i, trace)
    u, v = pts[ui], pts[vi]
    for i in range(n):
        if u[i] + v[i] != k:
            trace.append("claim3")
            return _range_descent(p, skel, ui, vi, i, trace)
    for i in range(n):
        if 0 < u[i] < k:
            trace.append("claim4")
            return _two_coord_descent(p, skel, ui, vi, i, trace)
    return _corner_descent(p, skel, ui, vi, trace)


def construct_path(p: LatticePolytope, u: int, v: int, skel: Skeleton | None = None):
    """Path from u to v of length at most diameter_bound(rank, k), with trace.

    The returned certificate records the budget and the case labels applied
    at each recursion level; verify_certificate re-checks everything against
    a skeleton.
    """
    if not p.vertices_confirmed:
        raise InputError("construct_path needs a vertex-confirmed polytope")
    count = len(p.points)
    if not (0 <= u < count and 0 <= v < count):
        raise InputError("vertex index out of range")
    if p.k == 0 and u != v:
        raise InputError("a (0,0)-polytope is a single point; no two distinct vertices")
    if skel is None:
        skel = build_skeleton(p)
    trace: list = []
    points_path = _route(p, skel, u, v, trace)
    indices = tuple(p.index_of(pt) for pt in points_path)
    d = affine_rank(p.points)
    bound = diameter_bound(d, p.k)
    length = len(indices) - 1
    if indices[0] != u or indices[-1] != v:
        raise InternalError(
            "constructed path does not join the requested endpoints",
            dump={"polytope": polytope_to_json(p), "u": u, "v": v, "path": list(indices)},
        )
    if length > bound:
        raise InternalError(
            "constructed path exceeds the guaranteed budget",
            dump={
                "polytope": polytope_to_json(p),
                "u": u,
                "v": v,
                "path": list(indices),
                "bound": bound,
            },
        )
    return VertexPath(p, indices), BoundCertificate(d, p.k, bound, length, tuple(trace))


def verify_certificate(path: VertexPath, cert: BoundCertificate, s: Skeleton) -> bool:
    """Re-check a constructed path: adjacency, consistency, and the budget."""
    if s.vertex_count != len(path.polytope.points):
        raise InputError("skeleton does not match the path's polytope")
    idx = path.indices
    if not idx or any(not 0 <= t < s.vertex_count for t in idx):
        raise InputError("path indices do not refer to the skeleton's vertices")
    if cert.path_length != len(idx) - 1:
        return False
    if cert.path_length > cert.bound_value:
        return False
    for a, b in zip(idx, idx[1:]):
        if b not in s.adjacency[a]:
            return False
    return True


def certificate_to_json(path: VertexPath, cert: BoundCertificate) -> dict:
    return {
        "d": cert.d,
        "k": cert.k,
        "bound": cert.bound_value,
        "length": cert.path_length,
        "path": list(path.indices),
        "trace": list(cert.case_trace),
    }
