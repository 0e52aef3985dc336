"""Property-suite runner: regenerate families, re-derive every inequality.

A suite is a deterministic list of instances (named families plus seeded
random hulls and matching polytopes).  For each instance the runner checks
the vertex-count bound, both diameter bounds, constructive paths against the
skeleton and the BFS lower bound, and the monotone-walk / face-route
inequalities on random draws; product-law checks run on seeded pairs of
small polytopes.  Reports are byte-identical for identical (suite, seed)
inputs, and every reported diameter is reproduced by a second BFS pass over
a freshly rebuilt (cache-bypassing) skeleton.

A violated inequality aborts the run with a reproducer dump instead of
completing: a finished report always has violation count zero.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
from dataclasses import dataclass, fields

from .errors import InputError, VerificationFailure
from .exactlp import affine_rank
from .generators import (
    RNG_ALGORITHM,
    GeneratorSpec,
    SplitMix64,
    derive_seed,
    gen_random_hull,
    generate,
)
from .paths import construct_path, diameter_bound, min_face, monotone_walk, verify_certificate
from .polytope import cartesian_product, polytope_to_json
from .skeleton import build_skeleton, diameter, diameter_pairs, edge_set, _bfs_all

MATCHING_GRAPHS = {
    "path2": ((0, 1), (1, 2)),
    "triangle": ((0, 1), (1, 2), (2, 0)),
    "cycle5": ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)),
}

MAX_VERTICES = 400

CSV_COLUMNS = (
    "instance",
    "family",
    "n",
    "k",
    "d",
    "vertices",
    "diameter",
    "bound",
    "ko_bound",
    "gap",
    "diam_pair",
    "diam_path_length",
    "diam_path_trace",
    "pairs_checked",
    "walk_budget_ok",
    "route_budget_ok",
    "spec",
)


@dataclass(frozen=True)
class SuiteSpec:
    """Families x sizes x trials x seed for one verification run."""

    seed: int = 0
    hypercube_dims: tuple = (1, 2, 3, 4, 5, 6)
    hexagon_dims: tuple = (1, 2, 3, 4, 5)
    include_octagon: bool = True
    matching_graphs: tuple = ("path2", "triangle", "cycle5")
    random_count: int = 60
    random_dims: tuple = (2, 3)
    random_ks: tuple = (2, 3, 4)
    random_budget: tuple = (6, 40)
    product_pairs: int = 20
    draws_per_instance: int = 3
    max_pairs_per_instance: int = 2000

    def __post_init__(self):
        if any(d > 4 or d < 1 for d in self.random_dims):
            raise InputError("random dimensions must stay in 1..4 (desk scale)")
        if any(k > 4 or k < 1 for k in self.random_ks):
            raise InputError("random grid bounds must stay in 1..4 (desk scale)")
        if any(d > 6 or d < 1 for d in self.hypercube_dims):
            raise InputError("hypercube dimensions must stay in 1..6")
        if any(d > 5 or d < 1 for d in self.hexagon_dims):
            raise InputError("hexagon dimensions must stay in 1..5")
        for name in self.matching_graphs:
            if name not in MATCHING_GRAPHS:
                raise InputError(f"unknown matching graph {name!r}")
        if self.max_pairs_per_instance < 1:
            raise InputError("max_pairs_per_instance must be positive")
        lo, hi = self.random_budget
        if not 1 <= lo <= hi:
            raise InputError("random_budget must be (lo, hi) with 1 <= lo <= hi")

    def to_json(self) -> dict:
        out = {}
        for f in fields(self):
            val = getattr(self, f.name)
            out[f.name] = list(val) if isinstance(val, tuple) else val
        return out

    @staticmethod
    def from_json(obj) -> "SuiteSpec":
        if not isinstance(obj, dict):
            raise InputError("suite spec must be a JSON object")
        known = {f.name for f in fields(SuiteSpec)}
        unknown = set(obj) - known
        if unknown:
            raise InputError(f"unknown suite fields: {sorted(unknown)}")
        kwargs = {}
        for f in fields(SuiteSpec):
            if f.name in obj:
                val = obj[f.name]
                kwargs[f.name] = tuple(val) if isinstance(val, list) else val
        return SuiteSpec(**kwargs)


@dataclass(frozen=True)
class ExperimentReport:
    suite: dict
    rows: tuple
    summary: dict


def suite_instances(spec: SuiteSpec):
    """The deterministic instance list a suite describes."""
    items = []
    for d in spec.hypercube_dims:
        items.append(GeneratorSpec("hypercube", {"d": d, "k": 1}))
    for d in spec.hexagon_dims:
        items.append(GeneratorSpec("hexagon_power", {"d": d}))
    if spec.include_octagon:
        items.append(GeneratorSpec("octagon3"))
    for name in spec.matching_graphs:
        items.append(
            GeneratorSpec("fractional_matching", {"edges": [list(e) for e in MATCHING_GRAPHS[name]]})
        )
    lo, hi = spec.random_budget
    for t in range(spec.random_count):
        sub = derive_seed(spec.seed, t)
        rng = SplitMix64(sub)
        params = {
            "n": spec.random_dims[t % len(spec.random_dims)],
            "k": spec.random_ks[(t // len(spec.random_dims)) % len(spec.random_ks)],
            "budget": lo + rng.below(max(1, hi - lo + 1)),
        }
        items.append(GeneratorSpec("random_hull", params, seed=sub))
    return items


def _unrank_pair(rank, count):
    i = 0
    remaining = count - 1
    while rank >= remaining:
        rank -= remaining
        i += 1
        remaining = count - 1 - i
    return i, i + 1 + rank


def _sample_pairs(count, limit, rng):
    total = count * (count - 1) // 2
    if total <= limit:
        return [(i, j) for i in range(count) for j in range(i + 1, count)]
    picked = set()
    while len(picked) < limit:
        picked.add(rng.below(total))
    return sorted(_unrank_pair(r, count) for r in picked)


def _budget_checks(poly, skel, rng, draws, gen_json, violations):
    """Monotone-walk and face-route inequalities on seeded draws."""
    n = poly.ambient_dim
    count = len(poly.points)
    ok2 = ok34 = True
    for _ in range(draws):
        u = rng.below(count)
        v = rng.below(count)
        c = tuple(rng.below(7) - 3 for _ in range(n))
        gamma, _ = min_face(poly, c)
        cu = sum(a * b for a, b in zip(c, poly.points[u]))
        cv = sum(a * b for a, b in zip(c, poly.points[v]))
        walk_u, _ = monotone_walk(poly, u, c, skel)
        walk_v, _ = monotone_walk(poly, v, c, skel)
        values = [sum(a * b for a, b in zip(c, poly.points[t])) for t in walk_u.indices]
        stepwise = all(a - b >= 1 for a, b in zip(values, values[1:]))
        if not (stepwise and walk_u.length <= cu - gamma):
            ok2 = False
            violations.append(
                {
                    "kind": "monotone_walk",
                    "generator": gen_json,
                    "polytope": polytope_to_json(poly),
                    "vertex": u,
                    "functional": list(c),
                }
            )
        if not walk_u.length + walk_v.length <= cu + cv - 2 * gamma:
            ok34 = False
            violations.append(
                {
                    "kind": "face_route",
                    "generator": gen_json,
                    "polytope": polytope_to_json(poly),
                    "pair": [u, v],
                    "functional": list(c),
                }
            )
        # Coordinate route: walking toward the cheaper extreme of one
        # coordinate costs at most its range.
        i = rng.below(n)
        lo = min(pt[i] for pt in poly.points)
        hi = max(pt[i] for pt in poly.points)
        ui, vi = poly.points[u][i], poly.points[v][i]
        ei = tuple(1 if j == i else 0 for j in range(n))
        ci = ei if ui + vi <= lo + hi else tuple(-x for x in ei)
        wu, _ = monotone_walk(poly, u, ci, skel)
        wv, _ = monotone_walk(poly, v, ci, skel)
        if not wu.length + wv.length <= hi - lo:
            ok34 = False
            violations.append(
                {
                    "kind": "coordinate_route",
                    "generator": gen_json,
                    "polytope": polytope_to_json(poly),
                    "pair": [u, v],
                    "coordinate": i,
                }
            )
    return ok2, ok34


def _instance_task(args):
    index, gen_json, knobs = args
    spec = GeneratorSpec.from_json(gen_json)
    violations = []
    poly = generate(spec)
    if len(poly.points) > MAX_VERTICES:
        raise InputError(
            f"instance {index} has {len(poly.points)} vertices; desk-scale limit is {MAX_VERTICES}"
        )
    n, k = poly.ambient_dim, poly.k
    d = affine_rank(poly.points)
    if len(poly.points) > (k + 1) ** d:
        violations.append(
            {
                "kind": "vertex_count",
                "generator": gen_json,
                "polytope": polytope_to_json(poly),
                "detail": f"{len(poly.points)} > ({k}+1)^{d}",
            }
        )
    skel = build_skeleton(poly)
    diam, extremal = diameter_pairs(skel)
    fresh = build_skeleton(poly, use_cache=False)
    if edge_set(fresh) != edge_set(skel) or diameter(fresh) != diam:
        violations.append(
            {
                "kind": "diameter_recheck",
                "generator": gen_json,
                "polytope": polytope_to_json(poly),
                "detail": "fresh skeleton rebuild disagrees with the cached one",
            }
        )
    bound = diameter_bound(d, k)
    ko = k * d
    if diam > bound or diam > ko:
        violations.append(
            {
                "kind": "diameter_bound",
                "generator": gen_json,
                "polytope": polytope_to_json(poly),
                "detail": f"diameter {diam} vs bound {bound}, kd {ko}",
            }
        )
    rng = SplitMix64(derive_seed(knobs["seed"], index))
    count = len(poly.points)
    pairs = _sample_pairs(count, knobs["max_pairs"], rng)
    pair_set = set(pairs)
    pair_set.update(extremal)
    diam_path_length = 0
    diam_trace = ()
    dist_cache = {}
    for u, v in sorted(pair_set):
        path, cert = construct_path(poly, u, v, skel)
        if u not in dist_cache:
            dist_cache[u] = _bfs_all(skel, u)
        bfs = dist_cache[u][v]
        if not verify_certificate(path, cert, skel) or cert.path_length < bfs:
            violations.append(
                {
                    "kind": "construct_path",
                    "generator": gen_json,
                    "polytope": polytope_to_json(poly),
                    "pair": [u, v],
                    "detail": f"length {cert.path_length}, bfs {bfs}, bound {cert.bound_value}",
                }
            )
    if extremal:
        u, v = min(extremal)
        path, cert = construct_path(poly, u, v, skel)
        diam_path_length = cert.path_length
        diam_trace = cert.case_trace
    ok2, ok34 = _budget_checks(poly, skel, rng, knobs["draws"], gen_json, violations)
    row = {
        "instance": index,
        "family": spec.family,
        "n": n,
        "k": k,
        "d": d,
        "vertices": count,
        "diameter": diam,
        "bound": bound,
        "ko_bound": ko,
        "gap": bound - diam,
        "diam_pair": list(min(extremal)) if extremal else [],
        "diam_path_length": diam_path_length,
        "diam_path_trace": list(diam_trace),
        "pairs_checked": len(pair_set),
        "walk_budget_ok": ok2,
        "route_budget_ok": ok34,
        "spec": gen_json,
    }
    return index, row, violations


def _product_task(args):
    index, seed = args
    rng = SplitMix64(seed)
    factors = []
    for _ in range(2):
        n = 1 + rng.below(2)
        k = 1 + rng.below(3)
        budget = 3 + rng.below(6)
        factors.append(gen_random_hull(n, k, budget, rng.next_u64()))
    a, b = factors
    prod = cartesian_product(a, b)
    da = diameter(build_skeleton(a, use_cache=False))
    db = diameter(build_skeleton(b, use_cache=False))
    dp = diameter(build_skeleton(prod, use_cache=False))
    violation = None
    if dp != da + db:
        violation = {
            "kind": "product_law",
            "pair_index": index,
            "factor_a": polytope_to_json(a),
            "factor_b": polytope_to_json(b),
            "detail": f"diameter {dp} != {da} + {db}",
        }
    return index, violation


def run_suite(spec: SuiteSpec, jobs: int = 1) -> ExperimentReport:
    """Run the full property suite; raises VerificationFailure on any violation."""
    if jobs < 1:
        raise InputError("jobs must be at least 1")
    instances = suite_instances(spec)
    knobs = {
        "seed": spec.seed,
        "max_pairs": spec.max_pairs_per_instance,
        "draws": spec.draws_per_instance,
    }
    tasks = [(i, item.to_json(), knobs) for i, item in enumerate(instances)]
    product_tasks = [
        (t, derive_seed(spec.seed ^ 0x70726F64, t)) for t in range(spec.product_pairs)
    ]
    results = []
    product_results = []
    if jobs == 1:
        results = [_instance_task(t) for t in tasks]
        product_results = [_product_task(t) for t in product_tasks]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_instance_task, tasks))
            product_results = list(pool.map(_product_task, product_tasks))
    results.sort(key=lambda r: r[0])
    rows = []
    violations = []
    for _, row, viols in results:
        rows.append(row)
        violations.extend(viols)
    product_results.sort(key=lambda r: r[0])
    for _, viol in product_results:
        if viol is not None:
            violations.append(viol)
    if violations:
        raise VerificationFailure(
            f"{len(violations)} inequality violation(s); reproducer attached",
            dump={"violations": violations},
        )
    summary = {
        "instances": len(rows),
        "violations": 0,
        "max_gap": max((row["gap"] for row in rows), default=0),
        "pairs_checked": sum(row["pairs_checked"] for row in rows),
        "property_draws": spec.draws_per_instance * len(rows),
        "product_pairs": len(product_results),
        "rng": RNG_ALGORITHM,
        "seed": spec.seed,
    }
    return ExperimentReport(spec.to_json(), tuple(rows), summary)


def report_to_json(report: ExperimentReport) -> dict:
    return {"suite": report.suite, "rows": list(report.rows), "summary": report.summary}


def report_to_json_str(report: ExperimentReport) -> str:
    return json.dumps(report_to_json(report), indent=2, sort_keys=True) + "\n"


def report_to_csv_str(report: ExperimentReport) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in report.rows:
        out = dict(row)
        out["diam_pair"] = "-".join(str(t) for t in row["diam_pair"])
        out["diam_path_trace"] = "|".join(row["diam_path_trace"])
        out["spec"] = json.dumps(row["spec"], sort_keys=True)
        writer.writerow([out[col] for col in CSV_COLUMNS])
    return buf.getvalue()
