"""Instance factories: named polytope families and seeded random families.

Random instances use splitmix64, a fixed 64-bit PRNG with a published
recurrence, rather than the platform RNG: identical (spec, seed) pairs must
regenerate identical polytopes byte for byte, on any machine.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InputError
from .polytope import LatticePolytope, canonicalize_vertices, cartesian_product, scale_to_0k

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

RNG_ALGORITHM = "splitmix64"

FAMILIES = ("hypercube", "hexagon_power", "octagon3", "random_hull", "fractional_matching")


class SplitMix64:
    """splitmix64: state += golden; output = mix(state).  Portable and tiny."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Uniform integer in [0, m) via rejection (no modulo bias)."""
        if m <= 0:
            raise InputError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % m

    def choice(self, seq):
        return seq[self.below(len(seq))]


def derive_seed(seed: int, index: int) -> int:
    """Stable per-instance sub-seed; independent of evaluation order."""
    return SplitMix64((seed + (index + 1) * _GOLDEN) & _MASK).next_u64()


@dataclass(frozen=True)
class GeneratorSpec:
    """Family name, family-specific parameters, and a 64-bit seed."""

    family: str
    parameters: dict = field(default_factory=dict)
    seed: int = 0

    def to_json(self) -> dict:
        return {"family": self.family, "parameters": dict(self.parameters), "seed": self.seed}

    @staticmethod
    def from_json(obj) -> "GeneratorSpec":
        if not isinstance(obj, dict) or "family" not in obj:
            raise InputError("generator spec JSON needs a 'family' field")
        family = obj["family"]
        if family not in FAMILIES:
            raise InputError(f"unknown family {family!r}; expected one of {FAMILIES}")
        params = obj.get("parameters", {})
        if not isinstance(params, dict):
            raise InputError("'parameters' must be an object")
        return GeneratorSpec(family, dict(params), int(obj.get("seed", 0)))


def gen_hypercube(d: int, k: int) -> LatticePolytope:
    """The 2^d corners {0, k}^d."""
    if d < 0 or k < 1:
        raise InputError("hypercube needs d >= 0 and k >= 1")
    pts = tuple(itertools.product((0, k), repeat=d))
    return LatticePolytope(d, k, pts, vertices_confirmed=True)


_HEX2 = ((0, 0), (1, 0), (0, 1), (2, 1), (1, 2), (2, 2))


def gen_hexagon_power(d: int) -> LatticePolytope:
    """Products of the tight hexagon: a d-dimensional (0,2)-polytope whose
    diameter is exactly floor(3d/2).

    Even d is the (d/2)-fold product of the hexagon; odd d multiplies one
    segment [0, 2] on top.
    """
    if d < 1:
        raise InputError("hexagon_power needs d >= 1")
    seg = LatticePolytope(1, 2, ((0,), (2,)), vertices_confirmed=True)
    hexagon = LatticePolytope(2, 2, _HEX2, vertices_confirmed=True)
    if d == 1:
        return seg
    out = hexagon
    for _ in range(d // 2 - 1):
        out = cartesian_product(out, hexagon)
    if d % 2:
        out = cartesian_product(out, seg)
    return out


_OCTAGON3 = ((1, 0), (2, 0), (3, 1), (3, 2), (2, 3), (1, 3), (0, 2), (0, 1))


def gen_octagon3() -> LatticePolytope:
    """The symmetric octagon in [0,3]^2: 8 vertices, diameter 4."""
    return canonicalize_vertices(LatticePolytope(2, 3, _OCTAGON3))


def gen_random_hull(n: int, k: int, budget: int, seed: int) -> LatticePolytope:
    """Hull vertices of `budget` seeded uniform samples from [0, k]^n."""
    if n < 1 or k < 1 or budget < 1:
        raise InputError("random_hull needs n >= 1, k >= 1, budget >= 1")
    rng = SplitMix64(seed)
    pts = tuple(tuple(rng.below(k + 1) for _ in range(n)) for _ in range(budget))
    return canonicalize_vertices(LatticePolytope(n, k, pts))


def gen_fractional_matching(edges) -> LatticePolytope:
    """Vertex set of the fractional matching polytope of a graph, doubled to a
    (0,2) grid.

    Enumerates every half-integral edge vector with x(delta(v)) <= 1 at each
    graph vertex and keeps the hull vertices; the polytope's vertices are all
    half-integral, so this enumeration is exhaustive.
    """
    edge_list = [tuple(e) for e in edges]
    if not edge_list:
        raise InputError("the graph needs at least one edge")
    if len(edge_list) > 12:
        raise InputError("at most 12 edges are supported")
    seen = set()
    for e in edge_list:
        if len(e) != 2 or e[0] == e[1]:
            raise InputError(f"not a simple edge: {e!r}")
        key = frozenset(e)
        if key in seen:
            raise InputError(f"duplicate edge: {e!r}")
        seen.add(key)
    nodes = sorted({v for e in edge_list for v in e})
    incident = {v: [i for i, e in enumerate(edge_list) if v in e] for v in nodes}
    half = []
    from fractions import Fraction

    levels = (Fraction(0), Fraction(1, 2), Fraction(1))
    for combo in itertools.product(levels, repeat=len(edge_list)):
        if all(sum(combo[i] for i in incident[v]) <= 1 for v in nodes):
            half.append(combo)
    return canonicalize_vertices(scale_to_0k(half))


def generate(spec: GeneratorSpec) -> LatticePolytope:
    """Build the polytope a GeneratorSpec describes (deterministic per seed)."""

    def need(*names):
        missing = [x for x in names if x not in spec.parameters]
        if missing:
            raise InputError(f"family {spec.family!r} needs parameters {missing}")
        return [spec.parameters[x] for x in names]

    if spec.family == "hypercube":
        d, k = need("d", "k")
        return gen_hypercube(int(d), int(k))
    if spec.family == "hexagon_power":
        (d,) = need("d")
        return gen_hexagon_power(int(d))
    if spec.family == "octagon3":
        return gen_octagon3()
    if spec.family == "random_hull":
        n, k, budget = need("n", "k", "budget")
        return gen_random_hull(int(n), int(k), int(budget), spec.seed)
    if spec.family == "fractional_matching":
        (edges,) = need("edges")
        return gen_fractional_matching(edges)
    raise InputError(f"unknown family {spec.family!r}")
