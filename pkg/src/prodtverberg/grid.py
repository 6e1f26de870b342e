"""Point grids indexed by [n]^m, axis faces, partitions and the search."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .geometry import (
    HullWitness,
    Line,
    Point,
    as_point,
    extract_transversal_line,
    hulls_common_point,
    line_meets_convex,
    point_in_hull,
)
from .params import Params

GridIndex = Tuple[int, ...]


def grid_indices(n: int, m: int) -> List[GridIndex]:
    return list(itertools.product(range(1, n + 1), repeat=m))


@dataclass(frozen=True)
class FaceSelector:
    axis: int
    subset: FrozenSet[int]


def face_vertices(sel: FaceSelector, params: Params) -> List[GridIndex]:
    """V_i(A): grid vertices whose coordinate on ``sel.axis`` lies in A, sorted."""
    if not 1 <= sel.axis <= params.m:
        raise ValueError(f"axis {sel.axis} outside 1..{params.m}")
    i = sel.axis - 1
    return [x for x in grid_indices(params.n, params.m) if x[i] in sel.subset]


@dataclass(frozen=True)
class PartitionOfN:
    parts: Tuple[FrozenSet[int], ...]
    ordered: bool = False

    @property
    def n(self) -> int:
        return sum(len(a) for a in self.parts)

    def as_lists(self) -> List[List[int]]:
        return [sorted(a) for a in self.parts]

    def __str__(self):
        return "|".join("{" + ",".join(map(str, sorted(a))) + "}" for a in self.parts)


def restricted_growth_strings(n: int, max_blocks: int) -> Iterator[Tuple[int, ...]]:
    """Strings a_1..a_n with a_1 = 0 and a_k <= 1 + max(a_1..a_{k-1}), lexicographic."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    top = [0] * n  # top[k] = max(a[0..k])
    while True:
        yield tuple(a)
        k = n - 1
        while k > 0 and (a[k] > top[k - 1] or a[k] + 1 >= max_blocks):
            k -= 1
        if k == 0:
            return
        a[k] += 1
        top[k] = max(top[k - 1], a[k])
        for t in range(k + 1, n):
            a[t] = 0
            top[t] = top[k]


def enumerate_partitions(n: int, p: int, ordered: bool = False, allow_empty: bool = False) -> Iterator[PartitionOfN]:
    """Partitions of [n] into p parts.

    Unordered partitions come from restricted-growth strings, so their parts
    appear by increasing minimum; with ``allow_empty`` the empty parts trail.
    Ordered disjoint unions are the p**n maps [n] -> [p] in lexicographic order.
    """
    if n < 1 or p < 2:
        raise ValueError("need n >= 1 and p >= 2")
    if ordered and allow_empty:
        for g in itertools.product(range(p), repeat=n):
            yield _from_assignment(g, p, ordered=True)
        return
    for rgs in restricted_growth_strings(n, p):
        blocks = max(rgs) + 1
        if blocks < p and not allow_empty:
            continue
        base = _from_assignment(rgs, p, ordered=False)
        if not ordered:
            yield base
            continue
        for perm in itertools.permutations(base.parts):
            yield PartitionOfN(perm, ordered=True)


def _from_assignment(g: Sequence[int], p: int, ordered: bool) -> PartitionOfN:
    parts: List[set] = [set() for _ in range(p)]
    for j, k in enumerate(g, start=1):
        parts[k].add(j)
    return PartitionOfN(tuple(frozenset(a) for a in parts), ordered=ordered)


@dataclass(frozen=True)
class PointGrid:
    params: Params
    points: Dict[GridIndex, Point]

    def __post_init__(self):
        expected = set(grid_indices(self.params.n, self.params.m))
        if set(self.points) != expected:
            raise ValueError(f"grid must have exactly the {len(expected)} indices of [n]^m")
        for x, pt in self.points.items():
            if len(pt) != self.params.d:
                raise ValueError(f"point {x} has dimension {len(pt)}, expected {self.params.d}")

    @classmethod
    def from_function(cls, params: Params, f) -> "PointGrid":
        return cls(params, {x: as_point(f(x)) for x in grid_indices(params.n, params.m)})

    def face_points(self, axis: int, subset) -> Tuple[List[GridIndex], List[Point]]:
        idx = face_vertices(FaceSelector(axis, frozenset(subset)), self.params)
        return idx, [self.points[x] for x in idx]


def random_grid(params: Params, seed: int, bound: int) -> PointGrid:
    """Integer coordinates uniform in [-bound, bound], reproducible from ``seed``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    rng = random.Random(seed)
    pts = {}
    for x in grid_indices(params.n, params.m):
        pts[x] = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(params.d))
    return PointGrid(params, pts)


@dataclass(frozen=True)
class TverbergWitness:
    axis: int
    partition: PartitionOfN
    vertices: Tuple[Tuple[GridIndex, ...], ...]
    witness: HullWitness

    @property
    def point(self) -> Point:
        return self.witness.point

    def coefficients_by_index(self) -> List[Dict[GridIndex, Fraction]]:
        return [
            {verts[k]: w for k, w in coef.items()} for verts, coef in zip(self.vertices, self.witness.coefficients)
        ]


def _candidates(params: Params, p: int):
    for axis in range(1, params.m + 1):
        for part in enumerate_partitions(params.n, p):
            yield axis, part


def check_candidate(grid: PointGrid, p: int, axis: int, partition: PartitionOfN) -> Optional[TverbergWitness]:
    verts, hulls = [], []
    for a in partition.parts:
        idx, pts = grid.face_points(axis, a)
        verts.append(tuple(idx))
        hulls.append(pts)
    w = hulls_common_point(hulls)
    if w is None:
        return None
    return TverbergWitness(axis, partition, tuple(verts), w)


def find_tverberg_partition(
    grid: PointGrid, p: Optional[int] = None, *, shuffle: Optional[random.Random] = None
) -> Optional[TverbergWitness]:
    """First (axis, partition) in canonical order whose face images share a point.

    Canonical order is axis-major, then restricted-growth order of the
    partitions. ``shuffle`` permutes the candidate order instead; it exists
    to cross-check that a None answer really is exhaustive.
    """
    p = grid.params.p if p is None else p
    if p < 2:
        raise ValueError("p must be at least 2")
    cands = _candidates(grid.params, p)
    if shuffle is not None:
        cands = list(cands)
        shuffle.shuffle(cands)
    for axis, part in cands:
        w = check_candidate(grid, p, axis, part)
        if w is not None:
            return w
    return None


def certify_witness(grid: PointGrid, tw: TverbergWitness) -> bool:
    """Re-check a witness from scratch: partition shape, combinations, and one LP per part."""
    n = grid.params.n
    parts = tw.partition.parts
    if any(not a for a in parts) or frozenset().union(*parts) != frozenset(range(1, n + 1)):
        return False
    if sum(len(a) for a in parts) != n:
        return False
    hulls = []
    for a, verts in zip(parts, tw.vertices):
        idx, pts = grid.face_points(tw.axis, a)
        if tuple(idx) != verts:
            return False
        hulls.append(pts)
    if not tw.witness.check(hulls):
        return False
    return all(point_in_hull(tw.point, h) is not None for h in hulls)


def colorful_helly_extract(tw: TverbergWitness) -> Tuple[int, FrozenSet[int]]:
    """Axis and the union S of singleton parts; the witness point lies in every f(sigma_i({j})), j in S."""
    s = frozenset(j for a in tw.partition.parts if len(a) == 1 for j in a)
    return tw.axis, s


def colorful_helly_n(d: int, p: int) -> int:
    return (2 * d + 1) * p // (d + 1)


@dataclass(frozen=True)
class TransversalResult:
    color: str  # "rows" (axis 1) or "columns" (axis 2)
    line: Line
    witness: TverbergWitness
    triangles: Tuple[Tuple[Point, ...], ...]
    verified: Tuple[bool, ...]


def montejano_transversal(grid: PointGrid) -> TransversalResult:
    """Line transversal to the three rows or the three columns of a 3x3 grid in R^3."""
    prm = grid.params
    if (prm.d, prm.m, prm.n) != (3, 2, 3):
        raise ValueError("montejano_transversal needs d=3, m=2, n=3")
    tw = find_tverberg_partition(grid, 2)
    if tw is None:
        raise RuntimeError("no Tverberg partition found for a 3x3 grid in R^3; search is broken")
    axis = tw.axis
    single = next(a for a in tw.partition.parts if len(a) == 1)
    (ja,) = single
    jb, jc = sorted(next(a for a in tw.partition.parts if len(a) == 2))

    tri = {j: grid.face_points(axis, {j}) for j in (1, 2, 3)}
    t_a, t_b, t_c = (tri[j][1] for j in (ja, jb, jc))
    lookup = [
        dict(zip(tri[ja][0], range(3))),
        {x: k for k, x in enumerate(tri[jb][0] + tri[jc][0])},
    ]
    by_index = tw.coefficients_by_index()
    part_of = [0 if tw.partition.parts[0] == single else 1]
    part_of.append(1 - part_of[0])
    coef = tuple({lookup[s][x]: w for x, w in by_index[part_of[s]].items()} for s in (0, 1))
    line = extract_transversal_line(HullWitness(tw.point, coef), t_a, t_b, t_c)
    triangles = tuple(tuple(tri[j][1]) for j in (1, 2, 3))
    verified = tuple(line_meets_convex(line, t) for t in triangles)
    return TransversalResult("rows" if axis == 1 else "columns", line, tw, triangles, verified)
