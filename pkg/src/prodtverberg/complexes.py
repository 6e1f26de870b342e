"""Finite simplicial complexes used in the topological proof.

Complexes are stored by facets over dense integer vertex ids, with a label
per vertex. Labels carry meaning: grid indices, :class:`KVertex` for the
configuration complex, :class:`FacetDescriptor` for facets of K (vertices
of the nerve and of M, L_i, T), plain tuples elsewhere.

Everything here is exponential in the parameters, so constructors check
:class:`Caps` and raise :class:`CapExceeded` instead of thrashing.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .grid import GridIndex, enumerate_partitions, grid_indices

Face = Tuple[int, ...]


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Caps:
    """Size budgets.

    ``max_vertices`` bounds the vertex count p * n**m of the configuration
    complex (and of the product simplex); ``max_faces`` bounds any other
    enumeration: facets, derived vertex sets, faces, chains.
    """

    max_vertices: int = 1000
    max_faces: int = 10**6

    @classmethod
    def from_env(cls) -> "Caps":
        return cls(
            int(os.environ.get("PRODTV_MAX_VERTICES", 1000)),
            int(os.environ.get("PRODTV_MAX_FACES", 10**6)),
        )

    def vertices(self, count: int, what: str) -> None:
        if count > self.max_vertices:
            raise CapExceeded(f"{what}: {count} vertices exceeds cap {self.max_vertices}")

    def faces(self, count: int, what: str) -> None:
        if count > self.max_faces:
            raise CapExceeded(f"{what}: {count} items exceeds cap {self.max_faces}")


def default_caps() -> Caps:
    return Caps.from_env()


def maximal_sets(sets: Iterable[Iterable[int]]) -> List[Face]:
    """Drop duplicates and non-maximal members; first-seen order is kept."""
    uniq = list(dict.fromkeys(tuple(sorted(s)) for s in sets))
    by_size: Dict[int, List[FrozenSet[int]]] = {}
    for s in uniq:
        by_size.setdefault(len(s), []).append(frozenset(s))
    sizes = sorted(by_size)
    keep = []
    for s in uniq:
        fs = frozenset(s)
        if not any(fs <= big for size in sizes if size > len(s) for big in by_size[size]):
            keep.append(s)
    return keep


class SimplicialComplex:
    """Abstract simplicial complex given by its facets.

    A complex with no facets is the empty complex, whose only face is the
    empty face.
    """

    def __init__(self, labels: Sequence[Hashable], facets: Iterable[Iterable[int]], name: str = ""):
        self.labels: Tuple[Hashable, ...] = tuple(labels)
        self.index: Dict[Hashable, int] = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        self.name = name
        facets = [tuple(sorted(set(f))) for f in facets]
        nv = len(self.labels)
        seen = set()
        for f in facets:
            if not f:
                raise ValueError("facets must be nonempty")
            if f[0] < 0 or f[-1] >= nv:
                raise ValueError(f"facet {f} uses ids outside 0..{nv - 1}")
            seen.update(f)
        if len(seen) != nv:
            raise ValueError("every vertex must lie in some facet")
        if len(maximal_sets(facets)) != len(facets):
            raise ValueError("facets must form an antichain without repeats")
        self.facets: Tuple[Face, ...] = tuple(facets)
        self.facet_index: Dict[Face, int] = {f: i for i, f in enumerate(self.facets)}
        self._facet_sets = [frozenset(f) for f in self.facets]

    @classmethod
    def from_generators(cls, labels, sets, name: str = "") -> "SimplicialComplex":
        """Complex generated by ``sets`` (not necessarily maximal)."""
        return cls(labels, maximal_sets(sets), name)

    @classmethod
    def from_label_sets(cls, labels, label_sets, name: str = "") -> "SimplicialComplex":
        index = {lab: i for i, lab in enumerate(labels)}
        return cls.from_generators(labels, ([index[x] for x in s] for s in label_sets), name)

    def __repr__(self):
        return f"SimplicialComplex({self.name!r}, vertices={self.vertex_count}, facets={len(self.facets)})"

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_face(self, ids: Iterable[int]) -> bool:
        s = frozenset(ids)
        if not s:
            return True
        return any(s <= f for f in self._facet_sets)

    def is_face_labels(self, labels: Iterable[Hashable]) -> bool:
        try:
            return self.is_face(self.index[x] for x in labels)
        except KeyError:
            return False

    def count_faces_bound(self, k: int) -> int:
        return sum(math.comb(len(f), k + 1) for f in self.facets)

    def faces(self, k: int, caps: Optional[Caps] = None) -> List[Face]:
        """Sorted list of the k-dimensional faces (k = -1 gives the empty face)."""
        if k == -1:
            return [()]
        (caps or default_caps()).faces(self.count_faces_bound(k), f"{self.name} faces of dim {k}")
        out = set()
        for f in self.facets:
            out.update(itertools.combinations(f, k + 1))
        return sorted(out)

    def all_faces(self, caps: Optional[Caps] = None) -> List[Face]:
        """All nonempty faces."""
        (caps or default_caps()).faces(sum(2 ** len(f) for f in self.facets), f"{self.name} face lattice")
        out = set()
        for f in self.facets:
            for r in range(1, len(f) + 1):
                out.update(itertools.combinations(f, r))
        return sorted(out, key=lambda s: (len(s), s))

    def f_vector(self, caps: Optional[Caps] = None) -> List[int]:
        return [len(self.faces(k, caps)) for k in range(self.dimension + 1)]

    def label_face(self, face: Iterable[int]) -> Tuple[Hashable, ...]:
        return tuple(self.labels[v] for v in face)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "vertices": [label_to_json(x) for x in self.labels],
            "facets": [list(f) for f in self.facets],
        }


def label_to_json(label):
    if hasattr(label, "to_json"):
        return label.to_json()
    if isinstance(label, (frozenset, set)):
        return sorted(label_to_json(x) for x in label)
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


# --- labels ------------------------------------------------------------------


class KVertex(NamedTuple):
    """Vertex of K: a grid index in one of the p copies (part is 1-based)."""

    part: int
    index: GridIndex

    def to_json(self):
        return {"part": self.part, "index": list(self.index)}


@dataclass(frozen=True)
class FacetDescriptor:
    """Axis i and ordered disjoint union (A_1, ..., A_p) of [n], naming a facet of K.

    If every part is empty or all of [n], the facet does not depend on the
    axis; such descriptors are canonicalised to axis 1.
    """

    axis: int
    parts: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        parts = tuple(frozenset(a) for a in self.parts)
        n = sum(len(a) for a in parts)
        if frozenset().union(*parts) != frozenset(range(1, n + 1)):
            raise ValueError(f"parts {parts} are not a disjoint union of [n]")
        if self.axis < 1:
            raise ValueError("axis must be at least 1")
        object.__setattr__(self, "parts", parts)
        if all(not a or len(a) == n for a in parts):
            object.__setattr__(self, "axis", 1)

    @property
    def n(self) -> int:
        return sum(len(a) for a in self.parts)

    @property
    def p(self) -> int:
        return len(self.parts)

    def contains(self, v: KVertex) -> bool:
        return v.index[self.axis - 1] in self.parts[v.part - 1]

    def shift(self, e: int = 1) -> "FacetDescriptor":
        """Image under the e-th power of the cyclic shift: part k moves to part k+1."""
        p = self.p
        e %= p
        return FacetDescriptor(self.axis, self.parts[p - e :] + self.parts[: p - e])

    def assignment(self) -> Tuple[int, ...]:
        g = [0] * self.n
        for k, a in enumerate(self.parts, start=1):
            for j in a:
                g[j - 1] = k
        return tuple(g)

    def to_json(self):
        return {"axis": self.axis, "parts": [sorted(a) for a in self.parts]}

    def __str__(self):
        return f"s{self.axis}(" + "|".join("{" + ",".join(map(str, sorted(a))) + "}" for a in self.parts) + ")"


# --- group actions -----------------------------------------------------------


@dataclass(frozen=True)
class PermutationAction:
    """Cyclic group action generated by a vertex permutation."""

    generator: Tuple[int, ...]
    order: int

    def __post_init__(self):
        g = tuple(self.generator)
        object.__setattr__(self, "generator", g)
        if sorted(g) != list(range(len(g))):
            raise ValueError("generator is not a permutation")
        if self.power(self.order) != tuple(range(len(g))):
            raise ValueError(f"generator does not have order dividing {self.order}")

    @classmethod
    def identity(cls, size: int, order: int) -> "PermutationAction":
        return cls(tuple(range(size)), order)

    def power(self, e: int) -> Tuple[int, ...]:
        perm = list(range(len(self.generator)))
        for _ in range(e):
            perm = [self.generator[v] for v in perm]
        return tuple(perm)

    def apply(self, face: Iterable[int], e: int = 1) -> Face:
        g = self.power(e) if e != 1 else self.generator
        return tuple(sorted(g[v] for v in face))

    def is_invariant(self, cx: SimplicialComplex) -> bool:
        if len(self.generator) != cx.vertex_count:
            return False
        return all(self.apply(f) in cx.facet_index for f in cx.facets)


def action_from_label_map(cx: SimplicialComplex, label_map: Callable[[Hashable], Hashable], order: int) -> PermutationAction:
    try:
        gen = tuple(cx.index[label_map(x)] for x in cx.labels)
    except KeyError as exc:
        raise ValueError(f"action does not preserve the vertex set of {cx.name}: {exc}") from None
    action = PermutationAction(gen, order)
    if not action.is_invariant(cx):
        raise ValueError(f"action does not map faces of {cx.name} to faces")
    return action


def induced_action(source_action, construction: str, source, derived: SimplicialComplex) -> PermutationAction:
    """Action on ``derived`` induced from an action on ``source``.

    ``construction`` is one of ``nerve`` (derived vertex i is source facet i),
    ``sd`` (derived labels are faces of source), ``subcomplex`` (derived
    labels are source labels) or ``join`` (``source`` and ``source_action``
    are sequences, one per factor).
    """
    if construction == "nerve":
        g = tuple(source.facet_index[source_action.apply(f)] for f in source.facets)
        order = source_action.order
    elif construction == "sd":
        try:
            g = tuple(derived.index[source_action.apply(face)] for face in derived.labels)
        except KeyError:
            raise ValueError("action does not preserve the faces of the source") from None
        order = source_action.order
    elif construction == "subcomplex":
        gen = source_action.generator
        return action_from_label_map(
            derived, lambda x: source.labels[gen[source.index[x]]], source_action.order
        )
    elif construction == "join":
        owner = {}
        for cx, act in zip(source, source_action):
            for lab in cx.labels:
                owner[lab] = (cx, act)
        orders = {act.order for act in source_action}
        if len(orders) != 1:
            raise ValueError("join factors carry actions of different orders")

        def image(x):
            cx, act = owner[x]
            return cx.labels[act.generator[cx.index[x]]]

        return action_from_label_map(derived, image, orders.pop())
    else:
        raise ValueError(f"unknown construction {construction!r}")
    action = PermutationAction(g, order)
    if not action.is_invariant(derived):
        raise ValueError(f"induced action is not invariant on {derived.name}")
    return action


@dataclass
class FreenessReport:
    free: bool
    vertex_orbits: Dict[int, int]
    facet_orbits: Dict[int, int]
    invariant: bool

    def to_json(self):
        return {
            "free": self.free,
            "invariant": self.invariant,
            "vertex_orbit_sizes": {str(k): v for k, v in sorted(self.vertex_orbits.items())},
            "facet_orbit_sizes": {str(k): v for k, v in sorted(self.facet_orbits.items())},
        }


def check_action_free(cx: SimplicialComplex, action: PermutationAction) -> FreenessReport:
    """Free means no non-identity power of the generator fixes a vertex."""
    powers = [action.power(e) for e in range(action.order)]
    free = all(powers[e][v] != v for e in range(1, action.order) for v in range(cx.vertex_count))
    seen, vsizes = set(), Counter()
    for v in range(cx.vertex_count):
        if v not in seen:
            orbit = {pw[v] for pw in powers}
            seen |= orbit
            vsizes[len(orbit)] += 1
    seen, fsizes = set(), Counter()
    for f in cx.facets:
        if f not in seen:
            orbit = {tuple(sorted(pw[v] for v in f)) for pw in powers}
            seen |= orbit
            fsizes[len(orbit)] += 1
    return FreenessReport(free, dict(vsizes), dict(fsizes), action.is_invariant(cx))


# --- constructions -----------------------------------------------------------


def product_simplex(n: int, m: int, caps: Optional[Caps] = None) -> SimplicialComplex:
    caps = caps or default_caps()
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    caps.vertices(n**m, "product simplex")
    labels = grid_indices(n, m)
    return SimplicialComplex(labels, [range(len(labels))], f"Delta^({m})({n})")


def deleted_join_pairwise(n: int, p: int, caps: Optional[Caps] = None) -> SimplicialComplex:
    """p-fold pairwise deleted join of the simplex on [n]; vertex (j, k) is j in copy k."""
    caps = caps or default_caps()
    if n < 1 or p < 2:
        raise ValueError("need n >= 1 and p >= 2")
    caps.faces(p**n, "deleted join facets")
    labels = [(j, k) for j in range(1, n + 1) for k in range(1, p + 1)]
    index = {lab: i for i, lab in enumerate(labels)}
    facets = [
        [index[(j, k)] for j, k in enumerate(g, start=1)] for g in itertools.product(range(1, p + 1), repeat=n)
    ]
    return SimplicialComplex(labels, facets, f"DJ({n},{p})")


def deleted_join_parts(facet_labels: Sequence[Tuple[int, int]], p: int) -> Tuple[FrozenSet[int], ...]:
    """Ordered disjoint union (A_1, ..., A_p) named by a deleted-join facet."""
    parts = [set() for _ in range(p)]
    for j, k in facet_labels:
        parts[k - 1].add(j)
    return tuple(frozenset(a) for a in parts)


def k_descriptors(n: int, m: int, p: int) -> List[FacetDescriptor]:
    """Canonical descriptors of the facets of K, axis-major, deduplicated."""
    out = dict()
    for axis in range(1, m + 1):
        for part in enumerate_partitions(n, p, ordered=True, allow_empty=True):
            out.setdefault(FacetDescriptor(axis, part.parts), None)
    return list(out)


def k_facet_count(n: int, m: int, p: int) -> int:
    return m * (p**n - p) + p


def config_complex_K(n: int, m: int, p: int, caps: Optional[Caps] = None):
    """The configuration complex K(n, m, p) and its cyclic shift action.

    Returns ``(complex, action)``. Facet t of the complex corresponds to
    ``k_descriptors(n, m, p)[t]``.
    """
    caps = caps or default_caps()
    if n < 1 or m < 1 or p < 2:
        raise ValueError("need n, m >= 1 and p >= 2")
    caps.vertices(p * n**m, "configuration complex K")
    caps.faces(m * p**n, "configuration complex K facets")
    grid = grid_indices(n, m)
    labels = [KVertex(k, x) for k in range(1, p + 1) for x in grid]
    index = {lab: i for i, lab in enumerate(labels)}
    facets = []
    for desc in k_descriptors(n, m, p):
        g = desc.assignment()
        facets.append([index[KVertex(g[x[desc.axis - 1] - 1], x)] for x in grid])
    cx = SimplicialComplex(labels, facets, f"K({n},{m},{p})")
    shift = tuple(index[KVertex(v.part % p + 1, v.index)] for v in labels)
    return cx, PermutationAction(shift, p)


def k_facet_descriptor(facet_labels: Sequence[KVertex], p: int) -> FacetDescriptor:
    """Recover the canonical descriptor of a facet of K from its vertex labels."""
    m = len(facet_labels[0].index)
    for axis in range(1, m + 1):
        part_of: Dict[int, int] = {}
        if all(part_of.setdefault(v.index[axis - 1], v.part) == v.part for v in facet_labels):
            parts = [set() for _ in range(p)]
            for j, k in part_of.items():
                parts[k - 1].add(j)
            return FacetDescriptor(axis, tuple(parts))
    raise ValueError("vertex set is not a facet of K")


def nerve_of_facets(cx: SimplicialComplex, facet_label=None, caps: Optional[Caps] = None, name: str = "") -> SimplicialComplex:
    """Nerve of the facet family: vertex t is facet t of ``cx``.

    The nerve's facets are the maximal sets {facets containing v} over the
    vertices v of ``cx``. ``facet_label`` maps a facet's vertex labels to the
    label of the corresponding nerve vertex (default: the facet's id tuple).
    """
    caps = caps or default_caps()
    caps.faces(len(cx.facets), "nerve vertices")
    dual: List[List[int]] = [[] for _ in range(cx.vertex_count)]
    for t, f in enumerate(cx.facets):
        for v in f:
            dual[v].append(t)
    if facet_label is None:
        labels = list(cx.facets)
    else:
        labels = [facet_label(cx.label_face(f)) for f in cx.facets]
    return SimplicialComplex.from_generators(labels, dual, name or f"N({cx.name})")


def induced_subcomplex(cx: SimplicialComplex, labels: Sequence[Hashable], name: str = "") -> SimplicialComplex:
    ids = frozenset(cx.index[x] for x in labels)
    relabel = {cx.index[x]: i for i, x in enumerate(labels)}
    gens = ([relabel[v] for v in f if v in ids] for f in cx.facets)
    return SimplicialComplex.from_generators(labels, (g for g in gens if g), name)


def join(complexes: Sequence[SimplicialComplex], name: str = "", caps: Optional[Caps] = None) -> SimplicialComplex:
    """Join of complexes with pairwise disjoint label sets.

    Empty factors (only the empty face) are units for the join.
    """
    caps = caps or default_caps()
    if len(complexes) == 1:
        return complexes[0]
    labels: List[Hashable] = []
    seen = set()
    offsets = []
    for cx in complexes:
        clash = seen.intersection(cx.labels)
        if clash:
            raise ValueError(f"label collision in join: {sorted(map(str, clash))[:3]}")
        seen.update(cx.labels)
        offsets.append(len(labels))
        labels.extend(cx.labels)
    factors = [[tuple(v + off for v in f) for f in cx.facets] for cx, off in zip(complexes, offsets) if cx.facets]
    caps.faces(math.prod(len(fs) for fs in factors), "join facets")
    facets = [sum(combo, ()) for combo in itertools.product(*factors)] if factors else []
    return SimplicialComplex(labels, facets, name or " * ".join(cx.name for cx in complexes))


def barycentric_subdivision(cx: SimplicialComplex, caps: Optional[Caps] = None) -> SimplicialComplex:
    """Vertices are the nonempty faces (as id tuples of ``cx``); facets are maximal chains."""
    caps = caps or default_caps()
    faces = cx.all_faces(caps)
    caps.faces(sum(math.factorial(len(f)) for f in cx.facets), f"sd({cx.name}) chains")
    index = {f: i for i, f in enumerate(faces)}
    chains = []
    for f in cx.facets:
        for order in itertools.permutations(f):
            chains.append([index[tuple(sorted(order[:r]))] for r in range(1, len(order) + 1)])
    return SimplicialComplex(faces, chains, f"sd({cx.name})")


# --- the subcomplexes M, L_i, C, B and T --------------------------------------


def _m_labels(n: int, p: int) -> List[FacetDescriptor]:
    return [FacetDescriptor(1, part.parts) for part in enumerate_partitions(n, p, ordered=True, allow_empty=True)]


def _transversal_facets(vertex_parts: Sequence[Tuple[FrozenSet[int], ...]], n: int, p: int):
    # one generator per injective tuple (j_1..j_p): vertices with j_l in A_l for all l
    for js in itertools.permutations(range(1, n + 1), p):
        yield [t for t, parts in enumerate(vertex_parts) if all(j in a for j, a in zip(js, parts))]


def subcomplex_L(i: int, n: int, p: int, m: Optional[int] = None, caps: Optional[Caps] = None) -> SimplicialComplex:
    """L_i: axis-i descriptors of ordered partitions; faces have all coordinatewise intersections nonempty."""
    caps = caps or default_caps()
    if i < 2 or (m is not None and i > m):
        raise ValueError(f"L_i needs 2 <= i <= m, got i={i}")
    caps.faces(math.factorial(p) * p**n, f"L_{i} vertices")
    labels = [FacetDescriptor(i, part.parts) for part in enumerate_partitions(n, p, ordered=True)]
    facets = list(_transversal_facets([d.parts for d in labels], n, p))
    return SimplicialComplex.from_generators(labels, facets, f"L_{i}({n},{p})")


def complex_C(n: int, p: int, caps: Optional[Caps] = None) -> SimplicialComplex:
    """C_{n,p}: ordered partitions of [n] into p nonempty parts, same face rule as L_i."""
    caps = caps or default_caps()
    caps.faces(math.factorial(p) * p**n, "C vertices")
    if p > n:
        return SimplicialComplex([], [], f"C({n},{p})")
    labels = [part.parts for part in enumerate_partitions(n, p, ordered=True)]
    return SimplicialComplex.from_generators(labels, list(_transversal_facets(labels, n, p)), f"C({n},{p})")


class ProofComplexes:
    """Lazily built K, N, M, L_i, T and friends for one parameter triple."""

    def __init__(self, n: int, m: int, p: int, caps: Optional[Caps] = None):
        self.n, self.m, self.p = n, m, p
        self.caps = caps or default_caps()

    @cached_property
    def _k(self):
        return config_complex_K(self.n, self.m, self.p, self.caps)

    @property
    def K(self) -> SimplicialComplex:
        return self._k[0]

    @property
    def K_action(self) -> PermutationAction:
        return self._k[1]

    @cached_property
    def N(self) -> SimplicialComplex:
        return nerve_of_facets(self.K, lambda labs: k_facet_descriptor(labs, self.p), self.caps, f"N({self.n},{self.m},{self.p})")

    @cached_property
    def N_action(self) -> PermutationAction:
        return induced_action(self.K_action, "nerve", self.K, self.N)

    @cached_property
    def M(self) -> SimplicialComplex:
        return induced_subcomplex(self.N, _m_labels(self.n, self.p), f"M({self.n},{self.p})")

    @cached_property
    def M_action(self) -> PermutationAction:
        return induced_action(self.N_action, "subcomplex", self.N, self.M)

    def L(self, i: int) -> SimplicialComplex:
        return self._L[i]

    def L_action(self, i: int) -> PermutationAction:
        return induced_action(self.N_action, "subcomplex", self.N, self.L(i))

    @cached_property
    def _L(self) -> Dict[int, SimplicialComplex]:
        return {i: subcomplex_L(i, self.n, self.p, self.m, self.caps) for i in range(2, self.m + 1)}

    @cached_property
    def T(self) -> SimplicialComplex:
        factors = [self.M] + [self.L(i) for i in range(2, self.m + 1)]
        return join(factors, f"T({self.n},{self.m},{self.p})", self.caps)

    @cached_property
    def T_action(self) -> PermutationAction:
        factors = [self.M] + [self.L(i) for i in range(2, self.m + 1)]
        actions = [self.M_action] + [self.L_action(i) for i in range(2, self.m + 1)]
        return induced_action(actions, "join", factors, self.T)


def subcomplex_M(n: int, m: int, p: int, caps: Optional[Caps] = None) -> SimplicialComplex:
    """M: induced subcomplex of the nerve N on the axis-1 descriptors."""
    return ProofComplexes(n, m, p, caps).M


def complex_B(n: int, p: int, caps: Optional[Caps] = None) -> SimplicialComplex:
    """Nerve of the facets of the pairwise deleted join; labels are ordered tuples (A_1..A_p)."""
    dj = deleted_join_pairwise(n, p, caps)
    return nerve_of_facets(dj, lambda labs: deleted_join_parts(labs, p), caps, f"B({n},{p})")


# --- verifiers ---------------------------------------------------------------


@dataclass
class IsoReport:
    name: str
    bijective: bool
    forward_faces: bool
    backward_faces: bool
    facets_match: bool
    counterexamples: List = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.bijective and self.forward_faces and self.backward_faces

    def to_json(self):
        return {
            "name": self.name,
            "pass": self.passed,
            "bijective": self.bijective,
            "forward_faces": self.forward_faces,
            "backward_faces": self.backward_faces,
            "facets_match": self.facets_match,
            "counterexamples": [label_to_json(c) for c in self.counterexamples[:5]],
        }


def check_isomorphism(x: SimplicialComplex, y: SimplicialComplex, vertex_map: Callable, name: str = "") -> IsoReport:
    """Check that ``vertex_map`` (on labels) is a simplicial isomorphism x -> y."""
    fwd = {}
    for lab in x.labels:
        img = vertex_map(lab)
        if img not in y.index:
            return IsoReport(name, False, False, False, False, [lab])
        fwd[x.index[lab]] = y.index[img]
    bij = len(set(fwd.values())) == len(fwd) == y.vertex_count
    bwd = {v: k for k, v in fwd.items()}
    bad = []
    forward = True
    for f in x.facets:
        if not y.is_face(fwd[v] for v in f):
            forward = False
            bad.append(x.label_face(f))
    backward = bij
    if bij:
        for f in y.facets:
            if not x.is_face(bwd[v] for v in f):
                backward = False
                bad.append(y.label_face(f))
    mapped = {tuple(sorted(fwd[v] for v in f)) for f in x.facets}
    return IsoReport(name, bij, forward, backward, mapped == set(y.facets), bad)


def verify_iso(kind: str, n: int, p: int, i: int = 2, m: int = 2, caps: Optional[Caps] = None) -> IsoReport:
    """``kind`` is "B-M" (B to M) or "C-L" (C_{n,p} to L_i) via the explicit bijections."""
    if kind == "B-M":
        b = complex_B(n, p, caps)
        mm = ProofComplexes(n, m, p, caps).M
        return check_isomorphism(b, mm, lambda parts: FacetDescriptor(1, parts), f"B({n},{p}) ~ M({n},{p})")
    if kind == "C-L":
        c = complex_C(n, p, caps)
        li = subcomplex_L(i, n, p, None, caps)
        return check_isomorphism(c, li, lambda parts: FacetDescriptor(i, parts), f"C({n},{p}) ~ L_{i}({n},{p})")
    raise ValueError(f"unknown isomorphism kind {kind!r}")


@dataclass
class TInNReport:
    n: int
    m: int
    p: int
    facets_checked: int
    witnesses: List[Tuple[Tuple[int, ...], KVertex]]
    witness_failures: List
    nerve_failures: List

    @property
    def passed(self) -> bool:
        return self.facets_checked > 0 and not self.witness_failures and not self.nerve_failures

    def to_json(self):
        return {
            "pass": self.passed,
            "facets_checked": self.facets_checked,
            "witness_failures": [label_to_json(x) for x in self.witness_failures[:5]],
            "nerve_failures": [label_to_json(x) for x in self.nerve_failures[:5]],
            "sample_witnesses": [{"facet": list(f), "vertex": v.to_json()} for f, v in self.witnesses[:5]],
        }


def t_facet_witness(tau1: Sequence[FacetDescriptor], taus: Sequence[Sequence[FacetDescriptor]], n: int, p: int) -> KVertex:
    """Vertex of K common to every facet named in tau1 (an M-facet) and taus (L_i-facets, i = 2..m)."""
    j, k = next(
        (j, k) for k in range(1, p + 1) for j in range(1, n + 1) if all(j in d.parts[k - 1] for d in tau1)
    )
    coords = [j]
    for tau_i in taus:
        common = frozenset.intersection(*(d.parts[k - 1] for d in tau_i))
        coords.append(min(common))
    return KVertex(k, tuple(coords))


def verify_T_in_N(n: int, m: int, p: int, caps: Optional[Caps] = None, pc: Optional[ProofComplexes] = None) -> TInNReport:
    """Every facet of T is a face of N, with an explicit common vertex of K."""
    if m < 2:
        raise ValueError("verify_T_in_N needs m >= 2")
    pc = pc or ProofComplexes(n, m, p, caps)
    factors = [pc.M] + [pc.L(i) for i in range(2, m + 1)]
    owner = {lab: t for t, cx in enumerate(factors) for lab in cx.labels}
    witnesses, wfail, nfail = [], [], []
    for facet in pc.T.facets:
        labs = pc.T.label_face(facet)
        groups: List[List[FacetDescriptor]] = [[] for _ in factors]
        for lab in labs:
            groups[owner[lab]].append(lab)
        try:
            v = t_facet_witness(groups[0], groups[1:], n, p)
        except (StopIteration, ValueError):
            wfail.append(labs)
            continue
        if not all(d.contains(v) for d in labs):
            wfail.append(labs)
        witnesses.append((facet, v))
        if not pc.N.is_face_labels(labs):
            nfail.append(labs)
    return TInNReport(n, m, p, len(pc.T.facets), witnesses, wfail, nfail)


@dataclass
class NerveMapReport:
    images_nonempty: bool
    simplicial: bool
    equivariant: bool
    sd_sizes: Dict[str, int]
    counterexamples: List = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.images_nonempty and self.simplicial and self.equivariant

    def to_json(self):
        return {
            "pass": self.passed,
            "images_nonempty": self.images_nonempty,
            "simplicial": self.simplicial,
            "equivariant": self.equivariant,
            "sd_sizes": self.sd_sizes,
            "counterexamples": [label_to_json(c) for c in self.counterexamples[:5]],
        }


def verify_nerve_map(n: int, m: int, p: int, caps: Optional[Caps] = None, pc: Optional[ProofComplexes] = None) -> NerveMapReport:
    """Check that {tau_1..tau_k} -> tau_1 & ... & tau_k is an equivariant simplicial map sd(N) -> sd(K)."""
    pc = pc or ProofComplexes(n, m, p, caps)
    k, n_cx = pc.K, pc.N
    sd_n = barycentric_subdivision(n_cx, pc.caps)
    sd_k = barycentric_subdivision(k, pc.caps)
    act_n = induced_action(pc.N_action, "sd", n_cx, sd_n)
    act_k = induced_action(pc.K_action, "sd", k, sd_k)

    bad = []
    phi = []
    nonempty = True
    for face in sd_n.labels:
        # nerve vertex t is facet t of K
        common = frozenset.intersection(*(frozenset(k.facets[t]) for t in face))
        img = sd_k.index.get(tuple(sorted(common)))
        if not common or img is None:
            nonempty = False
            bad.append(face)
            phi.append(None)
        else:
            phi.append(img)
    simplicial = nonempty
    if nonempty:
        for chain in sd_n.facets:
            if not sd_k.is_face({phi[u] for u in chain}):
                simplicial = False
                bad.append(sd_n.label_face(chain))
    equivariant = nonempty and all(
        phi[act_n.generator[u]] == act_k.generator[phi[u]] for u in range(sd_n.vertex_count)
    )
    sizes = {"sd(N) vertices": sd_n.vertex_count, "sd(K) vertices": sd_k.vertex_count}
    return NerveMapReport(nonempty, simplicial, equivariant, sizes, bad)
