"""Reduced simplicial homology over Q and prime fields.

Ranks are computed by sparse elimination: fraction-free integer row
reduction for Q, modular reduction for GF(q). Connectivity claims are
homological only; nothing here looks at fundamental groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Union

from .complexes import Caps, Face, SimplicialComplex, default_caps

Field = Union[str, int]  # "Q" or a prime q
DEFAULT_FIELDS: Sequence[Field] = ("Q", 2, 3)


def field_name(fld: Field) -> str:
    return "Q" if fld in ("Q", 0) else f"GF({fld})"


def parse_field(text: str) -> Field:
    t = text.strip().upper()
    if t in ("Q", "QQ", "RATIONAL"):
        return "Q"
    if t.startswith("GF(") and t.endswith(")"):
        t = t[3:-1]
    q = int(t)
    if q < 2 or any(q % r == 0 for r in range(2, math.isqrt(q) + 1)):
        raise ValueError(f"{q} is not a prime")
    return q


def faces_by_degree(cx: SimplicialComplex, up_to: int, caps: Optional[Caps] = None) -> List[List[Face]]:
    """Faces of dimensions -1..up_to; entry k+1 holds the k-faces, sorted."""
    return [cx.faces(k, caps) for k in range(-1, up_to + 1)]


def boundary_rows(faces_k: Sequence[Face], faces_km1: Sequence[Face]) -> List[Dict[int, int]]:
    """Signed boundary of each k-face as a sparse row over the (k-1)-faces."""
    index = {f: i for i, f in enumerate(faces_km1)}
    rows = []
    for f in faces_k:
        row = {}
        for t in range(len(f)):
            row[index[f[:t] + f[t + 1 :]]] = -1 if t % 2 else 1
        rows.append(row)
    return rows


def rank(rows: Sequence[Dict[int, int]], fld: Field = "Q") -> int:
    """Rank of a sparse integer matrix over Q or GF(q)."""
    if fld in ("Q", 0):
        return _rank_q(rows)
    return _rank_mod(rows, int(fld))


def _rank_q(rows) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for r in rows:
        row = {c: v for c, v in r.items() if v}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                g = math.gcd(*row.values())
                pivots[c] = {k: v // g for k, v in row.items()}
                break
            a, b = prow[c], row[c]
            new = {k: a * v for k, v in row.items()}
            for k, v in prow.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            g = math.gcd(*new.values()) if new else 1
            row = {k: v // g for k, v in new.items()} if g > 1 else new
    return len(pivots)


def _rank_mod(rows, q: int) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for r in rows:
        row = {c: v % q for c, v in r.items() if v % q}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                inv = pow(row[c], -1, q)
                pivots[c] = {k: v * inv % q for k, v in row.items()}
                break
            f = row[c]
            for k, v in prow.items():
                w = (row.get(k, 0) - f * v) % q
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
    return len(pivots)


@dataclass
class HomologyReport:
    complex: str
    field: str
    max_degree: int
    betti: List[int]  # reduced Betti numbers in degrees 0..max_degree
    empty: bool = False  # the empty complex has reduced H_{-1} of rank one
    face_counts: List[int] = field(default_factory=list)  # degrees -1..max_degree+1

    @property
    def connectivity(self) -> int:
        """Largest c with reduced homology zero through degree c (capped at max_degree)."""
        if self.empty:
            return -2
        c = -1
        for b in self.betti:
            if b:
                break
            c += 1
        return c

    def vanishes_through(self, degree: int) -> bool:
        if degree > self.max_degree:
            raise ValueError(f"homology only computed through degree {self.max_degree}")
        if self.empty:
            return degree < -1
        return all(b == 0 for b in self.betti[: degree + 1])

    def to_json(self) -> dict:
        return {
            "complex": self.complex,
            "field": self.field,
            "betti": self.betti,
            "empty": self.empty,
            "connectivity": self.connectivity,
        }


def reduced_betti(
    cx: SimplicialComplex, up_to: Optional[int] = None, fld: Field = "Q", caps: Optional[Caps] = None
) -> HomologyReport:
    """Reduced Betti numbers through degree ``up_to`` (default: the dimension)."""
    caps = caps or default_caps()
    if up_to is None:
        up_to = max(cx.dimension, 0)
    faces = faces_by_degree(cx, up_to + 1, caps)
    ranks = [0]  # rank of the boundary out of degree -1
    for k in range(0, up_to + 2):
        ranks.append(rank(boundary_rows(faces[k + 1], faces[k]), fld))
    # ranks[k + 1] = rank of boundary from degree k to k - 1
    betti = [len(faces[k + 1]) - ranks[k + 1] - ranks[k + 2] for k in range(0, up_to + 1)]
    return HomologyReport(cx.name, field_name(fld), up_to, betti, empty=not cx.facets, face_counts=[len(f) for f in faces])


@dataclass
class ConnectivityReport:
    complex: str
    target: int
    reports: List[HomologyReport]
    passed: bool
    fields_agree: bool

    @property
    def statement(self) -> str:
        c = min(r.connectivity for r in self.reports)
        return f"{self.complex} is homologically {c}-connected (checked through degree {self.reports[0].max_degree})"

    def to_json(self) -> dict:
        return {
            "complex": self.complex,
            "target": self.target,
            "pass": self.passed,
            "fields_agree": self.fields_agree,
            "statement": self.statement,
            "reports": [r.to_json() for r in self.reports],
        }


def homological_connectivity(
    cx: SimplicialComplex,
    target: int,
    fields: Sequence[Field] = DEFAULT_FIELDS,
    caps: Optional[Caps] = None,
    extra_degree: int = 1,
) -> ConnectivityReport:
    """Pass iff reduced homology vanishes through ``target`` over every field.

    Homology is computed one degree past the target so off-by-one slips in
    the expectations show up in the report. A negative target is vacuous
    for nonempty complexes (-1-connected means nonempty).
    """
    up_to = max(target + extra_degree, 0)
    reports = [reduced_betti(cx, up_to, f, caps) for f in fields]
    passed = all(r.vanishes_through(target) for r in reports)
    agree = len({tuple(r.betti) for r in reports}) == 1
    return ConnectivityReport(cx.name, target, reports, passed, agree)


def euler_characteristic_reduced(face_counts: Sequence[int]) -> int:
    """Sum of (-1)^k f_k over k = -1, 0, 1, ... given counts starting at degree -1."""
    return sum((-1) ** (k - 1) * f for k, f in enumerate(face_counts))


def check_boundary_squared(cx: SimplicialComplex, up_to: Optional[int] = None, caps: Optional[Caps] = None) -> bool:
    """d_{k-1} o d_k == 0 for k = 1..up_to+1 in integer arithmetic."""
    if up_to is None:
        up_to = cx.dimension
    faces = faces_by_degree(cx, up_to, caps)
    for k in range(1, up_to + 1):
        upper = boundary_rows(faces[k + 1], faces[k])
        lower = boundary_rows(faces[k], faces[k - 1])
        for row in upper:
            acc: Dict[int, int] = {}
            for mid, a in row.items():
                for low, b in lower[mid].items():
                    acc[low] = acc.get(low, 0) + a * b
            if any(acc.values()):
                return False
    return True
