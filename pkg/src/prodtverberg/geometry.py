"""Exact rational LP feasibility and convex-hull queries.

Everything here works over :class:`fractions.Fraction`; there are no
tolerances. Polytopes are given in V-representation (finite point lists).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

Point = Tuple[Fraction, ...]

MAX_PIVOTS = 100_000


class PivotLimitExceeded(RuntimeError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or 'a/b' strings")
    return Fraction(value)


def as_point(coords) -> Point:
    return tuple(as_fraction(c) for c in coords)


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def lp_feasible(
    a: Sequence[Sequence], b: Sequence, nonneg_vars: Optional[int] = None, *, max_pivots: int = MAX_PIVOTS
) -> Optional[List[Fraction]]:
    """Find x >= 0 with ``a @ x == b``, or return None if there is none.

    Phase-1 simplex with Bland's rule on a dense Fraction tableau. Only
    structural columns may enter the basis; artificial columns that leave
    stay out.
    """
    rows = len(a)
    if len(b) != rows:
        raise ValueError(f"matrix has {rows} rows but right-hand side has {len(b)} entries")
    if nonneg_vars is None:
        nonneg_vars = len(a[0]) if rows else 0
    cols = nonneg_vars
    for i, row in enumerate(a):
        if len(row) != cols:
            raise ValueError(f"row {i} has {len(row)} entries, expected {cols}")
    if rows == 0:
        return [Fraction(0)] * cols

    width = cols + rows + 1
    tab: List[List[Fraction]] = []
    for i in range(rows):
        rhs = as_fraction(b[i])
        sign = -1 if rhs < 0 else 1
        row = [sign * as_fraction(v) for v in a[i]] + [Fraction(0)] * rows + [sign * rhs]
        row[cols + i] = Fraction(1)
        tab.append(row)
    basis = list(range(cols, cols + rows))

    # phase-1 reduced costs: minimise the sum of artificials
    cost = [Fraction(0)] * width
    for row in tab:
        for j in range(cols):
            if row[j]:
                cost[j] -= row[j]
        cost[-1] -= row[-1]

    pivots = 0
    while True:
        enter = next((j for j in range(cols) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(rows):
            coef = tab[i][enter]
            if coef > 0:
                ratio = tab[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen: phase-1 objective is bounded below by zero
            raise RuntimeError("phase-1 problem reported unbounded")
        pivots += 1
        if pivots > max_pivots:
            raise PivotLimitExceeded(f"more than {max_pivots} pivots")
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter

    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * cols
    for i, var in enumerate(basis):
        if var < cols:
            x[var] = tab[i][-1]
    return x


def _pivot(tab: List[List[Fraction]], cost: List[Fraction], r: int, c: int) -> None:
    prow = tab[r]
    piv = prow[c]
    if piv != 1:
        prow[:] = [v / piv for v in prow]
    nz = [j for j, v in enumerate(prow) if v]
    for row in (*tab[:r], *tab[r + 1 :], cost):
        f = row[c]
        if f:
            for j in nz:
                row[j] -= f * prow[j]


@dataclass(frozen=True)
class HullWitness:
    """A common point of several hulls with convex coefficients for each."""

    point: Point
    coefficients: Tuple[Dict[int, Fraction], ...]

    def check(self, hulls: Sequence[Sequence[Point]]) -> bool:
        if len(hulls) != len(self.coefficients):
            return False
        for hull, coef in zip(hulls, self.coefficients):
            if any(w < 0 or not 0 <= k < len(hull) for k, w in coef.items()):
                return False
            if sum(coef.values()) != 1:
                return False
            if convex_combination(hull, coef) != self.point:
                return False
        return True


def convex_combination(points: Sequence[Point], coef: Dict[int, Fraction]) -> Point:
    d = len(points[0])
    acc = [Fraction(0)] * d
    for k, w in coef.items():
        for c in range(d):
            acc[c] += w * points[k][c]
    return tuple(acc)


def _dimension(point_sets: Sequence[Sequence[Point]]) -> int:
    dims = {len(pt) for pts in point_sets for pt in pts}
    if len(dims) != 1:
        raise ValueError(f"points of mixed dimensions {sorted(dims)}")
    return dims.pop()


def hulls_common_point(hulls: Sequence[Sequence]) -> Optional[HullWitness]:
    """Decide whether the convex hulls of the given point sets intersect.

    Variables are one weight per (hull, point); each hull's weights sum to
    one and every hull's weighted sum equals the first hull's.
    """
    if not hulls:
        raise ValueError("need at least one hull")
    hulls = [[as_point(pt) for pt in h] for h in hulls]
    if any(not h for h in hulls):
        raise ValueError("hulls must be nonempty")
    d = _dimension(hulls)
    offsets = [0]
    for h in hulls:
        offsets.append(offsets[-1] + len(h))
    nvars = offsets[-1]

    a: List[List[Fraction]] = []
    b: List[Fraction] = []
    for j, h in enumerate(hulls):
        row = [Fraction(0)] * nvars
        for k in range(len(h)):
            row[offsets[j] + k] = Fraction(1)
        a.append(row)
        b.append(Fraction(1))
    for j in range(1, len(hulls)):
        for c in range(d):
            row = [Fraction(0)] * nvars
            for k, pt in enumerate(hulls[0]):
                row[k] = pt[c]
            for k, pt in enumerate(hulls[j]):
                row[offsets[j] + k] = -pt[c]
            a.append(row)
            b.append(Fraction(0))

    x = lp_feasible(a, b, nvars)
    if x is None:
        return None
    coefficients = tuple(
        {k: x[offsets[j] + k] for k in range(len(h)) if x[offsets[j] + k]} for j, h in enumerate(hulls)
    )
    return HullWitness(convex_combination(hulls[0], coefficients[0]), coefficients)


def point_in_hull(point, points: Sequence) -> Optional[Dict[int, Fraction]]:
    """Convex coefficients expressing ``point`` over ``points``, or None."""
    point = as_point(point)
    points = [as_point(pt) for pt in points]
    d = _dimension([points, [point]])
    a = [[pt[c] for pt in points] for c in range(d)]
    a.append([Fraction(1)] * len(points))
    x = lp_feasible(a, list(point) + [Fraction(1)], len(points))
    if x is None:
        return None
    return {k: w for k, w in enumerate(x) if w}


@dataclass(frozen=True)
class Line:
    base: Point
    direction: Point

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        object.__setattr__(self, "direction", as_point(self.direction))
        if len(self.base) != len(self.direction):
            raise ValueError("base and direction differ in dimension")
        if not any(self.direction):
            raise ValueError("line direction must be nonzero")

    def at(self, t) -> Point:
        t = as_fraction(t)
        return tuple(b + t * v for b, v in zip(self.base, self.direction))


def line_meets_convex(line: Line, points: Sequence) -> bool:
    """True iff the line meets conv(points).

    Unknowns: hull weights, then t+ and t- for the line parameter.
    """
    points = [as_point(pt) for pt in points]
    d = _dimension([points, [line.base]])
    k = len(points)
    a = []
    for c in range(d):
        a.append([pt[c] for pt in points] + [-line.direction[c], line.direction[c]])
    a.append([Fraction(1)] * k + [Fraction(0), Fraction(0)])
    return lp_feasible(a, list(line.base) + [Fraction(1)], k + 2) is not None


def _line_through(x: Point, candidates: Sequence[Point]) -> Line:
    for v in candidates:
        if v != x:
            return Line(x, tuple(vi - xi for vi, xi in zip(v, x)))
    e1 = tuple(Fraction(int(c == 0)) for c in range(len(x)))
    return Line(x, e1)


def extract_transversal_line(witness: HullWitness, t_a: Sequence, t_b: Sequence, t_c: Sequence) -> Line:
    """Line meeting conv(t_a), conv(t_b) and conv(t_c).

    ``witness`` certifies a point of conv(t_a) and conv(t_b + t_c); its
    second coefficient map indexes the concatenation ``t_b + t_c``.
    """
    t_a, t_b, t_c = ([as_point(pt) for pt in t] for t in (t_a, t_b, t_c))
    if not witness.check([t_a, t_b + t_c]):
        raise ValueError("witness does not certify conv(t_a) and conv(t_b + t_c)")
    x = witness.point
    coef = witness.coefficients[1]
    nb = len(t_b)
    mass_b = {k: w for k, w in coef.items() if k < nb}
    mass_c = {k - nb: w for k, w in coef.items() if k >= nb}
    alpha = sum(mass_b.values(), Fraction(0))
    beta = sum(mass_c.values(), Fraction(0))
    if alpha == 0:
        return _line_through(x, t_b)
    if beta == 0:
        return _line_through(x, t_c)
    u = tuple(c / alpha for c in convex_combination(t_b, mass_b))
    v = tuple(c / beta for c in convex_combination(t_c, mass_c))
    if u == v:
        # then u == v == x; any line through x meets all three hulls
        return _line_through(x, t_c)
    return Line(u, tuple(vi - ui for ui, vi in zip(u, v)))
