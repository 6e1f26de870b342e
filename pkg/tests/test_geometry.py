import itertools
import random
from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from prodtverberg.geometry import (
    HullWitness,
    Line,
    PivotLimitExceeded,
    extract_transversal_line,
    hulls_common_point,
    line_meets_convex,
    lp_feasible,
    point_in_hull,
)


def basic_solution_oracle(a, b):
    """Feasible iff some basic solution is nonnegative (enumerate column subsets)."""
    rows, cols = len(a), len(a[0])
    A = sympy.Matrix(a)
    bb = sympy.Matrix(b)
    if bb.is_zero_matrix:
        return True
    for r in range(1, min(rows, cols) + 1):
        for cols_sel in itertools.combinations(range(cols), r):
            sub = A[:, list(cols_sel)]
            if sub.rank() != r:
                continue
            try:
                sol, params = sub.gauss_jordan_solve(bb)
            except ValueError:
                continue
            if params.shape[0] == 0 and all(v >= 0 for v in sol):
                return True
    return False


def test_lp_examples():
    x = lp_feasible([[1, 1]], [1])
    assert x is not None and sum(x) == 1 and min(x) >= 0
    assert lp_feasible([[1, 1]], [-1]) is None


def test_lp_interval_overlap():
    # y = 2*s (s in [0,1]) and y = 1 + 2*t (t in [0,1]); slacks for s, t <= 1
    # vars: s, t, u, v with s + u = 1, t + v = 1, 2s - 2t = 1
    x = lp_feasible([[1, 0, 1, 0], [0, 1, 0, 1], [2, -2, 0, 0]], [1, 1, 1])
    assert x is not None
    assert 1 <= 2 * x[0] <= 2


def test_lp_dimension_mismatch():
    with pytest.raises(ValueError):
        lp_feasible([[1, 1]], [1, 2])
    with pytest.raises(ValueError):
        lp_feasible([[1, 1], [1]], [1, 2])


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda rows: st.integers(1, 4).flatmap(
            lambda cols: st.tuples(
                st.lists(st.lists(st.integers(-3, 3), min_size=cols, max_size=cols), min_size=rows, max_size=rows),
                st.lists(st.integers(-3, 3), min_size=rows, max_size=rows),
            )
        )
    )
)
def test_lp_matches_basic_solution_oracle(system):
    a, b = system
    x = lp_feasible(a, b, max_pivots=500)
    if x is not None:
        assert all(v >= 0 for v in x)
        assert all(sum(F(c) * v for c, v in zip(row, x)) == rhs for row, rhs in zip(a, b))
    assert (x is not None) == basic_solution_oracle(a, b)


def test_pivot_cap_raises():
    # a system needing at least one pivot with the cap set to zero
    with pytest.raises(PivotLimitExceeded):
        lp_feasible([[1, 1]], [1], max_pivots=0)


def test_hulls_crossing_diagonals():
    w = hulls_common_point([[(0, 0), (2, 2)], [(0, 2), (2, 0)]])
    assert w.point == (1, 1)
    assert w.check([[(0, 0), (2, 2)], [(0, 2), (2, 0)]])


def test_hulls_distinct_singletons():
    assert hulls_common_point([[(0, 0)], [(1, 0)]]) is None


def test_hulls_intervals_three():
    hulls = [[(0,), (2,)], [(1,), (3,)], [(-1,), (F(3, 2),)]]
    w = hulls_common_point(hulls)
    assert 1 <= w.point[0] <= F(3, 2)
    assert w.check(hulls)


def test_hulls_mixed_dimensions():
    with pytest.raises(ValueError):
        hulls_common_point([[(0, 0)], [(1,)]])


def test_hulls_string_rationals():
    w = hulls_common_point([[("1/2",)], [(0,), (1,)]])
    assert w.point == (F(1, 2),)


def brute_interval(hulls):
    lo = max(min(h) for h in hulls)
    hi = min(max(h) for h in hulls)
    return lo <= hi


def test_hulls_one_dimensional_oracle():
    rng = random.Random(11)
    for _ in range(300):
        hulls = [[rng.randint(-6, 6) for _ in range(rng.randint(1, 4))] for _ in range(rng.randint(1, 4))]
        w = hulls_common_point([[(x,) for x in h] for h in hulls])
        assert (w is not None) == brute_interval(hulls)
        if w is not None:
            lo = max(min(h) for h in hulls)
            hi = min(max(h) for h in hulls)
            assert lo <= w.point[0] <= hi


def test_witness_soundness_recertified_per_hull():
    rng = random.Random(5)
    found = 0
    for _ in range(60):
        hulls = [[(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(rng.randint(1, 4))] for _ in range(3)]
        w = hulls_common_point(hulls)
        if w is None:
            continue
        found += 1
        assert w.check(hulls)
        for h in hulls:
            coef = point_in_hull(w.point, h)
            assert coef is not None and sum(coef.values()) == 1
    assert found > 0


def test_line_examples():
    assert line_meets_convex(Line((0, 0), (1, 1)), [(1, 0), (0, 1)])
    assert not line_meets_convex(Line((0, 2), (1, 0)), [(0, 0), (1, 0)])


def test_line_zero_direction():
    with pytest.raises(ValueError):
        Line((0, 0), (0, 0))


def test_line_through_sampled_hull_points():
    rng = random.Random(3)
    for _ in range(40):
        pts = [tuple(rng.randint(-9, 9) for _ in range(3)) for _ in range(4)]
        a, b = rng.sample(range(4), 2)
        wa = F(rng.randint(0, 5), 5)
        u = tuple(wa * x + (1 - wa) * y for x, y in zip(pts[a], pts[b]))
        v = pts[rng.randrange(4)]
        if u == v:
            continue
        line = Line(u, tuple(y - x for x, y in zip(u, v)))
        assert line_meets_convex(line, pts)


def test_extract_line_midpoint():
    t_a = [(1, 1, 1)]
    t_b = [(0, 0, 0)]
    t_c = [(2, 2, 2)]
    w = HullWitness((F(1), F(1), F(1)), ({0: F(1)}, {0: F(1, 2), 1: F(1, 2)}))
    line = extract_transversal_line(w, t_a, t_b, t_c)
    assert line.base == (0, 0, 0) and line.direction == (2, 2, 2)
    assert line.at(F(1, 2)) == (1, 1, 1)


def test_extract_line_massless_triangle():
    t_a = [(0, 0, 0), (2, 0, 0), (0, 2, 0)]
    t_b = [(0, 0, 0), (1, 1, 0), (-1, 1, 0)]
    t_c = [(5, 5, 5), (6, 5, 5), (5, 6, 5)]
    x = (F(0), F(0), F(0))
    w = HullWitness(x, ({0: F(1)}, {0: F(1)}))
    line = extract_transversal_line(w, t_a, t_b, t_c)
    assert line.base == x and line.direction == (5, 5, 5)
    for t in (t_a, t_b, t_c):
        assert line_meets_convex(line, t)


def test_extract_line_rejects_bad_witness():
    w = HullWitness((F(0),), ({0: F(1)}, {0: F(1)}))
    with pytest.raises(ValueError):
        extract_transversal_line(w, [(1,)], [(0,)], [(2,)])


def test_extract_line_random_instances():
    rng = random.Random(17)
    done = 0
    while done < 40:
        tri = [[tuple(rng.randint(-8, 8) for _ in range(3)) for _ in range(3)] for _ in range(3)]
        w = hulls_common_point([tri[0], tri[1] + tri[2]])
        if w is None:
            continue
        line = extract_transversal_line(w, *tri)
        assert all(line_meets_convex(line, t) for t in tri)
        done += 1
