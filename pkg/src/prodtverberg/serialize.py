"""JSON encodings for grids, witnesses and lines. Rationals travel as "a/b" strings."""

from __future__ import annotations

import json
from fractions import Fraction

from .geometry import Line, as_fraction, format_rational
from .grid import GridIndex, PointGrid, TverbergWitness
from .params import Params


class InputError(ValueError):
    pass


def index_key(x: GridIndex) -> str:
    return "(" + ",".join(map(str, x)) + ")"


def parse_index_key(key: str) -> GridIndex:
    body = key.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise InputError(f"bad grid index key {key!r}")
    try:
        return tuple(int(t) for t in body[1:-1].split(",") if t.strip())
    except ValueError:
        raise InputError(f"bad grid index key {key!r}") from None


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    try:
        return as_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational: {value!r}") from None


def point_json(pt) -> list:
    return [format_rational(c) for c in pt]


def grid_to_json(grid: PointGrid) -> dict:
    prm = grid.params
    return {
        "d": prm.d,
        "m": prm.m,
        "n": prm.n,
        "p": prm.p,
        "points": {index_key(x): point_json(pt) for x, pt in sorted(grid.points.items())},
    }


def grid_from_json(data: dict, p: int = None) -> PointGrid:
    try:
        d, m, n = int(data["d"]), int(data["m"]), int(data["n"])
        p = int(p if p is not None else data.get("p", 2))
        raw = data["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed grid JSON: {exc}") from None
    try:
        params = Params(d, m, p, n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    points = {}
    for key, coords in raw.items():
        x = parse_index_key(key)
        if len(x) != m:
            raise InputError(f"index {key} does not have {m} coordinates")
        points[x] = tuple(parse_rational(c) for c in coords)
    try:
        return PointGrid(params, points)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def load_grid(path: str, p: int = None) -> PointGrid:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return grid_from_json(data, p)


def witness_to_json(tw: TverbergWitness) -> dict:
    return {
        "axis": tw.axis,
        "parts": tw.partition.as_lists(),
        "point": point_json(tw.point),
        "coefficients": {
            str(k): {index_key(x): format_rational(w) for x, w in sorted(coef.items())}
            for k, coef in enumerate(tw.coefficients_by_index(), start=1)
        },
    }


def line_to_json(line: Line) -> dict:
    return {"base": point_json(line.base), "direction": point_json(line.direction)}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def polytopes_from_json(data) -> dict:
    """Lists of V-represented polytopes keyed by color: {"rows": [...], "columns": [...]}."""
    out = {}
    for color in ("rows", "columns"):
        sets = data.get(color)
        if sets is None:
            continue
        out[color] = [[tuple(parse_rational(c) for c in pt) for pt in poly] for poly in sets]
    return out
