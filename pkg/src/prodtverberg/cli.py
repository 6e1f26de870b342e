"""Command-line front end: find, demo, verify, gen.

Exit codes: 0 success, 1 negative outcome (no witness, failed check),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from .complexes import Caps, default_caps
from .geometry import line_meets_convex, point_in_hull
from .grid import (
    certify_witness,
    colorful_helly_extract,
    colorful_helly_n,
    find_tverberg_partition,
    montejano_transversal,
    random_grid,
)
from .homology import parse_field
from .params import Params, hypothesis_note, required_n
from .serialize import (
    InputError,
    dumps,
    grid_from_json,
    grid_to_json,
    line_to_json,
    load_grid,
    point_json,
    polytopes_from_json,
    witness_to_json,
)
from .suite import FAIL, PASS, run_proof_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


def _caps(text: Optional[str]) -> Caps:
    if not text:
        return default_caps()
    try:
        v, f = (int(t) for t in text.split(","))
    except ValueError:
        raise InputError("--caps expects MAX_VERTICES,MAX_FACES") from None
    return Caps(v, f)


def _params(args, need_n: bool = False) -> Params:
    for name in ("d", "m", "p"):
        if getattr(args, name, None) is None:
            raise InputError(f"--{name} is required")
    n = args.n if getattr(args, "n", None) is not None else required_n(args.d, args.m, args.p)
    try:
        return Params(args.d, args.m, args.p, n)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _grid(args, p: Optional[int] = None):
    if args.grid:
        return load_grid(args.grid, p), None
    prm = _params(args)
    seed = 0 if args.seed is None else args.seed
    return random_grid(prm, seed, args.bound), seed


def _emit(command: str, params: dict, payload: dict, ok: bool, seed, started: float, timing: bool) -> None:
    report = {"command": command, "params": params, "payload": payload, "pass": ok}
    if seed is not None:
        report["seed"] = seed
    if timing:
        report["elapsed_seconds"] = round(time.perf_counter() - started, 3)
    print(dumps(report))


def cmd_find(args) -> int:
    started = time.perf_counter()
    if args.p is not None and args.p < 2:
        raise InputError("p must be at least 2")
    grid, seed = _grid(args, args.p)
    prm = grid.params
    tw = find_tverberg_partition(grid, prm.p)
    payload = {"note": hypothesis_note(prm.p)}
    if tw is None:
        payload["witness"] = "none"
        _emit("find", prm.as_dict(), payload, False, seed, started, args.timing)
        return EXIT_NEGATIVE
    payload["witness"] = witness_to_json(tw)
    payload["recertified"] = certify_witness(grid, tw)
    _emit("find", prm.as_dict(), payload, payload["recertified"], seed, started, args.timing)
    return EXIT_OK if payload["recertified"] else EXIT_NEGATIVE


def _demo_montejano(args, started) -> int:
    if args.grid:
        grid, seed = load_grid(args.grid, 2), None
    else:
        if (args.d, args.m, args.n) not in ((None, None, None), (3, 2, 3)) or (args.p not in (None, 2)):
            raise InputError("montejano needs d=3, m=2, n=3, p=2")
        args.d, args.m, args.n, args.p = 3, 2, 3, 2
        grid, seed = _grid(args)
    prm = grid.params
    if (prm.d, prm.m, prm.n) != (3, 2, 3):
        raise InputError("montejano needs d=3, m=2, n=3, p=2")
    res = montejano_transversal(grid)
    payload = {
        "color": res.color,
        "line": line_to_json(res.line),
        "witness": witness_to_json(res.witness),
        "triangles_met": list(res.verified),
    }
    ok = all(res.verified)
    if args.sets:
        try:
            with open(args.sets) as fh:
                sets = polytopes_from_json(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{args.sets}: {exc}") from None
        if res.color in sets:
            met = [line_meets_convex(res.line, poly) for poly in sets[res.color]]
            payload["sets_met"] = met
            ok &= all(met)
    _emit("demo montejano", prm.as_dict(), payload, ok, seed, started, args.timing)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _demo_colorful(args, started) -> int:
    if args.d is None or args.p is None:
        raise InputError("colorful-helly needs --d and --p")
    m, n = args.d + 1, colorful_helly_n(args.d, args.p)
    if (args.m is not None and args.m != m) or (args.n is not None and args.n != n):
        raise InputError(f"colorful-helly needs m=d+1={m} and n=floor((2d+1)p/(d+1))={n}")
    args.m, args.n = m, n
    if args.grid:
        grid, seed = load_grid(args.grid, args.p), None
        if (grid.params.d, grid.params.m, grid.params.n) != (args.d, m, n):
            raise InputError("grid file does not match the colorful-helly parameters")
    else:
        grid, seed = _grid(args)
    prm = grid.params
    tw = find_tverberg_partition(grid, prm.p)
    if tw is None:
        _emit("demo colorful-helly", prm.as_dict(), {"witness": "none"}, False, seed, started, args.timing)
        return EXIT_NEGATIVE
    axis, s = colorful_helly_extract(tw)
    in_all = all(point_in_hull(tw.point, grid.face_points(axis, {j})[1]) is not None for j in s)
    bound = 2 * prm.p - prm.n
    payload = {
        "axis": axis,
        "S": sorted(s),
        "size": len(s),
        "bound_2p_minus_n": bound,
        "point": point_json(tw.point),
        "point_in_every_face": in_all,
        "witness": witness_to_json(tw),
    }
    ok = len(s) >= bound and in_all
    _emit("demo colorful-helly", prm.as_dict(), payload, ok, seed, started, args.timing)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_demo(args) -> int:
    started = time.perf_counter()
    if args.which == "montejano":
        return _demo_montejano(args, started)
    return _demo_colorful(args, started)


def cmd_verify(args) -> int:
    started = time.perf_counter()
    if args.suite != "proof":
        raise InputError(f"unknown suite {args.suite!r}")
    for name in ("n", "m", "p"):
        if getattr(args, name) is None:
            raise InputError(f"--{name} is required")
    if args.p < 2 or args.n < 1 or args.m < 1:
        raise InputError("need n, m >= 1 and p >= 2")
    fields = [parse_field(t) for t in args.field.split(",")] if args.field else ("Q", 2, 3)
    checks = run_proof_suite(args.n, args.m, args.p, args.d, _caps(args.caps), fields)
    summary = {s: sum(c.status == s for c in checks) for s in {c.status for c in checks}}
    ok = all(c.status != FAIL for c in checks)
    params = {"n": args.n, "m": args.m, "p": args.p, "d": args.d}
    payload = {"checks": [c.to_json() for c in checks], "summary": summary}
    _emit("verify", params, payload, ok, None, started, args.timing)
    for c in checks:
        print(f"{c.status:>16}  {c.name}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_gen(args) -> int:
    prm = _params(args)
    grid = random_grid(prm, args.seed if args.seed is not None else 0, args.bound)
    text = dumps(grid_to_json(grid))
    try:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror}") from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prodtverberg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, grid=True):
        sp.add_argument("--d", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--n", type=int, help="defaults to the theorem's bound")
        sp.add_argument("--p", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--bound", type=int, default=20, help="coordinate range [-B, B]")
        sp.add_argument("--no-timing", dest="timing", action="store_false")
        if grid:
            sp.add_argument("--grid", help="grid JSON file")

    sp = sub.add_parser("find", help="search for an axis and a Tverberg partition")
    common(sp)
    sp.add_argument("--random", action="store_true", help="generate the grid from --d --m --n --p --seed")
    sp.set_defaults(func=cmd_find)

    sp = sub.add_parser("demo", help="transversal and colorful Helly demos")
    sp.add_argument("which", choices=["montejano", "colorful-helly"])
    common(sp)
    sp.add_argument("--sets", help="optional V-polytope file {rows: [...], columns: [...]} for montejano")
    sp.set_defaults(func=cmd_demo)

    sp = sub.add_parser("verify", help="check the finite objects of the proof")
    sp.add_argument("--suite", default="proof")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--d", type=int, help="check T against (d+1)(p-1)-1 instead of the join bound")
    sp.add_argument("--caps", help="MAX_VERTICES,MAX_FACES")
    sp.add_argument("--field", help="comma list, e.g. Q,2,3")
    sp.add_argument("--no-timing", dest="timing", action="store_false")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="write a random grid JSON file")
    common(sp, grid=False)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_gen)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "find" and not args.random and not args.grid:
        parser.error("find needs --grid FILE or --random")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
