"""Batch verification of the finite objects behind the proof, for one (n, m, p)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

from .complexes import (
    CapExceeded,
    Caps,
    ProofComplexes,
    check_action_free,
    default_caps,
    k_facet_count,
    verify_iso,
    verify_nerve_map,
    verify_T_in_N,
)
from .homology import DEFAULT_FIELDS, Field, homological_connectivity
from .params import join_connectivity_check, join_lower_bound, target_connectivity

PASS, FAIL, SKIPPED, NOT_APPLICABLE = "pass", "fail", "skipped (cap)", "not applicable"


@dataclass
class Check:
    name: str
    status: str
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "status": self.status, "details": self.details}


def _run(name: str, fn: Callable[[], tuple]) -> Check:
    try:
        ok, details = fn()
    except CapExceeded as exc:
        return Check(name, SKIPPED, {"reason": str(exc)})
    return Check(name, PASS if ok else FAIL, details)


def largest_theorem_d(m: int, p: int, n: int) -> Optional[int]:
    """Largest d >= 1 whose target the join bound at (m, p, n) covers, or None."""
    bound = join_lower_bound(m, p, n)
    d = (bound + 1) // (p - 1) - 1
    return d if d >= 1 else None


def run_proof_suite(
    n: int,
    m: int,
    p: int,
    d: Optional[int] = None,
    caps: Optional[Caps] = None,
    fields: Sequence[Field] = DEFAULT_FIELDS,
) -> List[Check]:
    """Run every check in order; cap overruns are reported as skipped, never as passes."""
    caps = caps or default_caps()
    pc = ProofComplexes(n, m, p, caps)
    checks: List[Check] = []

    def facet_counts():
        got = {
            "K": (len(pc.K.facets), k_facet_count(n, m, p)),
            "M": (len(pc.M.facets), n * p),
        }
        for i in range(2, m + 1):
            got[f"L_{i}"] = (len(pc.L(i).facets), math.perm(n, p))
        return all(a == b for a, b in got.values()), {k: {"found": a, "expected": b} for k, (a, b) in got.items()}

    checks.append(_run("facet counts", facet_counts))

    def actions():
        details, ok = {}, True
        for label, cx, act in (("K", pc.K, pc.K_action), ("N", pc.N, pc.N_action)):
            rep = check_action_free(cx, act)
            details[label] = rep.to_json()
            ok &= rep.invariant and rep.free and set(rep.vertex_orbits) == {p}
        for label, cx, act in [("M", pc.M, pc.M_action)] + [
            (f"L_{i}", pc.L(i), pc.L_action(i)) for i in range(2, m + 1)
        ] + [("T", pc.T, pc.T_action)]:
            inv = act.is_invariant(cx)
            details[label] = {"invariant": inv}
            ok &= inv
        return ok, details

    checks.append(_run("group actions (invariant, free on K and N)", actions))

    def isos():
        reps = [verify_iso("B-M", n, p, m=max(m, 1), caps=caps)]
        reps += [verify_iso("C-L", n, p, i=i, caps=caps) for i in range(2, m + 1)]
        return all(r.passed for r in reps), {r.name: r.to_json() for r in reps}

    checks.append(_run("isomorphisms B~M and C~L_i", isos))

    if m >= 2:
        def t_in_n():
            rep = verify_T_in_N(n, m, p, pc=pc)
            return rep.passed, rep.to_json()

        checks.append(_run("T is a subcomplex of N (explicit witnesses)", t_in_n))
    else:
        checks.append(Check("T is a subcomplex of N (explicit witnesses)", NOT_APPLICABLE, {"reason": "m = 1, T = M"}))

    def nerve_map():
        rep = verify_nerve_map(n, m, p, pc=pc)
        return rep.passed, rep.to_json()

    checks.append(_run("nerve map sd(N) -> sd(K)", nerve_map))

    def conn(cx_fn, target):
        def go():
            rep = homological_connectivity(cx_fn(), target, fields, caps)
            return rep.passed, rep.to_json()

        return go

    checks.append(_run(f"M homologically {n - 2}-connected", conn(lambda: pc.M, n - 2)))
    for i in range(2, m + 1):
        t = max(-1, n - p - 1)
        checks.append(_run(f"L_{i} homologically {t}-connected", conn(lambda i=i: pc.L(i), t)))
    t_target = target_connectivity(d, p) if d is not None else join_lower_bound(m, p, n)
    checks.append(_run(f"T homologically {t_target}-connected", conn(lambda: pc.T, t_target)))

    theorem_d = d if d is not None else largest_theorem_d(m, p, n)
    if theorem_d is None:
        checks.append(
            Check(
                "join connectivity inequality",
                FAIL,
                {"reason": f"no d >= 1 satisfies the inequality at n={n}, m={m}, p={p}"},
            )
        )
    else:
        ok = join_connectivity_check(theorem_d, m, p, n)
        checks.append(
            Check(
                "join connectivity inequality",
                PASS if ok else FAIL,
                {"d": theorem_d, "lhs": join_lower_bound(m, p, n), "rhs": target_connectivity(theorem_d, p)},
            )
        )
    return checks
