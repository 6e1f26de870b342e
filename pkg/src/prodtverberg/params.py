"""Parameter calculus for the product Tverberg bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional


class PrimePower(NamedTuple):
    q: int
    r: int


def _check_p(p: int) -> None:
    if p < 2:
        raise ValueError(f"p must be at least 2, got {p}")


@dataclass(frozen=True)
class Params:
    d: int
    m: int
    p: int
    n: int

    def __post_init__(self):
        if self.d < 1 or self.m < 1 or self.n < 1:
            raise ValueError(f"d, m, n must be positive: {self}")
        _check_p(self.p)

    @classmethod
    def at_bound(cls, d: int, m: int, p: int) -> "Params":
        return cls(d, m, p, required_n(d, m, p))

    @property
    def in_hypothesis(self) -> bool:
        """True when p is a prime power and n reaches the bound."""
        return is_prime_power(self.p) is not None and self.n >= required_n(self.d, self.m, self.p)

    def as_dict(self) -> dict:
        return {"d": self.d, "m": self.m, "n": self.n, "p": self.p}


def required_n(d: int, m: int, p: int) -> int:
    """Smallest side length n = ceil((d/m + 1)(p - 1) + 1/m)."""
    if d < 1 or m < 1:
        raise ValueError("d and m must be positive")
    _check_p(p)
    return math.ceil((Fraction(d, m) + 1) * (p - 1) + Fraction(1, m))


def is_prime_power(p: int) -> Optional[PrimePower]:
    """Return ``(q, r)`` with ``p == q**r`` and q prime, or None."""
    _check_p(p)
    q = 2
    while q * q <= p:
        if p % q == 0:
            r = 0
            while p % q == 0:
                p //= q
                r += 1
            return PrimePower(q, r) if p == 1 else None
        q += 1
    return PrimePower(p, 1)


def target_connectivity(d: int, p: int) -> int:
    """Dimension of the test sphere, (d+1)(p-1) - 1."""
    return (d + 1) * (p - 1) - 1


def join_lower_bound(m: int, p: int, n: int) -> int:
    """Connectivity of M * L_2 * ... * L_m implied by the factor bounds."""
    return n - 2 + (m - 1) * (n - p + 1)


def join_connectivity_check(d: int, m: int, p: int, n: int) -> bool:
    return join_lower_bound(m, p, n) >= target_connectivity(d, p)


def hypothesis_note(p: int) -> Optional[str]:
    if is_prime_power(p) is None:
        return "outside theorem hypothesis: p is not a prime power"
    return None
