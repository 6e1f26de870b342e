"""Affine product Tverberg partitions and the finite complexes behind their proof."""

from .geometry import HullWitness, Line, extract_transversal_line, hulls_common_point, line_meets_convex, lp_feasible
from .grid import (
    PointGrid,
    TverbergWitness,
    colorful_helly_extract,
    enumerate_partitions,
    find_tverberg_partition,
    montejano_transversal,
    random_grid,
)
from .params import Params, is_prime_power, join_connectivity_check, required_n, target_connectivity

__all__ = [
    "HullWitness",
    "Line",
    "Params",
    "PointGrid",
    "TverbergWitness",
    "colorful_helly_extract",
    "enumerate_partitions",
    "extract_transversal_line",
    "find_tverberg_partition",
    "hulls_common_point",
    "is_prime_power",
    "join_connectivity_check",
    "line_meets_convex",
    "lp_feasible",
    "montejano_transversal",
    "random_grid",
    "required_n",
    "target_connectivity",
]
