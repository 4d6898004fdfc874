"""Exact Pareto value sets for biobjective problems with M- and M-natural convex objectives."""

from .core import INF, BinaryWeights, Box, LexParetoValue, ParetoValue2, Transition
from .functions import (
    ObjectiveOracle,
    SeparableConvexSpec,
    add_linear,
    enumerate_dom,
    make_base_linear,
    make_family_linear,
    make_separable,
    make_table,
)
from .mbb import solve_mbb
from .mlb import CategoryPartition, GMatroidFamily, make_gmatroid, solve_mlb
from .mnatbb import solve_mnatbb
from .verifiers import certify, verify_base_axiom, verify_gmatroid, verify_m, verify_mnat

__all__ = [
    "INF", "BinaryWeights", "Box", "LexParetoValue", "ParetoValue2", "Transition",
    "ObjectiveOracle", "SeparableConvexSpec", "add_linear", "enumerate_dom",
    "make_base_linear", "make_family_linear", "make_separable", "make_table",
    "solve_mbb", "solve_mlb", "solve_mnatbb", "CategoryPartition", "GMatroidFamily",
    "make_gmatroid", "certify", "verify_base_axiom", "verify_gmatroid", "verify_m", "verify_mnat",
]
