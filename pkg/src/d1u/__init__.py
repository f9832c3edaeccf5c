"""Differentially 1-uniform functions on cyclic groups and the weighted
2-designs they induce."""

from .constructions import ConstructionPlan, build, plan
from .design import BasisSet, WeightedDesign, character_bases, solve_weights
from .diffcalc import D1uVerdict, GroupFunction, differential, is_d1u, is_d1u_bruteforce
from .groups import AbelianGroup, enumerate_abelian_groups

__all__ = [
    "AbelianGroup",
    "BasisSet",
    "ConstructionPlan",
    "D1uVerdict",
    "GroupFunction",
    "WeightedDesign",
    "build",
    "character_bases",
    "differential",
    "enumerate_abelian_groups",
    "is_d1u",
    "is_d1u_bruteforce",
    "plan",
    "solve_weights",
]
