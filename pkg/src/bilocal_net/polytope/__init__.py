from .lhv import (
    NONTRIVIAL,
    POSITIVITY,
    Inequality,
    MembershipResult,
    Scenario,
    enumerate_vertices,
    evaluate_inequalities,
    exact_scores,
    facet_enumeration,
    lp_membership,
    nontrivial_facets,
    relaxed_membership,
    scenario,
)
from .io import read_facets, write_facets

__all__ = [
    "NONTRIVIAL",
    "POSITIVITY",
    "Inequality",
    "MembershipResult",
    "Scenario",
    "enumerate_vertices",
    "evaluate_inequalities",
    "exact_scores",
    "facet_enumeration",
    "lp_membership",
    "nontrivial_facets",
    "read_facets",
    "relaxed_membership",
    "scenario",
    "write_facets",
]
