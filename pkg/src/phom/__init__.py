"""Exact solver for the probabilistic graph-homomorphism problem.

Given a query graph and an instance graph whose edges are kept
independently with rational probabilities, compute the exact probability
that the query has a homomorphism into the surviving subgraph.  The
package provides the polynomial-time algorithms for the tractable class
combinations, a class-based complexity dispatch, instance generators for
the counting reductions, and brute-force oracles that verify everything
at small scale.
"""

from ._backend import BACKEND_NAME
from .graphs import (
    CLASS_IDS,
    ClassReport,
    LevelMapping,
    ProbGraph,
    QueryGraph,
    build_graph,
    connected_components,
    level_mapping,
    recognize,
)
from .oracle import (
    BipartiteGraph,
    PP2DNF,
    brute_prob,
    count_edge_covers,
    count_pp2dnf,
    dnf_prob_bf,
    hom_exists_bf,
)
from .solve import ProblemInstance, SolveResult, solve

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "CLASS_IDS",
    "BipartiteGraph",
    "ClassReport",
    "LevelMapping",
    "PP2DNF",
    "ProbGraph",
    "ProblemInstance",
    "QueryGraph",
    "SolveResult",
    "brute_prob",
    "build_graph",
    "connected_components",
    "count_edge_covers",
    "count_pp2dnf",
    "dnf_prob_bf",
    "hom_exists_bf",
    "level_mapping",
    "recognize",
    "solve",
]
