"""Shared fixtures: the worked-example graphs and reference helpers."""

from fractions import Fraction as F

import pytest

from phom.graphs import build_graph
from phom.oracle import BipartiteGraph, PP2DNF, hom_exists_bf, possible_worlds, world_graph


@pytest.fixture
def example_query():
    """The three-edge query ->R ->S <-S."""
    return build_graph(
        ["w", "x", "y", "z"],
        [("w", "x", "R"), ("x", "y", "S"), ("z", "y", "S")],
        alphabet=["R", "S"],
    )


@pytest.fixture
def example_instance():
    """Six-edge probabilistic instance: an R-cycle with a chord and an
    antiparallel R/S pair; exactly one edge is certain."""
    edges = [
        ("a", "b", "R"),
        ("b", "c", "R"),
        ("c", "d", "R"),
        ("d", "a", "R"),
        ("a", "c", "R"),
        ("c", "a", "S"),
    ]
    probs = {
        ("a", "b", "R"): F(1),
        ("b", "c", "R"): F(1, 10),
        ("c", "d", "R"): F(1, 10),
        ("d", "a", "R"): F(1, 20),
        ("a", "c", "R"): F(4, 5),
        ("c", "a", "S"): F(7, 10),
    }
    return build_graph("abcd", edges, probs, alphabet=["R", "S"])


@pytest.fixture
def labeled_1wp_example():
    """Five-vertex path with label word R S S T."""
    return build_graph(
        "abcde",
        [("a", "b", "R"), ("b", "c", "S"), ("c", "d", "S"), ("d", "e", "T")],
        alphabet=["R", "S", "T"],
    )


@pytest.fixture
def labeled_2wp_example():
    """Six-vertex two-way path with labels R S S T R."""
    return build_graph(
        ["b1", "b2", "b3", "b4", "b5", "b6"],
        [
            ("b1", "b2", "R"),
            ("b3", "b2", "S"),
            ("b4", "b3", "S"),
            ("b4", "b5", "T"),
            ("b6", "b5", "R"),
        ],
        alphabet=["R", "S", "T"],
    )


DWT_EDGES = [
    ("c1", "c2"), ("c1", "c3"), ("c2", "c4"), ("c2", "c5"), ("c3", "c6"),
    ("c3", "c7"), ("c5", "c8"), ("c5", "c9"), ("c9", "c11"), ("c6", "c10"),
    ("c10", "c12"), ("c10", "c13"), ("c10", "c14"),
]

PT_EDGES = [
    ("d2", "d4"), ("d5", "d2"), ("d1", "d2"), ("d3", "d1"), ("d3", "d6"),
    ("d3", "d7"), ("d8", "d5"), ("d5", "d9"), ("d9", "d11"), ("d6", "d10"),
    ("d12", "d10"), ("d13", "d10"), ("d10", "d14"),
]


@pytest.fixture
def dwt_example():
    """Fourteen-vertex downward tree of height 4."""
    return build_graph(
        {u for e in DWT_EDGES for u in e},
        [(u, v, "_") for (u, v) in DWT_EDGES],
        alphabet=["_"],
    )


@pytest.fixture
def pt_example():
    """Fourteen-vertex polytree that is neither a downward tree nor a
    two-way path."""
    return build_graph(
        {u for e in PT_EDGES for u in e},
        [(u, v, "_") for (u, v) in PT_EDGES],
        alphabet=["_"],
    )


@pytest.fixture
def cover_example():
    """Bipartite graph with parts {x1, x2}, {y1, y2, y3} and edges
    e1=(x1,y1), e2=(x1,y2), e3=(x1,y3), e4=(x2,y1)."""
    return BipartiteGraph(2, 3, ((1, 1), (1, 2), (1, 3), (2, 1)))


@pytest.fixture
def pp2dnf_example():
    """X1 Y2 or X1 Y1 or X2 Y2."""
    return PP2DNF(2, 2, ((1, 2), (1, 1), (2, 2)))


def literal_brute_prob(g, h):
    """The defining sum, world by world, with a per-world backtracking
    homomorphism test.  Reference for brute_prob at tiny sizes."""
    total = F(0)
    for w in possible_worlds(h):
        if w.probability and hom_exists_bf(g, world_graph(h, w.kept_edges)):
            total += w.probability
    return total


def flat_grouped_weighted_count(nvars, groups, kept, dropped):
    """Reference for the kernel: plain loop over all valuations."""
    total = 0
    for v in range(1 << nvars):
        if all(any(m & v == m for m in g) for g in groups):
            w = 1
            for i in range(nvars):
                w *= kept[i] if (v >> i) & 1 else dropped[i]
            total += w
    return total
