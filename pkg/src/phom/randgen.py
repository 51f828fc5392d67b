"""Seeded random generators for in-class queries and instances.

These back the randomized oracle-equivalence checks: every generator is
driven by a caller-supplied ``random.Random`` so runs are reproducible,
and each generator guarantees membership in the class it is named after
(membership, not most-specific class).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .graphs import Edge, ProbGraph, QueryGraph, build_graph
from .oracle import BipartiteGraph, PP2DNF

LABELED_ALPHABET = ("R", "S", "T")
UNLABELED_ALPHABET = ("_",)


def alphabet_for(labeled: bool) -> tuple[str, ...]:
    return LABELED_ALPHABET if labeled else UNLABELED_ALPHABET


def rand_prob(rng: random.Random, max_denom: int = 6) -> Fraction:
    den = rng.randint(2, max_denom)
    num = rng.randint(1, den - 1)
    return Fraction(num, den)


def assign_probs(
    rng: random.Random,
    g: QueryGraph,
    max_uncertain: int,
    max_denom: int = 6,
    certain_share: float = 0.15,
) -> ProbGraph:
    """Attach probabilities: most edges uncertain (strictly between 0 and
    1) up to the given budget, the rest pinned to 1, with a rare 0."""
    edges = list(g.edges)
    rng.shuffle(edges)
    probs: dict[Edge, Fraction] = {}
    uncertain = 0
    for e in edges:
        if uncertain < max_uncertain and rng.random() > certain_share:
            probs[e] = rand_prob(rng, max_denom)
            uncertain += 1
        elif rng.random() < 0.08:
            probs[e] = Fraction(0)
        else:
            probs[e] = Fraction(1)
    return ProbGraph(g, probs)


def _label(rng: random.Random, alphabet) -> str:
    return rng.choice(alphabet)


def rand_1wp(rng: random.Random, n_edges: int, alphabet) -> QueryGraph:
    verts = [f"v{t}" for t in range(n_edges + 1)]
    edges = [(verts[t], verts[t + 1], _label(rng, alphabet)) for t in range(n_edges)]
    return build_graph(verts, edges, alphabet=alphabet)


def rand_2wp(rng: random.Random, n_edges: int, alphabet) -> QueryGraph:
    verts = [f"v{t}" for t in range(n_edges + 1)]
    edges = []
    for t in range(n_edges):
        if rng.random() < 0.5:
            edges.append((verts[t], verts[t + 1], _label(rng, alphabet)))
        else:
            edges.append((verts[t + 1], verts[t], _label(rng, alphabet)))
    return build_graph(verts, edges, alphabet=alphabet)


def rand_dwt(rng: random.Random, n_edges: int, alphabet) -> QueryGraph:
    verts = [f"v{t}" for t in range(n_edges + 1)]
    edges = [
        (verts[rng.randint(0, t)], verts[t + 1], _label(rng, alphabet))
        for t in range(n_edges)
    ]
    return build_graph(verts, edges, alphabet=alphabet)


def rand_pt(rng: random.Random, n_edges: int, alphabet) -> QueryGraph:
    verts = [f"v{t}" for t in range(n_edges + 1)]
    edges = []
    for t in range(n_edges):
        anchor = verts[rng.randint(0, t)]
        if rng.random() < 0.5:
            edges.append((anchor, verts[t + 1], _label(rng, alphabet)))
        else:
            edges.append((verts[t + 1], anchor, _label(rng, alphabet)))
    return build_graph(verts, edges, alphabet=alphabet)


def rand_connected(
    rng: random.Random, n_vertices: int, extra_edges: int, alphabet
) -> QueryGraph:
    """Random connected graph: random underlying tree plus extra directed
    edges (possibly creating cycles or antiparallel pairs)."""
    verts = [f"v{t}" for t in range(n_vertices)]
    pairs: set[tuple[str, str]] = set()
    edges: list[Edge] = []

    def add(u: str, v: str):
        if (u, v) not in pairs:
            pairs.add((u, v))
            edges.append((u, v, _label(rng, alphabet)))

    for t in range(1, n_vertices):
        anchor = verts[rng.randint(0, t - 1)]
        if rng.random() < 0.5:
            add(anchor, verts[t])
        else:
            add(verts[t], anchor)
    for _ in range(extra_edges):
        u, v = rng.choice(verts), rng.choice(verts)
        add(u, v)
    return build_graph(verts, edges, alphabet=alphabet)


def rand_any(rng: random.Random, n_vertices: int, n_edges: int, alphabet) -> QueryGraph:
    verts = [f"v{t}" for t in range(n_vertices)]
    pairs: set[tuple[str, str]] = set()
    edges: list[Edge] = []
    for _ in range(n_edges):
        u, v = rng.choice(verts), rng.choice(verts)
        if (u, v) not in pairs:
            pairs.add((u, v))
            edges.append((u, v, _label(rng, alphabet)))
    return build_graph(verts, edges, alphabet=alphabet)


def rand_graded_connected(rng: random.Random, n_vertices: int, alphabet) -> QueryGraph:
    """Connected DAG admitting a level mapping: a random spanning tree
    whose edges cross adjacent levels, plus extra level-respecting edges."""
    verts = [f"v{t}" for t in range(n_vertices)]
    levels = {verts[0]: 0}
    pairs: set[tuple[str, str]] = set()
    edges: list[Edge] = []

    def add(u: str, v: str):
        if u != v and (u, v) not in pairs:
            pairs.add((u, v))
            edges.append((u, v, _label(rng, alphabet)))

    for t in range(1, n_vertices):
        anchor = verts[rng.randint(0, t - 1)]
        if rng.random() < 0.5:
            levels[verts[t]] = levels[anchor] + 1
            add(verts[t], anchor)
        else:
            levels[verts[t]] = levels[anchor] - 1
            add(anchor, verts[t])
    for _ in range(rng.randint(0, n_vertices)):
        u, v = rng.choice(verts), rng.choice(verts)
        if levels[u] == levels[v] + 1:
            add(u, v)
    return build_graph(verts, edges, alphabet=alphabet)


def disjoint_union(parts: list[QueryGraph], alphabet) -> QueryGraph:
    verts: list[str] = []
    edges: list[Edge] = []
    for k, p in enumerate(parts):
        verts.extend(f"c{k}_{v}" for v in p.vertices)
        edges.extend((f"c{k}_{u}", f"c{k}_{v}", lbl) for (u, v, lbl) in p.edges)
    return build_graph(verts, edges, alphabet=alphabet)


_CONNECTED_GENS = {
    "1WP": lambda rng, size, al: rand_1wp(rng, rng.randint(0, max(1, size)), al),
    "2WP": lambda rng, size, al: rand_2wp(rng, rng.randint(0, max(1, size)), al),
    "DWT": lambda rng, size, al: rand_dwt(rng, rng.randint(0, max(1, size)), al),
    "PT": lambda rng, size, al: rand_pt(rng, rng.randint(0, max(1, size)), al),
}


def random_graph_in_class(
    rng: random.Random, cls: str, labeled: bool, size: int
) -> QueryGraph:
    """Random member of one lattice class; `size` bounds the edge count of
    connected parts."""
    al = alphabet_for(labeled)
    if cls in _CONNECTED_GENS:
        return _CONNECTED_GENS[cls](rng, size, al)
    if cls == "Connected":
        n = rng.randint(1, max(2, size))
        return rand_connected(rng, n, rng.randint(0, 2), al)
    if cls.startswith("U"):
        base = cls[1:]
        k = rng.randint(1, 3)
        per = max(1, size // k)
        parts = [_CONNECTED_GENS[base](rng, per, al) for _ in range(k)]
        return disjoint_union(parts, al)
    if cls == "All":
        n = rng.randint(1, max(2, size))
        return rand_any(rng, n, rng.randint(0, size + 2), al)
    raise ValueError(f"unknown class {cls}")


def random_instance_in_class(
    rng: random.Random,
    cls: str,
    labeled: bool,
    max_uncertain: int,
    size: Optional[int] = None,
) -> ProbGraph:
    size = size if size is not None else max_uncertain
    g = random_graph_in_class(rng, cls, labeled, size)
    return assign_probs(rng, g, max_uncertain)


def rand_bipartite(rng: random.Random, max_edges: int = 10) -> BipartiteGraph:
    m = rng.randint(1, max_edges)
    n1 = rng.randint(1, 4)
    n2 = rng.randint(1, 4)
    edges = []
    seen = set()
    for _ in range(m):
        e = (rng.randint(1, n1), rng.randint(1, n2))
        if e not in seen:
            seen.add(e)
            edges.append(e)
    n1 = max(l for (l, _) in edges)
    n2 = max(r for (_, r) in edges)
    return BipartiteGraph(n1, n2, tuple(edges))


def rand_pp2dnf(rng: random.Random, max_vars: int = 10) -> PP2DNF:
    n1 = rng.randint(1, max(1, max_vars // 2))
    n2 = rng.randint(1, max(1, max_vars - n1))
    clauses = {(x, 1 + rng.randrange(n2)) for x in range(1, n1 + 1)}
    clauses |= {(1 + rng.randrange(n1), y) for y in range(1, n2 + 1)}
    for _ in range(rng.randint(0, 4)):
        clauses.add((1 + rng.randrange(n1), 1 + rng.randrange(n2)))
    return PP2DNF(n1, n2, tuple(sorted(clauses)))
