"""Constructive instance generators for the four counting reductions.

Each generator turns a source object (bipartite graph or partitioned
2-DNF) into a query/instance pair whose match probability, scaled by
``2**s``, equals the source count.  Vertex names mirror the standard
symbols (``R``, ``X1``, ``Y2_3``, ``A1_2`` ...) so generated instances are
auditable by eye; generators are deterministic byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graphs import Edge, ProbGraph, QueryGraph, build_graph
from .oracle import BipartiteGraph, PP2DNF

HALF = Fraction(1, 2)


class GeneratorError(ValueError):
    pass


class EmptyGraph(GeneratorError):
    pass


class MalformedFormula(GeneratorError):
    pass


@dataclass(frozen=True)
class ReductionOutput:
    """Query/instance pair with the scaling exponent ``s`` such that
    ``brute_prob(query, instance) * 2**s`` equals the source count."""

    query: QueryGraph
    instance: ProbGraph
    scaling_exponent: int
    target_count_kind: str


def _chain(prefix: str, labels: list[str]) -> tuple[list[str], list[Edge]]:
    verts = [f"{prefix}{t}" for t in range(len(labels) + 1)]
    edges = [(verts[t], verts[t + 1], labels[t]) for t in range(len(labels))]
    return verts, edges


def gen_edge_cover_labeled(gamma: BipartiteGraph) -> ReductionOutput:
    """Edge-cover coding on a labeled one-way path.

    The instance concatenates, per bipartite edge (l, r), the segment
    ``L^l V R^r`` between C separators; only the V edges are uncertain
    (probability 1/2).  The query has one path component per vertex
    constraint: ``C L^i V`` for left vertex i, ``V R^i C`` for right
    vertex i.
    """
    if not gamma.edges:
        raise EmptyGraph("bipartite graph has no edges")
    alphabet = ("C", "L", "R", "V")
    labels: list[str] = ["C"]
    for (l, r) in gamma.edges:
        labels.extend(["L"] * l + ["V"] + ["R"] * r + ["C"])
    verts, edges = _chain("h", labels)
    probs = {e: (HALF if e[2] == "V" else Fraction(1)) for e in edges}
    instance = build_graph(verts, edges, probs, alphabet)

    qverts: list[str] = []
    qedges: list[Edge] = []
    for i in range(1, gamma.n_left + 1):
        vs, es = _chain(f"x{i}_", ["C"] + ["L"] * i + ["V"])
        qverts.extend(vs)
        qedges.extend(es)
    for i in range(1, gamma.n_right + 1):
        vs, es = _chain(f"y{i}_", ["V"] + ["R"] * i + ["C"])
        qverts.extend(vs)
        qedges.extend(es)
    query = build_graph(qverts, qedges, alphabet=alphabet)
    return ReductionOutput(query, instance, len(gamma.edges), "edge_covers")


#: Chain rewritings of each label for the unlabeled edge-cover coding:
#: '+' is a forward edge, '-' a backward edge along the fresh chain.
_COVER_REWRITE = {"L": "++-", "R": "++-", "C": "---", "V": "+++++-"}
#: Position of the uncertain edge within a rewritten uncertain block.
_COVER_HALF_POS = 0

_PP2DNF_REWRITE = {"S": "++-", "T": "+++"}
_PP2DNF_HALF_POS = 1


def _rewrite_unlabeled(
    graph: QueryGraph,
    rules: dict[str, str],
    probs: dict[Edge, Fraction] | None,
    half_pos: int,
):
    """Replace each labeled edge by a fresh chain of unlabeled edges.  For
    instances, probability 1/2 moves to position ``half_pos`` of blocks
    that were uncertain; every other edge gets probability 1."""
    verts: list[str] = list(graph.vertices)
    edges: list[Edge] = []
    out_probs: dict[Edge, Fraction] = {}
    for (u, v, lbl) in graph.edges:
        pattern = rules[lbl]
        chain = [u] + [f"{u}.{v}.{t}" for t in range(1, len(pattern))] + [v]
        verts.extend(chain[1:-1])
        for t, sign in enumerate(pattern):
            e = (chain[t], chain[t + 1], "_") if sign == "+" else (chain[t + 1], chain[t], "_")
            edges.append(e)
            if probs is not None:
                uncertain = probs[(u, v, lbl)] != 1 and t == half_pos
                out_probs[e] = HALF if uncertain else Fraction(1)
    if probs is None:
        return build_graph(verts, edges, alphabet=("_",))
    return build_graph(verts, edges, out_probs, alphabet=("_",))


def gen_edge_cover_unlabeled(gamma: BipartiteGraph) -> ReductionOutput:
    """Edge-cover coding on an unlabeled two-way path: label edges are
    rewritten into direction blocks (L/R into 3 edges, C into 3 reversed
    edges, V into 6 edges with an uncertain head)."""
    labeled = gen_edge_cover_labeled(gamma)
    instance = _rewrite_unlabeled(
        labeled.instance.graph, _COVER_REWRITE, labeled.instance.probs, _COVER_HALF_POS
    )
    query = _rewrite_unlabeled(labeled.query, _COVER_REWRITE, None, _COVER_HALF_POS)
    return ReductionOutput(query, instance, len(gamma.edges), "edge_covers")


def gen_pp2dnf_labeled(phi: PP2DNF) -> ReductionOutput:
    """Partitioned-2-DNF coding on a labeled polytree.

    Per-variable branches hang off a central vertex R; the first edge of
    each branch is the uncertain valuation edge.  T edges at clause-index
    depths mark which variables share a clause, and the query is the path
    ``T S^(m+3) T``: it matches exactly when two marked branches at
    matching depths are both switched on.
    """
    try:
        phi.validate()
    except ValueError as exc:
        raise MalformedFormula(str(exc)) from exc
    if not phi.clauses:
        raise MalformedFormula("formula has no clauses")
    m = len(phi.clauses)
    alphabet = ("S", "T")
    verts = ["R"]
    edges: list[Edge] = []
    probs: dict[Edge, Fraction] = {}

    def add(u: str, v: str, lbl: str, p: Fraction):
        edges.append((u, v, lbl))
        probs[(u, v, lbl)] = p

    for i in range(1, phi.n1 + 1):
        verts.append(f"X{i}")
        verts.extend(f"X{i}_{j}" for j in range(1, m + 1))
        add(f"X{i}", "R", "S", HALF)
        add(f"X{i}_{m}", f"X{i}", "S", Fraction(1))
        for j in range(1, m):
            add(f"X{i}_{j}", f"X{i}_{j + 1}", "S", Fraction(1))
    for i in range(1, phi.n2 + 1):
        verts.append(f"Y{i}")
        verts.extend(f"Y{i}_{j}" for j in range(1, m + 1))
        add("R", f"Y{i}", "S", HALF)
        add(f"Y{i}", f"Y{i}_1", "S", Fraction(1))
        for j in range(1, m):
            add(f"Y{i}_{j}", f"Y{i}_{j + 1}", "S", Fraction(1))
    for j, (x, y) in enumerate(phi.clauses, start=1):
        verts.append(f"A{x}_{j}")
        verts.append(f"B{y}_{j}")
        add(f"A{x}_{j}", f"X{x}_{j}", "T", Fraction(1))
        add(f"Y{y}_{j}", f"B{y}_{j}", "T", Fraction(1))

    instance = build_graph(verts, edges, probs, alphabet)
    qverts, qedges = _chain("q", ["T"] + ["S"] * (m + 3) + ["T"])
    query = build_graph(qverts, qedges, alphabet=alphabet)
    return ReductionOutput(query, instance, phi.n1 + phi.n2, "pp2dnf_sat")


def gen_pp2dnf_unlabeled(phi: PP2DNF) -> ReductionOutput:
    """Partitioned-2-DNF coding on an unlabeled polytree: S edges become
    direction blocks with the uncertain edge in the middle of valuation
    blocks, T edges become straight 3-edge runs."""
    labeled = gen_pp2dnf_labeled(phi)
    instance = _rewrite_unlabeled(
        labeled.instance.graph, _PP2DNF_REWRITE, labeled.instance.probs, _PP2DNF_HALF_POS
    )
    query = _rewrite_unlabeled(labeled.query, _PP2DNF_REWRITE, None, _PP2DNF_HALF_POS)
    return ReductionOutput(query, instance, phi.n1 + phi.n2, "pp2dnf_sat")


def parse_bipartite(text: str) -> BipartiteGraph:
    """Source format: a count line ``m``, then ``m`` lines ``e j l r``
    (edge index, left vertex, right vertex; all 1-indexed).  Vertex counts
    are inferred from the edges."""
    lines = _data_lines(text)
    if not lines:
        raise GeneratorError("empty bipartite description")
    m = int(lines[0])
    if len(lines) - 1 != m:
        raise GeneratorError(f"expected {m} edge lines, found {len(lines) - 1}")
    by_index: dict[int, tuple[int, int]] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4 or parts[0] != "e":
            raise GeneratorError(f"bad edge line: {ln!r}")
        j, l, r = int(parts[1]), int(parts[2]), int(parts[3])
        if j in by_index:
            raise GeneratorError(f"duplicate edge index {j}")
        by_index[j] = (l, r)
    if sorted(by_index) != list(range(1, m + 1)):
        raise GeneratorError("edge indices must be 1..m")
    edges = tuple(by_index[j] for j in range(1, m + 1))
    return BipartiteGraph(max(l for l, _ in edges), max(r for _, r in edges), edges)


def parse_pp2dnf(text: str) -> PP2DNF:
    """Source format: a header ``n1 n2`` then one ``x y`` line per clause."""
    lines = _data_lines(text)
    if not lines:
        raise GeneratorError("empty formula description")
    head = lines[0].split()
    if len(head) != 2:
        raise GeneratorError("header must be 'n1 n2'")
    n1, n2 = int(head[0]), int(head[1])
    clauses = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GeneratorError(f"bad clause line: {ln!r}")
        clauses.append((int(parts[0]), int(parts[1])))
    return PP2DNF(n1, n2, tuple(clauses))


def _data_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        ln = raw.split("#", 1)[0].strip()
        if ln:
            out.append(ln)
    return out
