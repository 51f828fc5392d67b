"""Directed edge-labeled graphs, probabilistic graphs, and class recognition.

Vertices are opaque strings; an edge is a ``(source, target, label)`` triple
and at most one edge may exist per ordered vertex pair.  Antiparallel pairs
``(a, b)`` / ``(b, a)`` are two distinct edges and both may exist.  Edge
probabilities are exact rationals (``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

UNLABELED = "_"

#: Canonical identifiers of the recognized graph classes.  ``U*`` classes are
#: the "disjoint union of" variants (every connected component in the base
#: class); ``All`` contains every graph.
CLASS_IDS = (
    "1WP",
    "2WP",
    "DWT",
    "PT",
    "Connected",
    "U1WP",
    "U2WP",
    "UDWT",
    "UPT",
    "All",
)

#: Direct inclusions ``small -> larger`` between classes.
_CLASS_SUCCESSORS = {
    "1WP": ("2WP", "DWT", "U1WP"),
    "2WP": ("PT", "U2WP"),
    "DWT": ("PT", "UDWT"),
    "PT": ("Connected", "UPT"),
    "Connected": ("All",),
    "U1WP": ("U2WP", "UDWT"),
    "U2WP": ("UPT",),
    "UDWT": ("UPT",),
    "UPT": ("All",),
    "All": (),
}


def class_supersets(cls: str) -> frozenset[str]:
    """All classes that contain ``cls``, including ``cls`` itself."""
    seen = {cls}
    stack = [cls]
    while stack:
        for nxt in _CLASS_SUCCESSORS[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)


_SUPERSETS = {c: class_supersets(c) for c in CLASS_IDS}


def class_contains(larger: str, smaller: str) -> bool:
    """True when every graph of class ``smaller`` is in class ``larger``."""
    return larger in _SUPERSETS[smaller]


class GraphError(ValueError):
    """Base class for graph construction and validation errors."""


class DuplicateEdge(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class UnknownLabel(GraphError):
    pass


class ProbabilityOutOfRange(GraphError):
    pass


class MissingProbability(GraphError):
    pass


Edge = tuple[str, str, str]


def edge_id(e: Edge) -> str:
    """Stable textual identifier of an edge, used as a lineage variable."""
    return f"{e[0]}->{e[1]}"


class QueryGraph:
    """Immutable directed graph with labeled edges.

    ``alphabet`` is the declared finite label set; every edge label must
    belong to it.  The single reserved label ``_`` marks the unlabeled
    setting.
    """

    __slots__ = ("vertices", "edges", "alphabet", "_out", "_in")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[Edge],
        alphabet: Optional[Iterable[str]] = None,
    ):
        self.vertices: tuple[str, ...] = tuple(sorted(set(vertices)))
        if not self.vertices:
            raise GraphError("vertex set must be non-empty")
        vset = set(self.vertices)
        seen_pairs: set[tuple[str, str]] = set()
        elist = []
        for (u, v, lbl) in edges:
            if u not in vset or v not in vset:
                raise UnknownVertex(f"edge ({u}, {v}) uses an undeclared vertex")
            if (u, v) in seen_pairs:
                raise DuplicateEdge(f"two edges on the ordered pair ({u}, {v})")
            seen_pairs.add((u, v))
            elist.append((u, v, lbl))
        self.edges: tuple[Edge, ...] = tuple(sorted(elist))
        used = {lbl for (_, _, lbl) in self.edges}
        if alphabet is None:
            self.alphabet = frozenset(used) if used else frozenset({UNLABELED})
        else:
            self.alphabet = frozenset(alphabet)
            if not self.alphabet:
                raise GraphError("alphabet must be non-empty")
            extra = used - self.alphabet
            if extra:
                raise UnknownLabel(f"labels {sorted(extra)} not in declared alphabet")
        out: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        inc: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for (u, v, lbl) in self.edges:
            out[u].append((v, lbl))
            inc[v].append((u, lbl))
        self._out = out
        self._in = inc

    @property
    def unlabeled(self) -> bool:
        return len(self.alphabet) == 1

    def out_edges(self, v: str) -> list[tuple[str, str]]:
        return self._out[v]

    def in_edges(self, v: str) -> list[tuple[str, str]]:
        return self._in[v]

    def has_edge(self, u: str, v: str, label: Optional[str] = None) -> bool:
        for (w, lbl) in self._out.get(u, ()):
            if w == v and (label is None or lbl == label):
                return True
        return False

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QueryGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.alphabet == other.alphabet
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges, self.alphabet))

    def __repr__(self) -> str:
        return f"QueryGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


class ProbGraph:
    """A graph together with an exact edge-probability map."""

    __slots__ = ("graph", "probs")

    def __init__(self, graph: QueryGraph, probs: Mapping[Edge, Fraction]):
        missing = set(graph.edges) - set(probs)
        if missing:
            raise MissingProbability(f"no probability for edges {sorted(missing)}")
        extra = set(probs) - set(graph.edges)
        if extra:
            raise UnknownVertex(f"probability given for absent edges {sorted(extra)}")
        norm = {}
        for e, p in probs.items():
            p = Fraction(p)
            if not 0 <= p <= 1:
                raise ProbabilityOutOfRange(f"edge {e} has probability {p}")
            norm[e] = p
        self.graph = graph
        self.probs = norm

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    @property
    def alphabet(self) -> frozenset[str]:
        return self.graph.alphabet

    def uncertain_edges(self) -> list[Edge]:
        return [e for e in self.graph.edges if 0 < self.probs[e] < 1]

    def __repr__(self) -> str:
        return f"ProbGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


def build_graph(
    vertices: Iterable[str],
    edges: Iterable[Edge],
    probs: Optional[Mapping[Edge, Fraction]] = None,
    alphabet: Optional[Iterable[str]] = None,
):
    """Validate and build a :class:`QueryGraph`, or a :class:`ProbGraph` when
    ``probs`` is given.  Self-loops are allowed here; class recognition is
    what excludes them from the restricted classes."""
    g = QueryGraph(vertices, edges, alphabet)
    if probs is None:
        return g
    return ProbGraph(g, probs)


def connected_components(g) -> list[frozenset[str]]:
    """Weakly connected components (edge direction and labels ignored),
    as a deterministically ordered partition of the vertex set."""
    graph = g.graph if isinstance(g, ProbGraph) else g
    seen: set[str] = set()
    comps = []
    for start in graph.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for (w, _) in graph.out_edges(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
            for (w, _) in graph.in_edges(v):
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def component_subgraph(g, vertices: frozenset[str]):
    """Restriction of ``g`` to one set of component vertices."""
    graph = g.graph if isinstance(g, ProbGraph) else g
    edges = [e for e in graph.edges if e[0] in vertices]
    sub = QueryGraph(vertices, edges, graph.alphabet)
    if isinstance(g, ProbGraph):
        return ProbGraph(sub, {e: g.probs[e] for e in edges})
    return sub


def _undirected_degree(graph: QueryGraph, v: str) -> int:
    return len(graph.out_edges(v)) + len(graph.in_edges(v))


def _has_self_loop(graph: QueryGraph) -> bool:
    return any(u == v for (u, v, _) in graph.edges)


def _has_antiparallel_pair(graph: QueryGraph) -> bool:
    pairs = {(u, v) for (u, v, _) in graph.edges}
    return any((v, u) in pairs for (u, v) in pairs if u != v)


def _is_connected(graph: QueryGraph) -> bool:
    return len(connected_components(graph)) == 1


def _is_1wp(graph: QueryGraph) -> bool:
    n, m = len(graph.vertices), len(graph.edges)
    if m != n - 1:
        return False
    if _has_self_loop(graph):
        return False
    if any(len(graph.out_edges(v)) > 1 or len(graph.in_edges(v)) > 1 for v in graph.vertices):
        return False
    return _is_connected(graph)


def _is_2wp(graph: QueryGraph) -> bool:
    n, m = len(graph.vertices), len(graph.edges)
    if m != n - 1:
        return False
    if _has_self_loop(graph) or _has_antiparallel_pair(graph):
        return False
    if any(_undirected_degree(graph, v) > 2 for v in graph.vertices):
        return False
    return _is_connected(graph)


def _is_dwt(graph: QueryGraph) -> bool:
    n, m = len(graph.vertices), len(graph.edges)
    if m != n - 1:
        return False
    if _has_self_loop(graph):
        return False
    if any(len(graph.in_edges(v)) > 1 for v in graph.vertices):
        return False
    return _is_connected(graph)


def _is_pt(graph: QueryGraph) -> bool:
    # Underlying undirected graph must be a simple tree: a self-loop or an
    # antiparallel pair makes it a multigraph with a cycle.
    n, m = len(graph.vertices), len(graph.edges)
    if m != n - 1:
        return False
    if _has_self_loop(graph) or _has_antiparallel_pair(graph):
        return False
    return _is_connected(graph)


_CONNECTED_PREDICATES = {
    "1WP": _is_1wp,
    "2WP": _is_2wp,
    "DWT": _is_dwt,
    "PT": _is_pt,
}


@dataclass(frozen=True)
class ClassReport:
    """Recognized classes and a deterministic minimal one.

    ``minimal`` lists every minimal recognized class: a graph can have two
    (a mixed-direction star path is both a two-way path and a downward
    tree without being a one-way path); ``most_specific`` is the first of
    them in the canonical class order.
    """

    classes: frozenset[str]
    most_specific: str
    minimal: tuple[str, ...]

    def __contains__(self, cls: str) -> bool:
        return cls in self.classes


def recognize(g) -> ClassReport:
    """Compute the set of recognized classes containing the graph and the
    most specific one (minimal under class inclusion)."""
    graph = g.graph if isinstance(g, ProbGraph) else g
    comps = connected_components(graph)
    subs = [component_subgraph(graph, c) for c in comps]
    classes = {"All"}
    for base, pred in _CONNECTED_PREDICATES.items():
        if all(pred(s) for s in subs):
            classes.add("U" + base)
            if len(subs) == 1:
                classes.add(base)
    if len(subs) == 1:
        classes.add("Connected")
    # Close upward under inclusion (U-classes of a connected member, etc.).
    closed: set[str] = set()
    for c in classes:
        closed |= _SUPERSETS[c]
    minimal = [c for c in closed if all(o == c or c not in _SUPERSETS[o] for o in closed)]
    minimal.sort(key=CLASS_IDS.index)
    return ClassReport(frozenset(closed), minimal[0], tuple(minimal))


@dataclass(frozen=True)
class LevelMapping:
    """Assignment of integer levels decreasing by one along every edge,
    shifted to minimum 0 within each connected component."""

    mu: Mapping[str, int]
    difference_of_levels: int


def level_mapping(g) -> Optional[LevelMapping]:
    """Level mapping of the graph, or ``None`` if no mapping exists.

    A mapping exists iff the graph has no directed cycle and no two directed
    paths of different lengths between the same vertex pair.  Assignment is
    by breadth-first traversal of the underlying undirected graph; any
    conflict witnesses one of the two obstructions.
    """
    graph = g.graph if isinstance(g, ProbGraph) else g
    mu: dict[str, int] = {}
    diff = 0
    for comp in connected_components(graph):
        start = min(comp)
        local = {start: 0}
        queue = [start]
        while queue:
            v = queue.pop(0)
            for (w, _) in graph.out_edges(v):
                lvl = local[v] - 1
                if w in local:
                    if local[w] != lvl:
                        return None
                else:
                    local[w] = lvl
                    queue.append(w)
            for (w, _) in graph.in_edges(v):
                lvl = local[v] + 1
                if w in local:
                    if local[w] != lvl:
                        return None
                else:
                    local[w] = lvl
                    queue.append(w)
        lo = min(local.values())
        for v, lvl in local.items():
            mu[v] = lvl - lo
        diff = max(diff, max(local.values()) - lo)
    return LevelMapping(mu, diff)
