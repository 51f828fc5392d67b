"""Polynomial-time algorithms for the tractable class combinations.

Four independent pipelines, all returning exact rationals:

* arbitrary connected queries on two-way-path instances, via subpath
  homomorphism tests (arc consistency over the path order) and a
  run-length dynamic program over the resulting interval clauses;
* labeled one-way-path queries on downward-tree instances, via a
  failure-link pattern automaton walked down the tree;
* arbitrary unlabeled queries on forests of downward trees, via level
  mappings and a downward run-length program;
* unlabeled path queries on polytrees, via the binarized tree automaton
  (distribution DP or compiled d-DNNF; both routes are exposed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .circuits import circuit_prob
from .graphs import (
    Edge,
    ProbGraph,
    QueryGraph,
    component_subgraph,
    connected_components,
    edge_id,
    level_mapping,
    recognize,
)
from .lineage import PositiveDNF
from .treeauto import (
    ClassMismatch,
    automaton_state_distribution,
    binarize_polytree,
    build_path_automaton,
    compile_automaton_circuit,
    edge_var_name,
)


class NotA2WP(ClassMismatch):
    pass


# ---------------------------------------------------------------------------
# two-way paths: ordering, homomorphism test, interval lineage
# ---------------------------------------------------------------------------


def two_way_path_order(c: QueryGraph) -> list[str]:
    """Vertices of a two-way path in path order (deterministic endpoint)."""
    if "2WP" not in recognize(c).classes:
        raise NotA2WP("graph is not a two-way path")
    if len(c.vertices) == 1:
        return [c.vertices[0]]
    nbrs: dict[str, list[str]] = {v: [] for v in c.vertices}
    for (u, v, _) in c.edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    ends = sorted(v for v in c.vertices if len(nbrs[v]) == 1)
    order = [ends[0]]
    prev = None
    while len(order) < len(c.vertices):
        nxt = [w for w in nbrs[order[-1]] if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def hom_to_2wp_witness(g: QueryGraph, c: QueryGraph) -> Optional[dict[str, str]]:
    """Witness homomorphism from a connected query into a two-way path, or
    ``None``.

    Arc consistency over candidate positions is decision-complete here:
    the path order makes the binary minimum a polymorphism of every edge
    relation, so non-empty domains at fixpoint admit the per-vertex
    minima as a solution.  The witness is still re-verified before being
    returned.
    """
    if len(connected_components(g)) != 1:
        raise ClassMismatch("query must be connected")
    order = two_way_path_order(c)
    pos = {v: t for t, v in enumerate(order)}
    n = len(order)
    # successor relation per (label, direction): allowed position pairs
    allowed: dict[tuple[str, str], set[tuple[int, int]]] = {}
    for (u, v, lbl) in c.edges:
        allowed.setdefault(("f", lbl), set()).add((pos[u], pos[v]))

    domains: dict[str, set[int]] = {u: set(range(n)) for u in g.vertices}
    arcs = []
    for (u, v, lbl) in g.edges:
        arcs.append((u, v, lbl, True))
        arcs.append((v, u, lbl, False))

    queue = list(arcs)
    while queue:
        (x, y, lbl, forward) = queue.pop()
        rel = allowed.get(("f", lbl), set())
        dx, dy = domains[x], domains[y]
        if forward:
            keep = {a for a in dx if any((a, b) in rel for b in dy)}
        else:
            keep = {a for a in dx if any((b, a) in rel for b in dy)}
        if keep != dx:
            if not keep:
                return None
            domains[x] = keep
            queue.extend(a for a in arcs if a[1] == x)

    witness = {u: order[min(domains[u])] for u in g.vertices}
    for (u, v, lbl) in g.edges:
        if not c.has_edge(witness[u], witness[v], lbl):
            raise AssertionError("arc-consistent minima failed verification")
    return witness


def hom_to_2wp(g: QueryGraph, c: QueryGraph) -> bool:
    """True iff the connected query has a homomorphism into the path."""
    return hom_to_2wp_witness(g, c) is not None


@dataclass(frozen=True)
class IntervalClauseFamily:
    """Minimal satisfying subpaths as intervals over edge positions 1..n.

    Minimized families are pairwise incomparable: sorted by left endpoint,
    right endpoints strictly increase.
    """

    path_edges: int
    intervals: tuple[tuple[int, int], ...]

    def to_dnf(self, h: ProbGraph, order: list[str]) -> PositiveDNF:
        path_edges = _path_edges_in_order(h, order)
        clauses = [
            frozenset(edge_id(path_edges[t - 1]) for t in range(l, r + 1))
            for (l, r) in self.intervals
        ]
        return PositiveDNF.make(clauses, [edge_id(e) for e in h.edges])


def minimize_intervals(intervals) -> tuple[tuple[int, int], ...]:
    """Drop intervals containing another interval; the union event is
    unchanged because the satisfying subpaths are upward closed."""
    items = sorted(set(intervals), key=lambda iv: (iv[1] - iv[0], iv[0]))
    kept: list[tuple[int, int]] = []
    for (l, r) in items:
        if not any(l <= l2 and r2 <= r for (l2, r2) in kept):
            kept.append((l, r))
    return tuple(sorted(kept))


def _path_edges_in_order(h: ProbGraph, order: list[str]) -> list[Edge]:
    out = []
    for a, b in zip(order, order[1:]):
        match = [e for e in h.edges if {e[0], e[1]} == {a, b}]
        out.append(match[0])
    return out


def _subpath(c: QueryGraph, order: list[str], i: int, j: int) -> QueryGraph:
    verts = set(order[i : j + 1])
    edges = [e for e in c.edges if e[0] in verts and e[1] in verts]
    return QueryGraph(verts, edges, c.alphabet)


def interval_family(g: QueryGraph, h: ProbGraph) -> IntervalClauseFamily:
    """Minimal intervals of consecutive instance edges whose subpath admits
    the query.  Uses the monotonicity of subpath satisfaction for a
    two-pointer scan."""
    order = two_way_path_order(h.graph)
    n = len(order) - 1
    if not g.edges:
        raise ValueError("edgeless queries are handled by the caller")
    found: list[tuple[int, int]] = []
    j = 1
    for i in range(len(order)):
        if j < i + 1:
            j = i + 1
        while j <= n and not hom_to_2wp(g, _subpath(h.graph, order, i, j)):
            j += 1
        if j > n:
            break
        found.append((i + 1, j))
    return IntervalClauseFamily(n, minimize_intervals(found))


def _interval_union_prob(
    family: IntervalClauseFamily, probs: list[Fraction]
) -> Fraction:
    """Probability that some interval of consecutive edges is fully
    present, by a left-to-right run-length dynamic program."""
    if not family.intervals:
        return Fraction(0)
    cap = max(r - l + 1 for (l, r) in family.intervals)
    need = {r: r - l + 1 for (l, r) in family.intervals}
    state: dict[int, Fraction] = {0: Fraction(1)}
    sat = Fraction(0)
    for t in range(1, family.path_edges + 1):
        p = probs[t - 1]
        new: dict[int, Fraction] = {}
        absent = Fraction(0)
        for run, mass in state.items():
            absent += (1 - p) * mass
            run2 = min(run + 1, cap)
            if t in need and run2 >= need[t]:
                sat += p * mass
            else:
                new[run2] = new.get(run2, Fraction(0)) + p * mass
        new[0] = new.get(0, Fraction(0)) + absent
        state = new
    return sat


def prob_l_connected_2wp(g: QueryGraph, h: ProbGraph) -> Fraction:
    """Exact match probability for a connected query on a two-way path."""
    if len(connected_components(g)) != 1:
        raise ClassMismatch("query must be connected")
    order = two_way_path_order(h.graph)
    if not g.edges:
        return Fraction(1)
    family = interval_family(g, h)
    path_edges = _path_edges_in_order(h, order)
    return _interval_union_prob(family, [h.probs[e] for e in path_edges])


def lineage_l_connected_2wp(g: QueryGraph, h: ProbGraph) -> PositiveDNF:
    """Positive-DNF lineage of a connected query on a two-way path."""
    order = two_way_path_order(h.graph)
    if not g.edges:
        raise ValueError("edgeless query lineage is the constant true")
    return interval_family(g, h).to_dnf(h, order)


# ---------------------------------------------------------------------------
# labeled one-way paths on downward trees
# ---------------------------------------------------------------------------


def query_path_labels(g: QueryGraph) -> list[str]:
    """Label word R1..R(m-1) of a one-way path query."""
    if "1WP" not in recognize(g).classes:
        raise ClassMismatch("query is not a one-way path")
    start = [v for v in g.vertices if not g.in_edges(v)]
    labels = []
    v = start[0]
    while g.out_edges(v):
        (w, lbl) = g.out_edges(v)[0]
        labels.append(lbl)
        v = w
    return labels


def _dwt_root_children(h: ProbGraph):
    g = h.graph
    roots = [v for v in g.vertices if not g.in_edges(v)]
    if "DWT" not in recognize(h).classes:
        raise ClassMismatch("instance is not a downward tree")
    children = {v: [(w, lbl) for (w, lbl) in g.out_edges(v)] for v in g.vertices}
    return roots[0], children


def _kmp_transitions(pattern: list[str], alphabet) -> list[dict[str, int]]:
    """Transition table of the pattern-matching automaton: state s is the
    longest matched prefix length; reaching len(pattern) is a full match."""
    L = len(pattern)
    fail = [0] * (L + 1)
    k = 0
    for s in range(1, L):
        while k and pattern[s] != pattern[k]:
            k = fail[k]
        if pattern[s] == pattern[k]:
            k += 1
        fail[s + 1] = k
    table: list[dict[str, int]] = []
    for s in range(L):
        row = {}
        for ch in alphabet:
            k = s
            while True:
                if pattern[k] == ch:
                    row[ch] = k + 1
                    break
                if k == 0:
                    row[ch] = 0
                    break
                k = fail[k]
        table.append(row)
    return table


def prob_l_1wp_dwt(g: QueryGraph, h: ProbGraph) -> Fraction:
    """Exact match probability of a labeled path query on a downward tree.

    The complement (no match anywhere) factors over subtrees once the
    matching-automaton state at the current node is fixed: an absent edge
    resets the state, a present edge advances it by the failure-link
    table.
    """
    pattern = query_path_labels(g)
    if not pattern:
        return Fraction(1)
    root, children = _dwt_root_children(h)
    L = len(pattern)
    trans = _kmp_transitions(pattern, sorted(h.alphabet | set(pattern)))

    order = [root]
    for v in order:
        order.extend(w for (w, _) in children[v])
    none_prob: dict[str, list[Fraction]] = {}
    for v in reversed(order):
        vec = []
        for s in range(L):
            f = Fraction(1)
            for (w, lbl) in children[v]:
                p = h.probs[(v, w, lbl)]
                s2 = trans[s][lbl]
                present = Fraction(0) if s2 == L else none_prob[w][s2]
                f *= p * present + (1 - p) * none_prob[w][0]
            vec.append(f)
        none_prob[v] = vec
    return 1 - none_prob[root][0]


@dataclass(frozen=True)
class DescendingPathFamily:
    """Nodes of a downward tree whose upward label word matches the query
    word; each clause is the edge set of the unique downward path of
    that length ending at the node."""

    query_word: tuple[str, ...]
    end_nodes: tuple[str, ...]
    clauses: tuple[frozenset[Edge], ...]

    def to_dnf(self, h: ProbGraph) -> PositiveDNF:
        return PositiveDNF.make(
            [frozenset(edge_id(e) for e in cl) for cl in self.clauses],
            [edge_id(e) for e in h.edges],
        )


def descending_path_family(g: QueryGraph, h: ProbGraph) -> DescendingPathFamily:
    pattern = query_path_labels(g)
    if not pattern:
        raise ValueError("single-vertex queries have constant-true lineage")
    _dwt_root_children(h)
    L = len(pattern)
    parent: dict[str, tuple[str, str]] = {}
    for (u, v, lbl) in h.edges:
        parent[v] = (u, lbl)
    ends, clauses = [], []
    for v in sorted(h.vertices):
        node = v
        edges = []
        for _ in range(L):
            if node not in parent:
                break
            (up, lbl) = parent[node]
            edges.append((up, node, lbl))
            node = up
        if len(edges) == L:
            word = [lbl for (_, _, lbl) in reversed(edges)]
            if word == pattern:
                ends.append(v)
                clauses.append(frozenset(edges))
    return DescendingPathFamily(tuple(pattern), tuple(ends), tuple(clauses))


def lineage_l_1wp_dwt(g: QueryGraph, h: ProbGraph) -> PositiveDNF:
    return descending_path_family(g, h).to_dnf(h)


# ---------------------------------------------------------------------------
# unlabeled queries on forests of downward trees
# ---------------------------------------------------------------------------


def _require_unlabeled(g) -> None:
    if len(g.alphabet) != 1:
        raise ClassMismatch("this algorithm is for the single-label setting")


def longest_path_reduction(g: QueryGraph) -> int:
    """Height of the tallest component of an unlabeled forest of downward
    trees; the query is equivalent to the one-way path of that length."""
    _require_unlabeled(g)
    if "UDWT" not in recognize(g).classes:
        raise ClassMismatch("query is not a union of downward trees")
    depth = {v: 0 for v in g.vertices if not g.in_edges(v)}
    order = list(depth)
    best = 0
    for v in order:
        for (w, _) in g.out_edges(v):
            depth[w] = depth[v] + 1
            best = max(best, depth[w])
            order.append(w)
    return best


def _dwt_run_length_no_path(h: ProbGraph, m: int) -> Fraction:
    """Probability that a downward tree contains no kept downward run of m
    edges; per-node state is the kept run length ending there."""
    root, children = _dwt_root_children(h)
    order = [root]
    for v in order:
        order.extend(w for (w, _) in children[v])
    vecs: dict[str, list[Fraction]] = {}
    for v in reversed(order):
        vec = []
        for s in range(m):
            f = Fraction(1)
            for (w, lbl) in children[v]:
                p = h.probs[(v, w, lbl)]
                survive = Fraction(0) if s + 1 == m else vecs[w][s + 1]
                f *= p * survive + (1 - p) * vecs[w][0]
            vec.append(f)
        vecs[v] = vec
    return vecs[root][0]


def prob_u_all_dwt(g: QueryGraph, h: ProbGraph) -> Fraction:
    """Exact match probability of an arbitrary unlabeled query on a forest
    of downward trees.

    Non-graded queries (a directed cycle, or two directed paths of
    different lengths between the same endpoints) can never map into a
    forest world; graded ones are equivalent to the one-way path at the
    query's difference of levels.
    """
    _require_unlabeled(g)
    _require_unlabeled(h)
    if "UDWT" not in recognize(h).classes:
        raise ClassMismatch("instance is not a union of downward trees")
    lm = level_mapping(g)
    if lm is None:
        return Fraction(0)
    m = lm.difference_of_levels
    if m == 0:
        return Fraction(1)
    no_path = Fraction(1)
    for comp in connected_components(h):
        sub = component_subgraph(h, comp)
        no_path *= _dwt_run_length_no_path(sub, m)
    return 1 - no_path


# ---------------------------------------------------------------------------
# unlabeled path queries on polytrees
# ---------------------------------------------------------------------------


def prob_u_1wp_pt(m: int, h: ProbGraph, route: str = "dp") -> Fraction:
    """Probability that a polytree world contains a directed path of ``m``
    edges.  Route ``dp`` propagates exact state distributions; route
    ``circuit`` compiles the automaton runs to d-DNNF and evaluates it.
    Both are exact and must agree."""
    if m < 1:
        raise ValueError("path length must be positive")
    _require_unlabeled(h)
    automaton = build_path_automaton(m)
    tree = binarize_polytree(h)
    if route == "dp":
        return automaton_state_distribution(automaton, tree)
    if route == "circuit":
        circuit = compile_automaton_circuit(automaton, tree)
        pi = {edge_var_name(e): h.probs[e] for e in h.edges}
        return circuit_prob(circuit, pi)
    raise ValueError(f"unknown route {route!r}")


def prob_disconnected_instance(
    g: QueryGraph, h: ProbGraph, solve_component: Callable[[ProbGraph], Fraction]
) -> Fraction:
    """Combine per-component probabilities for a connected query: a match
    lands inside a single component, and components are independent."""
    if len(connected_components(g)) != 1:
        raise ClassMismatch("query must be connected")
    miss = Fraction(1)
    for comp in connected_components(h):
        miss *= 1 - solve_component(component_subgraph(h, comp))
    return 1 - miss
