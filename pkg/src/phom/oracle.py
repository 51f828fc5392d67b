"""Ground-truth semantics by exhaustive enumeration.

Everything here is deliberately independent of the polynomial-time
algorithms: homomorphisms are found by backtracking search, and
probabilities come from the defining sum over possible worlds, organized
as a weighted count over the uncertain edges (edges with probability 0 or
1 are conditioned out, never enumerated).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional

from . import _backend
from .graphs import Edge, ProbGraph, QueryGraph, connected_components
from .lineage import PositiveDNF

DEFAULT_UNCERTAIN_CAP = 24


class OracleError(ValueError):
    pass


class TooManyUncertainEdges(OracleError):
    pass


class TooManyEdges(OracleError):
    pass


class TooManyVariables(OracleError):
    pass


class UncoveredVariable(OracleError):
    pass


@dataclass(frozen=True)
class PossibleWorld:
    kept_edges: frozenset[Edge]
    probability: Fraction


@dataclass(frozen=True)
class BipartiteGraph:
    """Undirected bipartite graph with 1-indexed vertex parts and an
    explicit edge order ``edges[j] = (left, right)``."""

    n_left: int
    n_right: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for (l, r) in self.edges:
            if not (1 <= l <= self.n_left and 1 <= r <= self.n_right):
                raise OracleError(f"edge ({l}, {r}) out of range")


@dataclass(frozen=True)
class PP2DNF:
    """Positive partitioned 2-DNF: clauses pair an X-variable index with a
    Y-variable index; every variable must occur in some clause."""

    n1: int
    n2: int
    clauses: tuple[tuple[int, int], ...]

    def validate(self):
        seen_x, seen_y = set(), set()
        for (x, y) in self.clauses:
            if not (1 <= x <= self.n1 and 1 <= y <= self.n2):
                raise OracleError(f"clause ({x}, {y}) out of range")
            seen_x.add(x)
            seen_y.add(y)
        if len(seen_x) < self.n1 or len(seen_y) < self.n2:
            raise UncoveredVariable("every variable must occur in some clause")


def possible_worlds(h: ProbGraph, max_edges: int = DEFAULT_UNCERTAIN_CAP) -> Iterator[PossibleWorld]:
    """All 2**|E| possible worlds with their exact probabilities (including
    probability-0 worlds)."""
    edges = h.edges
    if len(edges) > max_edges:
        raise TooManyEdges(f"{len(edges)} edges exceed the cap {max_edges}")
    for r in range(len(edges) + 1):
        for kept in itertools.combinations(edges, r):
            p = Fraction(1)
            kept_set = frozenset(kept)
            for e in edges:
                p *= h.probs[e] if e in kept_set else 1 - h.probs[e]
            yield PossibleWorld(kept_set, p)


def world_graph(h: ProbGraph, kept_edges: frozenset[Edge]) -> QueryGraph:
    """The subgraph of a world: full vertex set, kept edges only."""
    return QueryGraph(h.vertices, kept_edges, h.alphabet)


def _search_order(g: QueryGraph, comp: frozenset[str]) -> list[str]:
    # BFS order so each vertex after the first touches an assigned one
    start = min(comp)
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for (w, _) in g.out_edges(v) + g.in_edges(v):
            if w in comp and w not in seen:
                seen.add(w)
                order.append(w)
    return order


def _candidates(g: QueryGraph, w: QueryGraph, v: str, assign: dict[str, str]) -> Iterator[str]:
    cands: Optional[set[str]] = None
    for (u, lbl) in g.out_edges(v):
        if u in assign:
            allowed = {x for (x, l2) in w.in_edges(assign[u]) if l2 == lbl}
            cands = allowed if cands is None else cands & allowed
    for (u, lbl) in g.in_edges(v):
        if u in assign:
            allowed = {x for (x, l2) in w.out_edges(assign[u]) if l2 == lbl}
            cands = allowed if cands is None else cands & allowed
    if cands is None:
        yield from w.vertices
    else:
        # self-loops at v constrain against v's own image
        for x in sorted(cands):
            yield x


def _extend(g: QueryGraph, w: QueryGraph, order: list[str], idx: int, assign: dict[str, str]) -> Iterator[dict[str, str]]:
    if idx == len(order):
        yield dict(assign)
        return
    v = order[idx]
    for x in _candidates(g, w, v, assign):
        ok = True
        for (u, lbl) in g.out_edges(v):
            if u in assign and not w.has_edge(x, assign[u], lbl):
                ok = False
                break
            if u == v and not w.has_edge(x, x, lbl):
                ok = False
                break
        if ok:
            for (u, lbl) in g.in_edges(v):
                if u in assign and not w.has_edge(assign[u], x, lbl):
                    ok = False
                    break
        if ok:
            assign[v] = x
            yield from _extend(g, w, order, idx + 1, assign)
            del assign[v]


def enumerate_homomorphisms(g: QueryGraph, w: QueryGraph) -> Iterator[dict[str, str]]:
    """All homomorphisms g -> w by backtracking with forward pruning."""
    comps = connected_components(g)
    orders = [_search_order(g, c) for c in comps]
    per_comp = []
    for order in orders:
        sols = list(_extend(g, w, order, 0, {}))
        if not sols:
            return
        per_comp.append(sols)
    for combo in itertools.product(*per_comp):
        h: dict[str, str] = {}
        for part in combo:
            h.update(part)
        yield h


def hom_exists_bf(g: QueryGraph, w: QueryGraph) -> bool:
    """True iff a label-preserving homomorphism g -> w exists."""
    for comp in connected_components(g):
        order = _search_order(g, comp)
        if next(_extend(g, w, order, 0, {}), None) is None:
            return False
    return True


def _hom_edge_set(g: QueryGraph, h: Mapping[str, str]) -> frozenset[Edge]:
    return frozenset((h[u], h[v], lbl) for (u, v, lbl) in g.edges)


def _component_clause_sets(g: QueryGraph, comp: frozenset[str], support: QueryGraph) -> set[frozenset[Edge]]:
    """Distinct instance-edge sets used by homomorphisms of one query
    component into the support graph."""
    order = _search_order(g, comp)
    cedges = [(u, v, l) for (u, v, l) in g.edges if u in comp]
    sub = QueryGraph(comp, cedges, g.alphabet)
    out: set[frozenset[Edge]] = set()
    for hmap in _extend(sub, support, order, 0, {}):
        out.add(_hom_edge_set(sub, hmap))
    return out


def brute_prob(g: QueryGraph, h: ProbGraph, max_uncertain: int = DEFAULT_UNCERTAIN_CAP) -> Fraction:
    """Exact Pr(g has a homomorphism into a random world of h).

    Computes the defining sum over possible worlds of the uncertain edges:
    a world is counted iff every query component has a match using only
    present edges.  Edges with probability 0 or 1 are conditioned out
    before enumeration.
    """
    uncertain = h.uncertain_edges()
    if len(uncertain) > max_uncertain:
        raise TooManyUncertainEdges(
            f"{len(uncertain)} uncertain edges exceed the cap {max_uncertain}"
        )
    support_edges = [e for e in h.edges if h.probs[e] > 0]
    support = QueryGraph(h.vertices, support_edges, h.alphabet)
    idx = {e: i for i, e in enumerate(uncertain)}
    certain = {e for e in support_edges if h.probs[e] == 1}

    groups: list[list[int]] = []
    for comp in connected_components(g):
        clause_sets = _component_clause_sets(g, comp, support)
        if not clause_sets:
            return Fraction(0)
        masks = set()
        for cs in clause_sets:
            mask = 0
            for e in cs:
                if e not in certain:
                    mask |= 1 << idx[e]
            masks.add(mask)
        groups.append(_minimal_sets_masks(masks))

    kept, dropped, denom = [], [], Fraction(1)
    for e in uncertain:
        p = h.probs[e]
        kept.append(p.numerator)
        dropped.append(p.denominator - p.numerator)
        denom *= p.denominator
    num = _backend.grouped_weighted_count(len(uncertain), groups, kept, dropped)
    return Fraction(num, int(denom))


def _minimal_sets_masks(masks: set[int]) -> list[int]:
    by_bits = sorted(masks, key=lambda m: bin(m).count("1"))
    kept: list[int] = []
    for m in by_bits:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return kept


def count_edge_covers(bg: BipartiteGraph, max_edges: int = DEFAULT_UNCERTAIN_CAP) -> int:
    """Number of edge subsets covering every vertex, by exhaustive count."""
    m = len(bg.edges)
    if m > max_edges:
        raise TooManyEdges(f"{m} edges exceed the cap {max_edges}")
    groups = []
    for side, n in (("L", bg.n_left), ("R", bg.n_right)):
        for v in range(1, n + 1):
            incident = [
                1 << j
                for j, (l, r) in enumerate(bg.edges)
                if (side == "L" and l == v) or (side == "R" and r == v)
            ]
            groups.append(incident)
    return _backend.grouped_weighted_count(m, groups, [1] * m, [1] * m)


def count_pp2dnf(phi: PP2DNF, max_vars: int = DEFAULT_UNCERTAIN_CAP) -> int:
    """Number of satisfying valuations of a PP2DNF formula."""
    n = phi.n1 + phi.n2
    if n > max_vars:
        raise TooManyVariables(f"{n} variables exceed the cap {max_vars}")
    phi.validate()
    masks = [(1 << (x - 1)) | (1 << (phi.n1 + y - 1)) for (x, y) in phi.clauses]
    return _backend.grouped_weighted_count(n, [masks], [1] * n, [1] * n)


def dnf_prob_bf(phi: PositiveDNF, pi: Mapping[str, Fraction], max_vars: int = DEFAULT_UNCERTAIN_CAP) -> Fraction:
    """Total probability of the valuations satisfying a positive DNF."""
    variables = sorted(phi.variables)
    if len(variables) > max_vars:
        raise TooManyVariables(f"{len(variables)} variables exceed the cap {max_vars}")
    probs = {v: Fraction(pi[v]) for v in variables}
    always = {v for v in variables if probs[v] == 1}
    never = {v for v in variables if probs[v] == 0}
    free = [v for v in variables if v not in always and v not in never]
    idx = {v: i for i, v in enumerate(free)}

    masks = set()
    for clause in phi.clauses:
        if clause & never:
            continue
        mask = 0
        for v in clause - always:
            mask |= 1 << idx[v]
        masks.add(mask)
    if not masks:
        return Fraction(0)

    kept, dropped, denom = [], [], 1
    for v in free:
        p = probs[v]
        kept.append(p.numerator)
        dropped.append(p.denominator - p.numerator)
        denom *= p.denominator
    num = _backend.grouped_weighted_count(len(free), [sorted(masks)], kept, dropped)
    return Fraction(num, denom)
