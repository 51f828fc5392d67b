"""Positive DNF lineages, clause hypergraphs, and beta-elimination orders."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional


@dataclass(frozen=True)
class PositiveDNF:
    """Disjunction of conjunctive clauses over positive variables.

    ``variables`` is the declared variable set; every clause is a non-empty
    subset of it.  A formula with an empty clause list is identically false.
    """

    variables: frozenset[str]
    clauses: tuple[frozenset[str], ...]

    def __post_init__(self):
        for c in self.clauses:
            if not c:
                raise ValueError("clauses must be non-empty")
            if not c <= self.variables:
                raise ValueError(f"clause {sorted(c)} uses undeclared variables")

    @staticmethod
    def make(clauses: Iterable[Iterable[str]], variables: Optional[Iterable[str]] = None) -> "PositiveDNF":
        cl = tuple(frozenset(c) for c in clauses)
        if variables is None:
            vs: set[str] = set()
            for c in cl:
                vs |= c
            variables = vs
        return PositiveDNF(frozenset(variables), cl)

    def satisfied_by(self, true_vars: frozenset[str]) -> bool:
        return any(c <= true_vars for c in self.clauses)


@dataclass(frozen=True)
class Hypergraph:
    vertices: frozenset[str]
    hyperedges: frozenset[frozenset[str]]

    def __post_init__(self):
        for e in self.hyperedges:
            if not e:
                raise ValueError("hyperedges must be non-empty")
            if not e <= self.vertices:
                raise ValueError(f"hyperedge {sorted(e)} uses undeclared vertices")


def dnf_hypergraph(phi: PositiveDNF) -> Hypergraph:
    """Hypergraph of a positive DNF: one hyperedge per clause, duplicate
    clauses collapsed."""
    return Hypergraph(phi.variables, frozenset(phi.clauses))


def _is_beta_leaf(v: str, edges: Iterable[frozenset[str]]) -> bool:
    incident = sorted((e for e in edges if v in e), key=len)
    return all(a <= b for a, b in zip(incident, incident[1:]))


def beta_elimination_order(h: Hypergraph) -> Optional[tuple[str, ...]]:
    """Greedy beta-leaf elimination with lexicographic tie-breaking.

    Returns a vertex order eliminating the hypergraph down to an empty edge
    set, or ``None`` when no order exists.  Repeatedly removing any beta-leaf
    is complete for beta-acyclicity; the exhaustive search in the test suite
    cross-checks this at small sizes.
    """
    edges = set(h.hyperedges)
    remaining = sorted(h.vertices)
    order: list[str] = []
    while edges:
        leaf = next((v for v in remaining if _is_beta_leaf(v, edges)), None)
        if leaf is None:
            return None
        order.append(leaf)
        remaining.remove(leaf)
        edges = {e - {leaf} for e in edges}
        edges.discard(frozenset())
    return tuple(order)
