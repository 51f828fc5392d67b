"""Uncertain-tree machinery for directed-path queries on polytrees.

A polytree instance is first rewritten into a full binary tree whose nodes
carry a direction label (``up``/``down`` for original edges, ``eps`` for
structural glue) and the edge's probability.  A bottom-up deterministic
automaton with states ``(i, j, k)`` then tracks, per subtree: the longest
kept upward chain ending at the subtree root, the longest kept downward
chain starting there, and the longest kept directed path anywhere below,
all saturated at the target length ``m``.  Runs of the automaton compile
into a d-DNNF circuit with one variable per original edge, or evaluate
directly as a distribution over states.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .circuits import Circuit
from .graphs import Edge, ProbGraph, edge_id, recognize

UP, DOWN, EPS = "up", "down", "eps"

State = tuple[int, int, int]


class ClassMismatch(ValueError):
    pass


class MalformedTree(ValueError):
    pass


@dataclass(frozen=True)
class PathAutomaton:
    """Total deterministic bottom-up automaton accepting exactly the label
    trees whose kept edges contain a directed path of ``bound`` edges."""

    bound: int

    def iota(self, label: str, bit: int) -> State:
        if bit == 0 or label == EPS:
            return (0, 0, 0)
        if label == UP:
            return (1, 0, 1)
        return (0, 1, 1)

    def delta(self, label: str, bit: int, s1: State, s2: State) -> State:
        m = self.bound
        i, j, k = s1
        i2, j2, k2 = s2
        cross = max(i + j2, i2 + j)
        if bit == 0:
            return (0, 0, min(m, max(k, k2, cross)))
        if label == EPS:
            return (max(i, i2), max(j, j2), min(m, max(k, k2, cross)))
        if label == UP:
            up = min(m, max(i + 1, i2 + 1))
            return (up, 0, min(m, max(up, cross, k, k2)))
        down = min(m, max(j + 1, j2 + 1))
        return (0, down, min(m, max(down, cross, k, k2)))

    def is_final(self, s: State) -> bool:
        return s[2] == self.bound

    def states(self) -> list[State]:
        m = self.bound
        return [(i, j, k) for k in range(m + 1) for i in range(k + 1) for j in range(k + 1)]


def build_path_automaton(m: int) -> PathAutomaton:
    if m < 1:
        raise ValueError("path length bound must be positive")
    return PathAutomaton(m)


@dataclass(frozen=True)
class EpsNode:
    """Node of the binarized tree: direction label, exact probability, the
    original instance edge it stands for (``None`` for structural nodes),
    and 0 or 2 children."""

    label: str
    prob: Fraction
    edge: Optional[Edge]
    children: tuple["EpsNode", ...]


def _eps_leaf() -> EpsNode:
    return EpsNode(EPS, Fraction(1), None, ())


def iter_nodes(root: EpsNode) -> Iterator[EpsNode]:
    stack = [root]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.children)


def check_eps_tree(root: EpsNode) -> None:
    if root.label != EPS or root.prob != 1:
        raise MalformedTree("root must be a structural node of probability 1")
    for n in iter_nodes(root):
        if len(n.children) not in (0, 2):
            raise MalformedTree("tree is not full binary")
        if n.edge is None and (n.label != EPS or n.prob != 1):
            raise MalformedTree("structural nodes must be eps with probability 1")
        if n.edge is not None and n.label == EPS:
            raise MalformedTree("edge-carrying nodes must be directed")


def binarize_polytree(h: ProbGraph) -> EpsNode:
    """Left-child-right-sibling style rewriting of a connected polytree
    into a full binary EpsNode tree with one labeled node per edge."""
    if "PT" not in recognize(h).classes:
        raise ClassMismatch("instance is not a polytree")
    g = h.graph
    root = min(g.vertices)

    parent: dict[str, Optional[str]] = {root: None}
    order = [root]
    for v in order:
        for (w, _) in g.out_edges(v) + g.in_edges(v):
            if w not in parent:
                parent[w] = v
                order.append(w)

    kids: dict[str, list[str]] = {v: [] for v in g.vertices}
    for v in order[1:]:
        kids[parent[v]].append(v)

    def edge_between(p: str, c: str) -> tuple[str, Fraction, Edge]:
        for (w, lbl) in g.out_edges(c):
            if w == p:
                e = (c, p, lbl)
                return UP, h.probs[e], e
        for (w, lbl) in g.out_edges(p):
            if w == c:
                e = (p, c, lbl)
                return DOWN, h.probs[e], e
        raise MalformedTree("tree edge vanished")

    built: dict[str, EpsNode] = {}
    for v in reversed(order):
        ups = sorted(c for c in kids[v] if edge_between(v, c)[0] == UP)
        downs = sorted(c for c in kids[v] if edge_between(v, c)[0] == DOWN)
        specs = [built[c] for c in ups + downs]
        if v == root:
            label, prob, eref = EPS, Fraction(1), None
        else:
            label, prob, eref = edge_between(parent[v], v)
        if not specs:
            built[v] = EpsNode(label, prob, eref, ())
        elif len(specs) == 1:
            built[v] = EpsNode(label, prob, eref, (specs[0], _eps_leaf()))
        else:
            tail = specs[-1]
            for mid in specs[-2:0:-1]:
                tail = EpsNode(EPS, Fraction(1), None, (mid, tail))
            built[v] = EpsNode(label, prob, eref, (specs[0], tail))
    return EpsNode(EPS, Fraction(1), None, (built[root], _eps_leaf()))


def edge_var_name(e: Edge) -> str:
    return edge_id(e)


def _postorder(root: EpsNode) -> list[EpsNode]:
    out: list[EpsNode] = []
    stack: list[tuple[EpsNode, bool]] = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            out.append(node)
        else:
            stack.append((node, True))
            for ch in node.children:
                stack.append((ch, False))
    return out


def compile_automaton_circuit(a: PathAutomaton, t: EpsNode) -> Circuit:
    """Compile the runs of the automaton over the uncertain tree into a
    d-DNNF circuit: one gate per (node, reachable state), one Boolean
    variable per edge-carrying node.  OR gates collect disjoint state
    events, which is what certifies determinism."""
    check_eps_tree(t)
    c = Circuit()
    maps: dict[int, dict[State, int]] = {}
    for node in _postorder(t):
        states: dict[State, list[int]] = {}
        if node.edge is not None:
            lit1 = c.var(edge_var_name(node.edge))
            lit0 = c.nvar(edge_var_name(node.edge))
            bits = ((1, lit1), (0, lit0))
        else:
            bits = ((1, c.true()),)
        if not node.children:
            for bit, lit in bits:
                q = a.iota(node.label, bit)
                states.setdefault(q, []).append(lit)
        else:
            m1 = maps[id(node.children[0])]
            m2 = maps[id(node.children[1])]
            for bit, lit in bits:
                for q1, g1 in m1.items():
                    for q2, g2 in m2.items():
                        q = a.delta(node.label, bit, q1, q2)
                        states.setdefault(q, []).append(c.conj((lit, g1, g2)))
        maps[id(node)] = {q: c.disj(gs, certified=True) for q, gs in states.items()}
    root_map = maps[id(t)]
    c.output = c.disj(
        [g for q, g in sorted(root_map.items()) if a.is_final(q)], certified=True
    )
    c.ddnnf_certified = True
    return c


def automaton_state_distribution(a: PathAutomaton, t: EpsNode) -> Fraction:
    """Direct dynamic program: per node, the exact distribution of the
    automaton state over kept/dropped choices below; returns the total
    mass of accepting states at the root."""
    check_eps_tree(t)
    dists: dict[int, dict[State, Fraction]] = {}
    for node in _postorder(t):
        if node.edge is not None:
            bits = ((1, node.prob), (0, 1 - node.prob))
        else:
            bits = ((1, Fraction(1)),)
        acc: dict[State, Fraction] = {}
        if not node.children:
            for bit, w in bits:
                if w:
                    q = a.iota(node.label, bit)
                    acc[q] = acc.get(q, Fraction(0)) + w
        else:
            d1 = dists[id(node.children[0])]
            d2 = dists[id(node.children[1])]
            for bit, w in bits:
                if not w:
                    continue
                for q1, p1 in d1.items():
                    for q2, p2 in d2.items():
                        q = a.delta(node.label, bit, q1, q2)
                        acc[q] = acc.get(q, Fraction(0)) + w * p1 * p2
        dists[id(node)] = acc
    return sum(
        (p for q, p in dists[id(t)].items() if a.is_final(q)), start=Fraction(0)
    )


def labeled_nodes(root: EpsNode) -> list[EpsNode]:
    return [n for n in iter_nodes(root) if n.edge is not None]
