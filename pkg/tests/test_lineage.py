import itertools
import random

import pytest

from phom.lineage import Hypergraph, PositiveDNF, beta_elimination_order, dnf_hypergraph


def hg(*edges):
    vs = {v for e in edges for v in e}
    return Hypergraph(frozenset(vs), frozenset(frozenset(e) for e in edges))


class TestDnfHypergraph:
    def test_one_hyperedge_per_clause(self):
        phi = PositiveDNF.make([["a", "b"], ["b", "c"]])
        assert dnf_hypergraph(phi).hyperedges == frozenset(
            {frozenset("ab"), frozenset("bc")}
        )

    def test_duplicate_clauses_collapse(self):
        phi = PositiveDNF.make([["a"], ["a"]])
        assert dnf_hypergraph(phi).hyperedges == frozenset({frozenset("a")})

    def test_empty_clause_rejected(self):
        with pytest.raises(ValueError):
            PositiveDNF.make([[]])


def is_valid_elimination_order(h: Hypergraph, order) -> bool:
    edges = set(h.hyperedges)
    for v in order:
        incident = sorted((e for e in edges if v in e), key=len)
        if not all(a <= b for a, b in zip(incident, incident[1:])):
            return False
        edges = {e - {v} for e in edges}
        edges.discard(frozenset())
    return not edges


def exhaustive_has_order(h: Hypergraph) -> bool:
    vs = sorted(h.vertices)
    for n in range(len(vs) + 1):
        for perm in itertools.permutations(vs, n):
            if is_valid_elimination_order(h, perm):
                return True
    return False


class TestBetaElimination:
    def test_empty_hypergraph_gives_empty_order(self):
        assert beta_elimination_order(hg()) == ()

    def test_nested_pair(self):
        assert beta_elimination_order(hg("a", "ab")) == ("a", "b")

    def test_triangle_rejected(self):
        assert beta_elimination_order(hg("ab", "bc", "ac")) is None

    def test_order_is_valid_when_found(self):
        rng = random.Random(0)
        for _ in range(200):
            nv = rng.randint(1, 6)
            vs = [f"v{i}" for i in range(nv)]
            edges = [
                rng.sample(vs, rng.randint(1, nv)) for _ in range(rng.randint(1, 5))
            ]
            h = hg(*edges)
            order = beta_elimination_order(h)
            if order is not None:
                assert is_valid_elimination_order(h, order)

    def test_greedy_is_complete_vs_exhaustive(self):
        rng = random.Random(1)
        for _ in range(60):
            nv = rng.randint(1, 7)
            vs = [f"v{i}" for i in range(nv)]
            edges = [
                rng.sample(vs, rng.randint(1, nv)) for _ in range(rng.randint(1, 5))
            ]
            h = hg(*edges)
            assert (beta_elimination_order(h) is not None) == exhaustive_has_order(h)
