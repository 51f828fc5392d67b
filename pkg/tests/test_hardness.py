import random

import pytest

from fractions import Fraction as F

from phom.graphs import recognize
from phom.hardness import (
    EmptyGraph,
    MalformedFormula,
    gen_edge_cover_labeled,
    gen_edge_cover_unlabeled,
    gen_pp2dnf_labeled,
    gen_pp2dnf_unlabeled,
    parse_bipartite,
    parse_pp2dnf,
)
from phom.io import serialize_graph
from phom.oracle import BipartiteGraph, PP2DNF, brute_prob, count_edge_covers, count_pp2dnf
from phom.randgen import rand_bipartite, rand_pp2dnf


def identity_holds(out, count):
    return brute_prob(out.query, out.instance) * 2 ** out.scaling_exponent == count


class TestEdgeCoverLabeled:
    def test_cover_example_structure(self, cover_example):
        out = gen_edge_cover_labeled(cover_example)
        assert len(out.instance.edges) == 21
        assert sum(1 for e in out.instance.edges if e[2] == "C") == 5
        from phom.graphs import connected_components

        assert len(connected_components(out.query)) == 5
        assert recognize(out.query).most_specific == "U1WP"
        assert recognize(out.instance).most_specific == "1WP"

    def test_cover_example_identity(self, cover_example):
        out = gen_edge_cover_labeled(cover_example)
        assert count_edge_covers(cover_example) == 2
        assert identity_holds(out, 2)

    def test_single_edge_probability_half(self):
        out = gen_edge_cover_labeled(BipartiteGraph(1, 1, ((1, 1),)))
        assert brute_prob(out.query, out.instance) == F(1, 2)

    def test_empty_graph_rejected(self):
        with pytest.raises(EmptyGraph):
            gen_edge_cover_labeled(BipartiteGraph(1, 1, ()))


class TestEdgeCoverUnlabeled:
    def test_cover_example_identity(self, cover_example):
        out = gen_edge_cover_unlabeled(cover_example)
        assert identity_holds(out, 2)

    def test_classes(self, cover_example):
        out = gen_edge_cover_unlabeled(cover_example)
        assert recognize(out.query).most_specific == "U2WP"
        assert recognize(out.instance).most_specific == "2WP"

    def test_edge_count_arithmetic(self, cover_example):
        out = gen_edge_cover_unlabeled(cover_example)
        lab = gen_edge_cover_labeled(cover_example)
        n_lr = sum(1 for e in lab.instance.edges if e[2] in "LR")
        n_c = sum(1 for e in lab.instance.edges if e[2] == "C")
        m = len(cover_example.edges)
        assert len(out.instance.edges) == 3 * (n_lr + n_c) + 6 * m

    def test_single_edge_probability_half(self):
        out = gen_edge_cover_unlabeled(BipartiteGraph(1, 1, ((1, 1),)))
        assert brute_prob(out.query, out.instance) == F(1, 2)


class TestPP2DNFLabeled:
    def test_query_shape(self, pp2dnf_example):
        out = gen_pp2dnf_labeled(pp2dnf_example)
        labels = [e[2] for e in _path_edges(out.query)]
        assert labels == ["T"] + ["S"] * 6 + ["T"]

    def test_identity(self, pp2dnf_example):
        out = gen_pp2dnf_labeled(pp2dnf_example)
        assert count_pp2dnf(pp2dnf_example) == 8
        assert identity_holds(out, 8)

    def test_classes(self, pp2dnf_example):
        out = gen_pp2dnf_labeled(pp2dnf_example)
        assert recognize(out.query).most_specific == "1WP"
        assert recognize(out.instance).most_specific == "PT"

    def test_single_clause_probability_quarter(self):
        out = gen_pp2dnf_labeled(PP2DNF(1, 1, ((1, 1),)))
        assert brute_prob(out.query, out.instance) == F(1, 4)

    def test_malformed_formula(self):
        with pytest.raises(MalformedFormula):
            gen_pp2dnf_labeled(PP2DNF(2, 1, ((1, 1),)))


class TestPP2DNFUnlabeled:
    def test_query_shape(self, pp2dnf_example):
        out = gen_pp2dnf_unlabeled(pp2dnf_example)
        # -> -> -> (-> -> <-)^6 -> -> ->
        assert len(out.query.edges) == 3 + 3 * 6 + 3
        assert recognize(out.query).most_specific == "2WP"
        assert recognize(out.instance).most_specific == "PT"

    def test_identity(self, pp2dnf_example):
        out = gen_pp2dnf_unlabeled(pp2dnf_example)
        assert identity_holds(out, 8)

    def test_single_clause_probability_quarter(self):
        out = gen_pp2dnf_unlabeled(PP2DNF(1, 1, ((1, 1),)))
        assert brute_prob(out.query, out.instance) == F(1, 4)


def _path_edges(g):
    start = [v for v in g.vertices if not g.in_edges(v)][0]
    out = []
    v = start
    while g.out_edges(v):
        (w, lbl) = g.out_edges(v)[0]
        out.append((v, w, lbl))
        v = w
    return out


class TestRandomizedIdentities:
    def test_edge_cover_generators(self):
        rng = random.Random(0)
        for _ in range(50):
            gamma = rand_bipartite(rng, 8)
            count = count_edge_covers(gamma)
            assert identity_holds(gen_edge_cover_labeled(gamma), count)
            assert identity_holds(gen_edge_cover_unlabeled(gamma), count)

    def test_pp2dnf_generators(self):
        rng = random.Random(1)
        for _ in range(50):
            phi = rand_pp2dnf(rng, 8)
            count = count_pp2dnf(phi)
            assert identity_holds(gen_pp2dnf_labeled(phi), count)
            assert identity_holds(gen_pp2dnf_unlabeled(phi), count)

    def test_class_conformance(self):
        rng = random.Random(2)
        for _ in range(20):
            gamma = rand_bipartite(rng, 6)
            phi = rand_pp2dnf(rng, 6)
            checks = [
                (gen_edge_cover_labeled(gamma), "U1WP", "1WP"),
                (gen_edge_cover_unlabeled(gamma), "U2WP", "2WP"),
                (gen_pp2dnf_labeled(phi), "1WP", "PT"),
                (gen_pp2dnf_unlabeled(phi), "2WP", "PT"),
            ]
            for out, qcls, icls in checks:
                assert qcls in recognize(out.query).classes
                assert icls in recognize(out.instance).classes


def test_generators_are_deterministic(cover_example, pp2dnf_example):
    for gen, src in [
        (gen_edge_cover_labeled, cover_example),
        (gen_edge_cover_unlabeled, cover_example),
        (gen_pp2dnf_labeled, pp2dnf_example),
        (gen_pp2dnf_unlabeled, pp2dnf_example),
    ]:
        a, b = gen(src), gen(src)
        assert serialize_graph("query", a.query) == serialize_graph("query", b.query)
        assert serialize_graph("instance", a.instance) == serialize_graph(
            "instance", b.instance
        )


class TestSourceParsers:
    def test_bipartite_round_trip(self, cover_example):
        text = "4\ne 1 1 1\ne 2 1 2\ne 3 1 3\ne 4 2 1\n"
        assert parse_bipartite(text) == cover_example

    def test_bipartite_bad_index(self):
        with pytest.raises(ValueError):
            parse_bipartite("2\ne 1 1 1\ne 3 1 2\n")

    def test_pp2dnf_round_trip(self, pp2dnf_example):
        text = "2 2\n1 2\n1 1\n2 2\n"
        assert parse_pp2dnf(text) == pp2dnf_example

    def test_comments_ignored(self):
        text = "# covers\n1\ne 1 1 1  # only edge\n"
        assert parse_bipartite(text) == BipartiteGraph(1, 1, ((1, 1),))
