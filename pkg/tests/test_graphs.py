import random

import pytest

from phom.graphs import (
    CLASS_IDS,
    DuplicateEdge,
    MissingProbability,
    ProbabilityOutOfRange,
    UnknownVertex,
    build_graph,
    class_contains,
    connected_components,
    component_subgraph,
    level_mapping,
    recognize,
)
from phom.randgen import (
    UNLABELED_ALPHABET,
    disjoint_union,
    rand_any,
    rand_dwt,
)

from fractions import Fraction as F


class TestBuildGraph:
    def test_two_edge_labeled_path(self):
        g = build_graph("abc", [("a", "b", "R"), ("b", "c", "S")], alphabet="RS")
        assert recognize(g).most_specific == "1WP"

    def test_duplicate_ordered_pair_rejected(self):
        with pytest.raises(DuplicateEdge):
            build_graph("ab", [("a", "b", "R"), ("a", "b", "S")], alphabet="RS")

    def test_antiparallel_pair_allowed(self, example_instance):
        assert example_instance.graph.has_edge("a", "c", "R")
        assert example_instance.graph.has_edge("c", "a", "S")

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertex):
            build_graph("ab", [("a", "z", "R")], alphabet="R")

    def test_probability_out_of_range(self):
        with pytest.raises(ProbabilityOutOfRange):
            build_graph("ab", [("a", "b", "R")], {("a", "b", "R"): F(3, 2)}, "R")

    def test_missing_probability(self):
        with pytest.raises(MissingProbability):
            build_graph("ab", [("a", "b", "R")], {}, "R")

    def test_self_loop_allowed_in_general_graphs(self):
        g = build_graph("a", [("a", "a", "R")], alphabet="R")
        report = recognize(g)
        assert report.most_specific == "Connected"
        assert "PT" not in report.classes


class TestConnectedComponents:
    def test_single_vertex(self):
        g = build_graph("a", [], alphabet="_")
        assert connected_components(g) == [frozenset("a")]

    def test_two_pairs(self):
        g = build_graph("abcd", [("a", "b", "_"), ("c", "d", "_")], alphabet="_")
        assert sorted(connected_components(g)) == [frozenset("ab"), frozenset("cd")]

    def test_example_instance_is_one_component(self, example_instance):
        assert len(connected_components(example_instance)) == 1


class TestRecognize:
    def test_labeled_1wp(self, labeled_1wp_example):
        assert recognize(labeled_1wp_example).most_specific == "1WP"

    def test_labeled_2wp(self, labeled_2wp_example):
        r = recognize(labeled_2wp_example)
        assert r.most_specific == "2WP"
        assert "1WP" not in r.classes and "DWT" not in r.classes

    def test_single_vertex_in_everything(self):
        g = build_graph("a", [], alphabet="_")
        assert recognize(g).classes == frozenset(CLASS_IDS)

    def test_dwt_example(self, dwt_example):
        assert recognize(dwt_example).most_specific == "DWT"

    def test_pt_example_not_dwt_not_2wp(self, pt_example):
        r = recognize(pt_example)
        assert r.most_specific == "PT"
        assert "DWT" not in r.classes and "2WP" not in r.classes

    def test_antiparallel_pair_not_pt(self):
        g = build_graph("ab", [("a", "b", "_"), ("b", "a", "_")], alphabet="_")
        r = recognize(g)
        assert "PT" not in r.classes
        assert r.most_specific == "Connected"

    def test_union_of_dwts_is_udwt_not_connected(self):
        rng = random.Random(0)
        for _ in range(20):
            parts = [rand_dwt(rng, rng.randint(0, 4), UNLABELED_ALPHABET) for _ in range(rng.randint(2, 4))]
            r = recognize(disjoint_union(parts, UNLABELED_ALPHABET))
            assert "UDWT" in r.classes
            assert "Connected" not in r.classes

    def test_closure_under_inclusion_random(self):
        rng = random.Random(1)
        for _ in range(1000):
            g = rand_any(rng, rng.randint(1, 8), rng.randint(0, 10), UNLABELED_ALPHABET)
            classes = recognize(g).classes
            for c in classes:
                for big in CLASS_IDS:
                    if class_contains(big, c):
                        assert big in classes

    def test_minimal_classes_are_the_true_minima(self):
        rng = random.Random(2)
        for _ in range(300):
            g = rand_any(rng, rng.randint(1, 7), rng.randint(0, 8), UNLABELED_ALPHABET)
            r = recognize(g)
            minima = sorted(
                (
                    c for c in r.classes
                    if not any(o != c and class_contains(c, o) for o in r.classes)
                ),
                key=CLASS_IDS.index,
            )
            assert list(r.minimal) == minima
            assert r.most_specific == minima[0]

    def test_mixed_direction_star_path_has_two_minima(self):
        g = build_graph("abc", [("b", "a", "_"), ("b", "c", "_")], alphabet="_")
        r = recognize(g)
        assert r.minimal == ("2WP", "DWT")
        assert r.most_specific == "2WP"


LEVEL_FIGURE_EDGES = [
    ("n02", "n11"), ("n11", "n20"), ("n22", "n11"), ("n22", "n31"),
    ("n33", "n22"), ("u1", "n33"), ("n33", "u2"), ("u2", "n51"),
    ("n62", "n51"), ("n62", "n71"), ("v2", "n71"), ("n73", "n62"),
    ("n73", "v2"), ("n64", "n73"), ("v1", "n73"), ("n75", "n64"),
]

LEVEL_FIGURE_LEVELS = {
    "n02": 2, "n11": 1, "n20": 0, "n22": 2, "n31": 1, "n33": 3, "u1": 4,
    "u2": 2, "n51": 1, "n62": 2, "n71": 1, "v2": 2, "n73": 3, "n64": 4,
    "v1": 4, "n75": 5,
}


class TestLevelMapping:
    def test_single_edge(self):
        g = build_graph("uv", [("u", "v", "_")], alphabet="_")
        lm = level_mapping(g)
        assert lm.mu == {"u": 1, "v": 0}
        assert lm.difference_of_levels == 1

    def test_level_figure_dag(self):
        g = build_graph(
            LEVEL_FIGURE_LEVELS, [(u, v, "_") for (u, v) in LEVEL_FIGURE_EDGES], alphabet="_"
        )
        lm = level_mapping(g)
        assert lm is not None
        assert dict(lm.mu) == LEVEL_FIGURE_LEVELS
        assert lm.difference_of_levels == 5

    def test_diamond_with_unequal_paths_has_no_mapping(self):
        g = build_graph("uvw", [("u", "v", "_"), ("u", "w", "_"), ("w", "v", "_")], alphabet="_")
        assert level_mapping(g) is None

    def test_directed_cycle_has_no_mapping(self):
        g = build_graph("ab", [("a", "b", "_"), ("b", "a", "_")], alphabet="_")
        assert level_mapping(g) is None

    def test_edges_decrease_by_one(self):
        rng = random.Random(3)
        for _ in range(300):
            g = rand_any(rng, rng.randint(1, 7), rng.randint(0, 8), UNLABELED_ALPHABET)
            lm = level_mapping(g)
            if lm is None:
                continue
            for (u, v, _) in g.edges:
                assert lm.mu[v] == lm.mu[u] - 1

    def test_absent_iff_cycle_or_unequal_paths(self):
        rng = random.Random(4)

        def brute_obstruction(g):
            # all directed path lengths between each ordered vertex pair
            lengths = {}

            def walk(start, v, dist, visited):
                lengths.setdefault((start, v), set()).add(dist)
                if dist > len(g.vertices):
                    return
                for (w, _) in g.out_edges(v):
                    if (start, w) in lengths and dist + 1 in lengths[(start, w)]:
                        continue
                    walk(start, w, dist + 1, visited)

            for s in g.vertices:
                walk(s, s, 0, {s})
            for (s, t), ds in lengths.items():
                if s == t and any(d > 0 for d in ds):
                    return True  # directed cycle
                if len(ds) > 1:
                    return True  # two different lengths
            return False

        for _ in range(250):
            g = rand_any(rng, rng.randint(1, 7), rng.randint(0, 8), UNLABELED_ALPHABET)
            assert (level_mapping(g) is None) == brute_obstruction(g)

    def test_per_component_shift(self):
        g = build_graph(
            "abcd", [("a", "b", "_"), ("c", "d", "_")], alphabet="_"
        )
        lm = level_mapping(g)
        assert lm.mu == {"a": 1, "b": 0, "c": 1, "d": 0}
        assert lm.difference_of_levels == 1


def test_component_subgraph_keeps_probs(example_instance):
    comp = connected_components(example_instance)[0]
    sub = component_subgraph(example_instance, comp)
    assert sub.probs == example_instance.probs
