"""Top-level solve pipeline: recognize, rewrite, dispatch, run.

Tractable cells run their polynomial algorithm (with the disconnected
instance handled per component and single-label forest queries collapsed
to their longest path).  Hard cells fall back to the exhaustive oracle
while the uncertain-edge count is within the cap, and otherwise report
the hardness citation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import algorithms, dispatch as dispatch_mod, oracle
from .dispatch import (
    ALGO_1WP_DWT,
    ALGO_1WP_PT,
    ALGO_ALL_DWT,
    ALGO_CONNECTED_2WP,
    HARD,
    Verdict,
    dispatch,
)
from .graphs import (
    ClassReport,
    ProbGraph,
    QueryGraph,
    connected_components,
    recognize,
)


class InputValidation(ValueError):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    query: QueryGraph
    instance: ProbGraph

    def __post_init__(self):
        if self.query.alphabet != self.instance.alphabet:
            raise InputValidation(
                f"query alphabet {sorted(self.query.alphabet)} differs from "
                f"instance alphabet {sorted(self.instance.alphabet)}"
            )

    @property
    def labeled(self) -> bool:
        return len(self.query.alphabet) > 1


@dataclass(frozen=True)
class HardReport:
    citation: str
    uncertain_edges: int
    cap: int

    def message(self) -> str:
        return (
            f"dispatch landed on a #P-hard cell [{self.citation}] and the instance "
            f"has {self.uncertain_edges} uncertain edges (brute-force cap {self.cap})"
        )


@dataclass(frozen=True)
class SolveResult:
    probability: Optional[Fraction]
    verdict: Verdict
    method: str
    query_report: ClassReport
    instance_report: ClassReport
    hard: Optional[HardReport] = None


def _collapsed_query(g: QueryGraph) -> QueryGraph:
    """Single-label forest-of-downward-trees query, rewritten to the
    equivalent one-way path of its height."""
    m = algorithms.longest_path_reduction(g)
    label = next(iter(g.alphabet))
    verts = [f"q{t}" for t in range(m + 1)]
    edges = [(verts[t], verts[t + 1], label) for t in range(m)]
    return QueryGraph(verts, edges, g.alphabet)


def _run_tractable(algo: str, g: QueryGraph, h: ProbGraph, labeled: bool) -> Fraction:
    if algo == ALGO_ALL_DWT:
        return algorithms.prob_u_all_dwt(g, h)
    if algo == ALGO_CONNECTED_2WP:
        if len(connected_components(g)) > 1:
            g = _collapsed_query(g)
            if not g.edges:
                return Fraction(1)
        return algorithms.prob_disconnected_instance(
            g, h, lambda comp: algorithms.prob_l_connected_2wp(g, comp)
        )
    if algo == ALGO_1WP_DWT:
        return algorithms.prob_disconnected_instance(
            g, h, lambda comp: algorithms.prob_l_1wp_dwt(g, comp)
        )
    if algo == ALGO_1WP_PT:
        m = algorithms.longest_path_reduction(g)
        if m == 0:
            return Fraction(1)
        path = _collapsed_query(g)
        return algorithms.prob_disconnected_instance(
            path, h, lambda comp: algorithms.prob_u_1wp_pt(m, comp)
        )
    raise AssertionError(f"unknown algorithm id {algo}")


def _validated_classes(
    report: ClassReport, forced: Optional[str], what: str
) -> tuple[str, ...]:
    if forced is None:
        return report.minimal
    if forced not in report.classes:
        raise InputValidation(
            f"{what} is not in class {forced}; recognized classes: "
            f"{sorted(report.classes)}"
        )
    return (forced,)


def _best_verdict(qclasses, iclasses, labeled: bool) -> Verdict:
    """Dispatch over every pair of minimal recognized classes; a graph can
    sit in two incomparable minimal classes, and any tractable cell among
    them is sound to run."""
    verdicts = [dispatch(q, i, labeled) for q in qclasses for i in iclasses]
    for v in verdicts:
        if v.status == dispatch_mod.TRACTABLE:
            return v
    return verdicts[0]


def solve(
    problem: ProblemInstance,
    force_brute: bool = False,
    max_brute_edges: int = oracle.DEFAULT_UNCERTAIN_CAP,
    assume_query_class: Optional[str] = None,
    assume_instance_class: Optional[str] = None,
) -> SolveResult:
    g, h = problem.query, problem.instance
    qreport, ireport = recognize(g), recognize(h)
    qclasses = _validated_classes(qreport, assume_query_class, "query")
    iclasses = _validated_classes(ireport, assume_instance_class, "instance")
    verdict = _best_verdict(qclasses, iclasses, problem.labeled)

    if verdict.status == dispatch_mod.TRACTABLE and not force_brute:
        p = _run_tractable(verdict.algorithm, g, h, problem.labeled)
        return SolveResult(p, verdict, f"algorithm {verdict.algorithm}", qreport, ireport)

    uncertain = len(h.uncertain_edges())
    if uncertain > max_brute_edges:
        report = HardReport(verdict.citation or "forced", uncertain, max_brute_edges)
        return SolveResult(None, verdict, "hard cell, no fallback", qreport, ireport, report)
    p = oracle.brute_prob(g, h, max_brute_edges)
    if verdict.status == HARD:
        method = f"brute force (hard cell [{verdict.citation}])"
    else:
        method = "brute force (forced)"
    return SolveResult(p, verdict, method, qreport, ireport)
