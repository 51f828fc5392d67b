"""Command-line interface.

Exit codes: 0 success, 2 input validation error, 3 hard cell without a
brute-force fallback.
"""

from __future__ import annotations

import argparse
import sys
from decimal import Decimal, getcontext
from fractions import Fraction

from . import dispatch as dispatch_mod
from . import oracle
from .algorithms import (
    lineage_l_1wp_dwt,
    lineage_l_connected_2wp,
    longest_path_reduction,
)
from .circuits import serialize_circuit
from .graphs import CLASS_IDS, GraphError, ProbGraph, edge_id, recognize
from .hardness import (
    GeneratorError,
    gen_edge_cover_labeled,
    gen_edge_cover_unlabeled,
    gen_pp2dnf_labeled,
    gen_pp2dnf_unlabeled,
    parse_bipartite,
    parse_pp2dnf,
)
from .io import FileFormatError, parse_graph_file, write_graph_file
from .lineage import PositiveDNF
from .solve import InputValidation, ProblemInstance, solve
from .treeauto import build_path_automaton, binarize_polytree, compile_automaton_circuit

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_HARD = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


def _decimal_str(p: Fraction, digits: int = 12) -> str:
    getcontext().prec = digits
    return str(Decimal(p.numerator) / Decimal(p.denominator))


def _load(path: str, expected_kind: str):
    parsed = parse_graph_file(path)
    if parsed.kind != expected_kind:
        raise CliError(f"{path}: expected kind {expected_kind}, found {parsed.kind}")
    return parsed.graph


def _cmd_classify(args) -> int:
    parsed = parse_graph_file(args.file)
    report = recognize(parsed.graph)
    print(f"kind: {parsed.kind}")
    print(f"classes: {' '.join(c for c in CLASS_IDS if c in report.classes)}")
    print(f"most-specific: {report.most_specific}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    query = _load(args.query, "query")
    instance = _load(args.instance, "instance")
    problem = ProblemInstance(query, instance)
    result = solve(
        problem,
        force_brute=args.brute,
        max_brute_edges=args.max_brute_edges,
        assume_query_class=args.assume_class,
        assume_instance_class=args.assume_instance_class,
    )
    print(f"query class: {result.query_report.most_specific}")
    print(f"instance class: {result.instance_report.most_specific}")
    print(f"method: {result.method}")
    if result.probability is None:
        print(result.hard.message())
        return EXIT_HARD
    p = result.probability
    print(f"probability: {p.numerator}/{p.denominator} ({_decimal_str(p)})")
    return EXIT_OK


def _dnf_text(dnf: PositiveDNF) -> str:
    lines = [f"vars {' '.join(sorted(dnf.variables))}"]
    for clause in dnf.clauses:
        lines.append("clause " + " ".join(sorted(clause)))
    return "\n".join(lines) + "\n"


def _cmd_lineage(args) -> int:
    query = _load(args.query, "query")
    instance = _load(args.instance, "instance")
    problem = ProblemInstance(query, instance)
    qr, ir = recognize(query), recognize(instance)
    if args.format == "dnf":
        if "1WP" in qr.classes and "DWT" in ir.classes and query.edges:
            dnf = lineage_l_1wp_dwt(query, instance)
        elif "Connected" in qr.classes and "2WP" in ir.classes and query.edges:
            dnf = lineage_l_connected_2wp(query, instance)
        else:
            dnf = _brute_lineage(query, instance, args.max_brute_edges)
        text = _dnf_text(dnf)
    else:
        if problem.labeled or "UDWT" not in qr.classes or "PT" not in ir.classes:
            raise CliError(
                "d-DNNF lineage needs a single-label forest-of-downward-trees "
                "query and a connected polytree instance"
            )
        m = longest_path_reduction(query)
        if m == 0:
            raise CliError("zero-length path query has constant-true lineage")
        circuit = compile_automaton_circuit(build_path_automaton(m), binarize_polytree(instance))
        text = serialize_circuit(circuit)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.format} lineage to {args.out}")
    return EXIT_OK


def _brute_lineage(query, instance: ProbGraph, cap: int) -> PositiveDNF:
    from .graphs import connected_components
    from .oracle import _component_clause_sets

    if len(instance.edges) > cap:
        raise CliError(
            f"instance has {len(instance.edges)} edges, above the cap {cap}", EXIT_HARD
        )
    if not query.edges:
        raise CliError("edgeless query lineage is the constant true")
    clause_groups = []
    for comp in connected_components(query):
        sets = _component_clause_sets(query, comp, instance.graph)
        clause_groups.append(sets)
    # conjunction of per-component DNFs, expanded to one DNF
    import itertools

    clauses = set()
    for combo in itertools.product(*clause_groups):
        merged = frozenset(edge_id(e) for part in combo for e in part)
        clauses.add(merged)
    return PositiveDNF.make(sorted(clauses), [edge_id(e) for e in instance.edges])


def _cmd_dispatch(args) -> int:
    labeled = args.labeled
    verdict = dispatch_mod.dispatch(args.query_class, args.instance_class, labeled)
    setting = "labeled" if labeled else "unlabeled"
    if verdict.status == dispatch_mod.TRACTABLE:
        print(f"{setting} ({args.query_class}, {args.instance_class}): "
              f"tractable via {verdict.algorithm} [{verdict.citation}]")
    else:
        print(f"{setting} ({args.query_class}, {args.instance_class}): "
              f"#P-hard [{verdict.citation}]")
    return EXIT_OK


def _cmd_gen(args) -> int:
    with open(args.input, "r", encoding="utf-8") as fh:
        text = fh.read()
    if args.source == "edge-cover":
        gamma = parse_bipartite(text)
        out = gen_edge_cover_labeled(gamma) if args.labeled else gen_edge_cover_unlabeled(gamma)
    else:
        phi = parse_pp2dnf(text)
        out = gen_pp2dnf_labeled(phi) if args.labeled else gen_pp2dnf_unlabeled(phi)
    write_graph_file(args.out_query, "query", out.query)
    write_graph_file(args.out_instance, "instance", out.instance)
    print(f"scaling exponent: {out.scaling_exponent}")
    print(f"target count: {out.target_count_kind}")
    return EXIT_OK


def _cmd_oracle(args) -> int:
    if args.oracle == "brute-prob":
        if not args.query or not args.instance:
            raise CliError("brute-prob needs --query and --instance")
        query = _load(args.query, "query")
        instance = _load(args.instance, "instance")
        ProblemInstance(query, instance)
        p = oracle.brute_prob(query, instance, args.max_brute_edges)
        print(f"{p.numerator}/{p.denominator} ({_decimal_str(p)})")
    elif args.oracle == "count-edge-covers":
        if not args.input:
            raise CliError("count-edge-covers needs --input")
        with open(args.input, "r", encoding="utf-8") as fh:
            gamma = parse_bipartite(fh.read())
        print(oracle.count_edge_covers(gamma))
    else:
        if not args.input:
            raise CliError("count-pp2dnf needs --input")
        with open(args.input, "r", encoding="utf-8") as fh:
            phi = parse_pp2dnf(fh.read())
        print(oracle.count_pp2dnf(phi))
    return EXIT_OK


def _cmd_tables(args) -> int:
    print(dispatch_mod.render_tables(), end="")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phom",
        description="Exact probabilistic graph-homomorphism solver",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="recognize the classes of a graph file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="compute the match probability")
    p.add_argument("--query", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--brute", action="store_true", help="force the exhaustive oracle")
    p.add_argument("--max-brute-edges", type=int, default=oracle.DEFAULT_UNCERTAIN_CAP)
    p.add_argument("--assume-class", default=None, metavar="C",
                   help="dispatch the query as class C (validated)")
    p.add_argument("--assume-instance-class", default=None, metavar="C")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("lineage", help="write a lineage representation")
    p.add_argument("--query", required=True)
    p.add_argument("--instance", required=True)
    p.add_argument("--format", choices=("dnf", "ddnnf"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--max-brute-edges", type=int, default=oracle.DEFAULT_UNCERTAIN_CAP)
    p.set_defaults(func=_cmd_lineage)

    p = sub.add_parser("dispatch", help="look up a complexity-table cell")
    p.add_argument("--query-class", required=True, choices=CLASS_IDS)
    p.add_argument("--instance-class", required=True, choices=CLASS_IDS)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--labeled", action="store_true")
    g.add_argument("--unlabeled", dest="labeled", action="store_false")
    p.set_defaults(func=_cmd_dispatch)

    p = sub.add_parser("gen", help="generate a hardness-reduction pair")
    p.add_argument("source", choices=("edge-cover", "pp2dnf"))
    p.add_argument("--input", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--labeled", action="store_true")
    g.add_argument("--unlabeled", dest="labeled", action="store_false")
    p.add_argument("--out-query", required=True)
    p.add_argument("--out-instance", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("oracle", help="run a brute-force oracle")
    p.add_argument("oracle", choices=("brute-prob", "count-edge-covers", "count-pp2dnf"))
    p.add_argument("--query")
    p.add_argument("--instance")
    p.add_argument("--input")
    p.add_argument("--max-brute-edges", type=int, default=oracle.DEFAULT_UNCERTAIN_CAP)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("tables", help="print the complexity tables")
    p.set_defaults(func=_cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (FileFormatError, GraphError, InputValidation, GeneratorError,
            oracle.OracleError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
