"""Line-oriented text format for query and instance graphs.

::

    # comment
    alphabet R S T        (or: alphabet _)
    kind query            (or: kind instance)
    node a                (optional; vertices are implied by edges)
    edge a b R            (query edge)
    edge a b R 0.1        (instance edge; decimal or p/q, exact)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .graphs import Edge, GraphError, ProbGraph, QueryGraph, build_graph


class FileFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ParsedGraph:
    kind: str
    graph: Union[QueryGraph, ProbGraph]


def parse_probability(token: str) -> Fraction:
    try:
        p = Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise FileFormatError(f"bad probability {token!r}") from exc
    return p


def parse_graph_text(text: str) -> ParsedGraph:
    alphabet: list[str] | None = None
    kind: str | None = None
    vertices: list[str] = []
    edges: list[Edge] = []
    probs: dict[Edge, Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word, args = parts[0], parts[1:]
        if word == "alphabet":
            if not args:
                raise FileFormatError(f"line {lineno}: empty alphabet")
            alphabet = args
        elif word == "kind":
            if len(args) != 1 or args[0] not in ("query", "instance"):
                raise FileFormatError(f"line {lineno}: kind must be query or instance")
            kind = args[0]
        elif word == "node":
            if len(args) != 1:
                raise FileFormatError(f"line {lineno}: node takes one identifier")
            vertices.append(args[0])
        elif word == "edge":
            if kind is None:
                raise FileFormatError(f"line {lineno}: kind must come before edges")
            if kind == "query":
                if len(args) != 3:
                    raise FileFormatError(f"line {lineno}: query edge needs src dst label")
                edges.append((args[0], args[1], args[2]))
            else:
                if len(args) != 4:
                    raise FileFormatError(
                        f"line {lineno}: instance edge needs src dst label prob"
                    )
                e = (args[0], args[1], args[2])
                edges.append(e)
                probs[e] = parse_probability(args[3])
            vertices.extend(args[:2])
        else:
            raise FileFormatError(f"line {lineno}: unknown directive {word!r}")
    if kind is None:
        raise FileFormatError("missing 'kind' line")
    if alphabet is None:
        raise FileFormatError("missing 'alphabet' line")
    try:
        graph = build_graph(
            vertices, edges, probs if kind == "instance" else None, alphabet
        )
    except GraphError as exc:
        raise FileFormatError(str(exc)) from exc
    return ParsedGraph(kind, graph)


def parse_graph_file(path: str) -> ParsedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


def serialize_graph(kind: str, g: Union[QueryGraph, ProbGraph]) -> str:
    graph = g.graph if isinstance(g, ProbGraph) else g
    lines = [f"alphabet {' '.join(sorted(graph.alphabet))}", f"kind {kind}"]
    touched = {v for e in graph.edges for v in (e[0], e[1])}
    for v in graph.vertices:
        if v not in touched:
            lines.append(f"node {v}")
    for (u, v, lbl) in graph.edges:
        if isinstance(g, ProbGraph):
            p = g.probs[(u, v, lbl)]
            lines.append(f"edge {u} {v} {lbl} {p.numerator}/{p.denominator}")
        else:
            lines.append(f"edge {u} {v} {lbl}")
    return "\n".join(lines) + "\n"


def write_graph_file(path: str, kind: str, g: Union[QueryGraph, ProbGraph]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_graph(kind, g))
