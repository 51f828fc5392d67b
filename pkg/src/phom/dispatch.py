"""Class-based complexity dispatch.

Every (query class, instance class, labeled?) triple over the class
lattice maps to exactly one verdict: a polynomial-time algorithm id, or a
hardness citation naming the establishing result.  The mapping is built
from the minimal tractable and minimal hard cells and closed over the
lattice; monotonicity (subclasses of tractable cells stay tractable,
superclasses of hard cells stay hard) is enforced by the test suite
against a hand-audited golden transcription.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graphs import CLASS_IDS, class_contains

TRACTABLE = "tractable"
HARD = "hard"
BRUTE_FORCE_ONLY = "brute-force-only"

#: Algorithm identifiers for the tractable cells.
ALGO_CONNECTED_2WP = "connected-2wp"
ALGO_1WP_DWT = "1wp-dwt"
ALGO_ALL_DWT = "all-dwt"
ALGO_1WP_PT = "1wp-pt"

CONNECTED_QUERY_CLASSES = frozenset({"1WP", "2WP", "DWT", "PT", "Connected"})


class UnknownClass(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of one dispatch cell.  ``status`` is ``tractable`` (with an
    algorithm id), ``hard`` (with a citation), or ``brute-force-only``
    (reserved; the shipped table has no such cells)."""

    status: str
    algorithm: Optional[str] = None
    citation: Optional[str] = None


#: Minimal hard cells with the identifier of the establishing result.
#: Order matters: the first cell dominated by a queried cell provides its
#: citation.  Hardness in the single-label setting carries over to the
#: multi-label setting, so unlabeled sources also apply to labeled cells.
_HARD_SOURCES: tuple[tuple[Optional[bool], str, str, str], ...] = (
    (True, "U1WP", "1WP", "l-U1WP-1WP"),
    (True, "1WP", "PT", "l-1WP-PT"),
    (True, "2WP", "DWT", "l-2WP-DWT"),
    (True, "DWT", "DWT", "l-DWT-DWT"),
    (False, "U2WP", "2WP", "u-U2WP-2WP"),
    (False, "2WP", "PT", "u-2WP-PT"),
    (False, "1WP", "Connected", "u-1WP-Connected"),
)


def _tractable_cell(qclass: str, iclass: str, labeled: bool) -> Optional[Verdict]:
    connected_q = qclass in CONNECTED_QUERY_CLASSES
    collapsible_q = (not labeled) and class_contains("UDWT", qclass)
    if not labeled and class_contains("UDWT", iclass):
        return Verdict(TRACTABLE, ALGO_ALL_DWT, "u-all-DWT")
    if class_contains("U2WP", iclass) and (connected_q or collapsible_q):
        return Verdict(TRACTABLE, ALGO_CONNECTED_2WP, "l-connected-2WP")
    if labeled and qclass == "1WP" and class_contains("UDWT", iclass):
        return Verdict(TRACTABLE, ALGO_1WP_DWT, "l-1WP-DWT")
    if collapsible_q and class_contains("UPT", iclass):
        citation = "u-1WP-PT" if qclass == "1WP" else "u-DWT-PT"
        return Verdict(TRACTABLE, ALGO_1WP_PT, citation)
    return None


def _hard_citation(qclass: str, iclass: str, labeled: bool) -> str:
    for (src_labeled, q, i, citation) in _HARD_SOURCES:
        if src_labeled and not labeled:
            continue
        if class_contains(qclass, q) and class_contains(iclass, i):
            return citation
    raise AssertionError(f"no hardness source for ({qclass}, {iclass}, {labeled})")


def dispatch(qclass: str, iclass: str, labeled: bool) -> Verdict:
    """Verdict of the complexity-table cell for one class pair."""
    if qclass not in CLASS_IDS:
        raise UnknownClass(f"unknown query class {qclass!r}")
    if iclass not in CLASS_IDS:
        raise UnknownClass(f"unknown instance class {iclass!r}")
    cell = _tractable_cell(qclass, iclass, labeled)
    if cell is not None:
        return cell
    return Verdict(HARD, None, _hard_citation(qclass, iclass, labeled))


def all_cells() -> dict[tuple[str, str, bool], Verdict]:
    return {
        (q, i, lab): dispatch(q, i, lab)
        for lab in (True, False)
        for q in CLASS_IDS
        for i in CLASS_IDS
    }


def dump_table() -> str:
    """Flat textual form of the whole dispatch table (one cell per line),
    used by the golden-file fixture."""
    lines = []
    for (q, i, lab), v in sorted(all_cells().items(), key=lambda kv: (not kv[0][2], kv[0])):
        setting = "labeled" if lab else "unlabeled"
        if v.status == TRACTABLE:
            lines.append(f"{setting} {q} {i} tractable {v.algorithm} {v.citation}")
        else:
            lines.append(f"{setting} {q} {i} hard - {v.citation}")
    return "\n".join(lines) + "\n"


_INSTANCE_COLS = ("1WP", "2WP", "DWT", "PT", "Connected")
_DISCONNECTED_ROWS = ("U1WP", "U2WP", "UDWT", "UPT", "All")
_CONNECTED_ROWS = ("1WP", "2WP", "DWT", "PT", "Connected")


def render_tables() -> str:
    """The three core complexity tables with citations, for the CLI."""
    out = []
    specs = (
        ("Single-label setting, disconnected queries "
         "(verdicts also hold for unions of the instance classes)",
         _DISCONNECTED_ROWS, False),
        ("Multi-label setting, connected queries", _CONNECTED_ROWS, True),
        ("Single-label setting, connected queries", _CONNECTED_ROWS, False),
    )
    for title, rows, labeled in specs:
        out.append(title)
        width = 24
        out.append("  " + "G \\ H".ljust(6) + "".join(c.ljust(width) for c in _INSTANCE_COLS))
        for q in rows:
            cells = []
            for i in _INSTANCE_COLS:
                v = dispatch(q, i, labeled)
                if v.status == TRACTABLE:
                    cells.append(f"P [{v.citation}]".ljust(width))
                else:
                    cells.append(f"#P-hard [{v.citation}]".ljust(width))
            out.append("  " + q.ljust(6) + "".join(cells))
        out.append("")
    return "\n".join(out)
