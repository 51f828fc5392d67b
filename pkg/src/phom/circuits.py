"""Boolean circuits in negation normal form with d-DNNF validation.

Circuits are hash-consed DAG arenas with constant folding, so identical
gates are shared and compiled circuits stay linear in the input.  An OR
gate can carry a by-construction certificate of mutual exclusivity
(attached by the automaton compiler); exhaustive validation is available
for small variable counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from . import _backend

FALSE, TRUE, VAR, NVAR, AND, OR = range(6)

_KIND_NAMES = {FALSE: "FALSE", TRUE: "TRUE", VAR: "VAR", NVAR: "NVAR", AND: "AND", OR: "OR"}
_KIND_BY_NAME = {v: k for k, v in _KIND_NAMES.items()}


class NotValidated(ValueError):
    """Raised when probability evaluation demands a d-DNNF certificate that
    the circuit does not carry."""


class Circuit:
    """Gate arena.  Gates are created children-first, so gate ids are a
    topological order.  ``output`` must be set before evaluation."""

    def __init__(self):
        self.kinds: list[int] = []
        self.children: list[tuple[int, ...]] = []
        self.var_ids: list[int] = []
        self.var_names: list[str] = []
        self._var_index: dict[str, int] = {}
        self._intern: dict[tuple, int] = {}
        self.certified_or: set[int] = set()
        self.output: Optional[int] = None
        self.ddnnf_certified = False

    # -- construction -------------------------------------------------

    def _gate(self, key: tuple, kind: int, children: tuple[int, ...] = (), var_id: int = -1) -> int:
        gid = self._intern.get(key)
        if gid is None:
            gid = len(self.kinds)
            self.kinds.append(kind)
            self.children.append(children)
            self.var_ids.append(var_id)
            self._intern[key] = gid
        return gid

    def false(self) -> int:
        return self._gate(("const", 0), FALSE)

    def true(self) -> int:
        return self._gate(("const", 1), TRUE)

    def _vid(self, name: str) -> int:
        vid = self._var_index.get(name)
        if vid is None:
            vid = len(self.var_names)
            self.var_names.append(name)
            self._var_index[name] = vid
        return vid

    def var(self, name: str) -> int:
        return self._gate(("var", name), VAR, var_id=self._vid(name))

    def nvar(self, name: str) -> int:
        return self._gate(("nvar", name), NVAR, var_id=self._vid(name))

    def conj(self, children: Iterable[int]) -> int:
        kids = []
        for c in children:
            if self.kinds[c] == FALSE:
                return self.false()
            if self.kinds[c] != TRUE:
                kids.append(c)
        if not kids:
            return self.true()
        if len(kids) == 1:
            return kids[0]
        return self._gate(("and", tuple(kids)), AND, tuple(kids))

    def disj(self, children: Iterable[int], certified: bool = False) -> int:
        kids = []
        for c in children:
            if self.kinds[c] == TRUE:
                return self.true()
            if self.kinds[c] != FALSE:
                kids.append(c)
        if not kids:
            return self.false()
        if len(kids) == 1:
            return kids[0]
        gid = self._gate(("or", tuple(kids)), OR, tuple(kids))
        if certified:
            self.certified_or.add(gid)
        return gid

    # -- queries --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.kinds)

    def gate_count(self) -> int:
        return len(self.kinds)

    def dependent_vars(self) -> list[frozenset[int]]:
        """Per gate, the set of input variables it depends on."""
        deps: list[frozenset[int]] = []
        for gid, kind in enumerate(self.kinds):
            if kind in (VAR, NVAR):
                deps.append(frozenset((self.var_ids[gid],)))
            elif kind in (AND, OR):
                s: set[int] = set()
                for c in self.children[gid]:
                    s |= deps[c]
                deps.append(frozenset(s))
            else:
                deps.append(frozenset())
        return deps


def circuit_prob(c: Circuit, pi: Mapping[str, Fraction], require_validated: bool = True) -> Fraction:
    """One bottom-up pass: inputs map to their probability, negated inputs
    to the complement, AND to product, OR to sum.  Exact on d-DNNF
    circuits; refuses to run without a certificate unless told otherwise.
    """
    if require_validated and not c.ddnnf_certified:
        raise NotValidated("circuit carries no d-DNNF certificate; validate first")
    if c.output is None:
        raise ValueError("circuit has no output gate")
    vals: list[Fraction] = [Fraction(0)] * len(c.kinds)
    for gid, kind in enumerate(c.kinds):
        if kind == FALSE:
            v = Fraction(0)
        elif kind == TRUE:
            v = Fraction(1)
        elif kind == VAR:
            v = Fraction(pi[c.var_names[c.var_ids[gid]]])
        elif kind == NVAR:
            v = 1 - Fraction(pi[c.var_names[c.var_ids[gid]]])
        elif kind == AND:
            v = Fraction(1)
            for ch in c.children[gid]:
                v *= vals[ch]
        else:
            v = Fraction(0)
            for ch in c.children[gid]:
                v += vals[ch]
        vals[gid] = v
    return vals[c.output]


@dataclass
class DdnnfReport:
    decomposable: bool
    deterministic: Optional[bool]
    determinism_method: str
    violations: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.decomposable and self.deterministic is True


EXHAUSTIVE_VAR_CAP = 20


def validate_ddnnf(c: Circuit, exhaustive_cap: int = EXHAUSTIVE_VAR_CAP) -> DdnnfReport:
    """Check decomposability exactly and determinism either exhaustively
    (up to ``exhaustive_cap`` variables) or via by-construction
    certificates.  A fully valid circuit becomes certified for
    :func:`circuit_prob`."""
    violations: list[str] = []
    deps = c.dependent_vars()
    decomposable = True
    for gid, kind in enumerate(c.kinds):
        if kind == AND:
            total = sum(len(deps[ch]) for ch in c.children[gid])
            if total != len(deps[gid]):
                decomposable = False
                violations.append(f"gate {gid}: AND children share variables")

    nvars = len(c.var_names)
    deterministic: Optional[bool]
    if c.output is None:
        raise ValueError("circuit has no output gate")
    if nvars <= exhaustive_cap:
        method = "exhaustive"
        _, nviol = _backend.circuit_eval_exhaustive(
            nvars, c.kinds, c.var_ids, c.children, c.output
        )
        deterministic = nviol == 0
        if nviol:
            violations.append(f"{nviol} OR gate(s) with overlapping children")
    else:
        method = "certificate"
        uncertified = [
            gid
            for gid, kind in enumerate(c.kinds)
            if kind == OR and len(c.children[gid]) > 1 and gid not in c.certified_or
        ]
        if uncertified:
            deterministic = None
            violations.append(f"OR gates without certificate: {uncertified[:5]}")
        else:
            deterministic = True
    report = DdnnfReport(decomposable, deterministic, method, violations)
    if report.valid:
        c.ddnnf_certified = True
    return report


def accepted_bitmap(c: Circuit) -> int:
    """Truth table of the circuit as a bitmap over all valuations of its
    variables (variable i = bit i of the valuation index)."""
    if c.output is None:
        raise ValueError("circuit has no output gate")
    bitmap, _ = _backend.circuit_eval_exhaustive(
        len(c.var_names), c.kinds, c.var_ids, c.children, c.output
    )
    return bitmap


def evaluate(c: Circuit, true_vars: Iterable[str]) -> bool:
    """Evaluate under a single valuation (used by small cross-checks)."""
    if c.output is None:
        raise ValueError("circuit has no output gate")
    tv = set(true_vars)
    vals = [False] * len(c.kinds)
    for gid, kind in enumerate(c.kinds):
        if kind == FALSE:
            v = False
        elif kind == TRUE:
            v = True
        elif kind == VAR:
            v = c.var_names[c.var_ids[gid]] in tv
        elif kind == NVAR:
            v = c.var_names[c.var_ids[gid]] not in tv
        elif kind == AND:
            v = all(vals[ch] for ch in c.children[gid])
        else:
            v = any(vals[ch] for ch in c.children[gid])
        vals[gid] = v
    return vals[c.output]


def serialize_circuit(c: Circuit) -> str:
    """Line-oriented gate list ``gid KIND args...``; the final line is the
    output gate id."""
    if c.output is None:
        raise ValueError("circuit has no output gate")
    lines = []
    for gid, kind in enumerate(c.kinds):
        name = _KIND_NAMES[kind]
        if kind in (VAR, NVAR):
            lines.append(f"{gid} {name} {c.var_names[c.var_ids[gid]]}")
        elif kind in (AND, OR):
            cert = " certified" if gid in c.certified_or else ""
            args = " ".join(str(ch) for ch in c.children[gid])
            lines.append(f"{gid} {name} {args}{cert}")
        else:
            lines.append(f"{gid} {name}")
    lines.append(str(c.output))
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Inverse of :func:`serialize_circuit`.  Gates must be defined before
    they are used; the trailing line names the output gate."""
    c = Circuit()
    gid_map: dict[int, int] = {}
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty circuit file")
    for ln in lines[:-1]:
        parts = ln.split()
        gid = int(parts[0])
        kind = _KIND_BY_NAME[parts[1]]
        certified = parts[-1] == "certified"
        args = parts[2 : len(parts) - 1 if certified else len(parts)]
        if kind == FALSE:
            new = c.false()
        elif kind == TRUE:
            new = c.true()
        elif kind == VAR:
            new = c.var(args[0])
        elif kind == NVAR:
            new = c.nvar(args[0])
        else:
            kids = [gid_map[int(a)] for a in args]
            if kind == AND:
                new = c.conj(kids)
            else:
                new = c.disj(kids, certified=certified)
        gid_map[gid] = new
    c.output = gid_map[int(lines[-1])]
    return c
