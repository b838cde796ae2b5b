"""Text formats: lattice files, DOT diagrams and reports.

Lattice text format, one item per line::

    lattice M3
    elements: 0 a b c 1
    covers: 0<a 0<b 0<c a<1 b<1 c<1

Blank lines and ``#`` comments are ignored; ``elements:`` and
``covers:`` may repeat within a block.  A file may hold several
blocks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

from lattice_workbench.errors import (
    BudgetExceeded,
    LatticeCheckFailure,
    LatticeFormatError,
)
from lattice_workbench.order import FiniteLattice, FinitePoset, build_lattice

if TYPE_CHECKING:
    from lattice_workbench.extension import ExtensionAudit
    from lattice_workbench.finite_free import FreeLattice
    from lattice_workbench.properties import PropertyReport, Verdict

MAX_DOT_ELEMENTS = 500

_ID = re.compile(r"[^\s<#]+")
_COVER = re.compile(r"([^\s<#]+)<([^\s<#]+)")


# ------------------------------------------------------------------
# Lattice text format
# ------------------------------------------------------------------


@dataclass
class _Block:
    name: str
    line: int
    elements: list[str] = field(default_factory=list)
    element_line: dict[str, int] = field(default_factory=dict)
    covers: list[tuple[str, str, int]] = field(default_factory=list)
    covers_line: int | None = None

    def build(self) -> FiniteLattice:
        if not self.elements:
            raise LatticeFormatError("block has no elements", self.line)
        for lo, hi, line in self.covers:
            for e in (lo, hi):
                if e not in self.element_line:
                    raise LatticeFormatError(f"unknown element {e!r}", line)
        try:
            return build_lattice(
                self.elements, [(lo, hi) for lo, hi, _ in self.covers]
            )
        except LatticeCheckFailure as exc:
            raise LatticeCheckFailure(
                exc.kind, exc.witness, self._blame(exc.witness)
            ) from None

    def _blame(self, witness: tuple[str, ...]) -> int:
        involved = set(witness)
        for lo, hi, line in reversed(self.covers):
            if {lo, hi} <= involved:
                return line
        for lo, hi, line in reversed(self.covers):
            if lo in involved or hi in involved:
                return line
        return self.covers_line or self.line


def parse_lattices(text: str) -> list[tuple[str, FiniteLattice]]:
    """All ``(name, lattice)`` blocks of *text*, in file order.

    Raises
    ------
    LatticeFormatError
        Syntax errors, with 1-based line numbers.
    LatticeCheckFailure
        The declared order is not a lattice; ``line`` points at the
        cover entry involving the witness.
    """
    out: list[tuple[str, FiniteLattice]] = []
    block: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "lattice":
            if block is not None:
                out.append((block.name, block.build()))
            name = rest.strip()
            if not name:
                raise LatticeFormatError("lattice needs a name", lineno)
            block = _Block(name, lineno)
            continue
        if block is None:
            raise LatticeFormatError("expected 'lattice <name>'", lineno)
        key, colon, body = line.partition(":")
        if not colon:
            raise LatticeFormatError(f"unrecognised line {line!r}", lineno)
        key = key.strip()
        tokens = body.split()
        if key == "elements":
            for tok in tokens:
                if not _ID.fullmatch(tok):
                    raise LatticeFormatError(f"bad id {tok!r}", lineno)
                if tok in block.element_line:
                    raise LatticeFormatError(f"duplicate id {tok!r}", lineno)
                block.elements.append(tok)
                block.element_line[tok] = lineno
        elif key == "covers":
            block.covers_line = block.covers_line or lineno
            for tok in tokens:
                m = _COVER.fullmatch(tok)
                if m is None:
                    raise LatticeFormatError(
                        f"bad cover {tok!r}, expected lo<hi", lineno
                    )
                block.covers.append((m.group(1), m.group(2), lineno))
        else:
            raise LatticeFormatError(f"unknown key {key!r}", lineno)
    if block is not None:
        out.append((block.name, block.build()))
    return out


def parse_lattice_text(text: str) -> tuple[str, FiniteLattice]:
    blocks = parse_lattices(text)
    if len(blocks) != 1:
        raise LatticeFormatError(
            f"expected one lattice, found {len(blocks)}"
        )
    return blocks[0]


def parse_lattice_file(path: str | Path) -> FiniteLattice:
    return parse_lattice_text(Path(path).read_text())[1]


def format_lattice(L: FiniteLattice, name: str = "L") -> str:
    covers = " ".join(f"{lo}<{hi}" for lo, hi in L.covers)
    lines = [
        f"lattice {name}",
        "elements: " + " ".join(L.elements),
        f"covers: {covers}".rstrip(),
    ]
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------
# DOT
# ------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(L: FiniteLattice | FinitePoset, name: str = "L") -> str:
    """Hasse diagram as a DOT digraph, bottom at rank 0.

    Nodes are grouped by height; within a rank and in the edge list
    the order is element order, so the output is deterministic.
    """
    P = L.poset if isinstance(L, FiniteLattice) else L
    if len(P) > MAX_DOT_ELEMENTS:
        raise BudgetExceeded("DOT elements", MAX_DOT_ELEMENTS)
    heights = P.heights.tolist()
    lines = [
        f"digraph {_quote(name)} {{",
        "    rankdir=BT;",
        "    node [shape=plaintext];",
    ]
    for h in sorted(set(heights)):
        nodes = "; ".join(
            _quote(e) for e, eh in zip(P.elements, heights) if eh == h
        )
        lines.append(f"    {{ rank=same; {nodes}; }}")
    for lo, hi in P.covers:
        lines.append(f"    {_quote(lo)} -> {_quote(hi)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(
    L: FiniteLattice | FinitePoset, path: str | Path, name: str = "L"
) -> None:
    Path(path).write_text(emit_dot(L, name))


# ------------------------------------------------------------------
# Reports
# ------------------------------------------------------------------


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def describe(v: Verdict) -> str:
    """``yes``, or ``no`` followed by the witness and note."""
    parts = [_yes(v.holds)]
    if v.witness:
        parts.append(f"witness ({', '.join(v.witness)})")
    if v.note:
        parts.append(f"[{v.note}]")
    return " ".join(parts)


def report_text(report: PropertyReport) -> str:
    """Line-oriented rendering of a property report."""
    facts = report.facts
    lines = [f"lattice {report.name} ({report.size} elements)"]
    for key, v in report.verdicts.items():
        lines.append(f"  {key:<28} {describe(v)}")
    for key in ("orthocomplementable", "orthomodular", "boolean"):
        lines.append(f"  {key:<28} {_yes(facts[key])}")
    lines.append(f"  {'width':<28} {report.width}")
    lines.append(
        f"  {'orthocomplementations':<28} "
        f"{len(report.orthocomplementations)}"
    )
    lines.append(
        f"  {'two-valued homomorphisms':<28} {len(report.two_valued_homs)}"
    )
    if report.forbidden is None:
        lines.append(f"  {'forbidden sublattice':<28} none")
    else:
        f = report.forbidden
        lines.append(
            f"  {'forbidden sublattice':<28} {f.kind} at "
            + " ".join(f.elements)
        )
    lines.append("complements:")
    for e, comps in report.complements.items():
        lines.append(f"  {e}: " + (" ".join(comps) or "-"))
    lines.append("regular: " + (" ".join(report.regular) or "-"))
    for key, v in report.uc.items():
        lines.append(f"  {key:<28} {describe(v)}")
    return "\n".join(lines) + "\n"


def report_kv(report: PropertyReport) -> str:
    """``key=value`` block: one fact per line, lists comma-separated."""
    lines = [f"name={report.name}", f"size={report.size}"]
    for key, value in report.facts.items():
        lines.append(f"{key}={str(value).lower()}")
    for key, v in report.verdicts.items():
        if v.witness:
            lines.append(f"{key}.witness={','.join(v.witness)}")
    lines.append(f"width={report.width}")
    for e, comps in report.complements.items():
        lines.append(f"complements.{e}={','.join(comps)}")
    lines.append(f"regular={','.join(report.regular)}")
    lines.append(f"orthocomplementations={len(report.orthocomplementations)}")
    lines.append(f"two-valued-homs={len(report.two_valued_homs)}")
    if report.forbidden is not None:
        lines.append(
            f"forbidden.{report.forbidden.kind}="
            + ",".join(report.forbidden.elements)
        )
    return "\n".join(lines) + "\n"


def term_lines(F: FreeLattice) -> str:
    return "".join(line + "\n" for line in F.term_lines())


def audit_text(audit: ExtensionAudit) -> str:
    """Complement audit of a one-point extension."""
    lines = [
        f"depth cap: {audit.depth}",
        f"terms enumerated: {audit.terms_enumerated}",
        f"classes: {len(audit.representatives)}",
        "complementary pairs:",
    ]
    for a, b in audit.pairs:
        lines.append(f"  {a} | {b}")
    lines.append("bounds in K (A_*, A^*):")
    for term, (lo, hi) in audit.bounds.items():
        lines.append(f"  {str(term):<24} {lo} {hi}")
    return "\n".join(lines) + "\n"
