"""Command-line entry point.

Exit codes: 0 for success or a positive answer, 1 when a yes/no
verb answers no (or the harness finds a counterexample), 2 for any
error.  Reports go to stdout and are deterministic; diagnostics and
logging go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from lattice_workbench import corpus as corpus_mod
from lattice_workbench import extension, finite_free, formats, harness
from lattice_workbench.errors import BudgetExceeded, LatticeWorkbenchError
from lattice_workbench.fixtures import m3
from lattice_workbench.free import canonical_form, free_leq
from lattice_workbench.order import FiniteLattice, interval, is_isomorphic
from lattice_workbench.properties import classify, complements_of
from lattice_workbench.terms import gen, parse_term

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2

DEFAULT_HARNESS_SIZE = 7


@dataclass
class Command:
    verb: str
    args: argparse.Namespace


@dataclass
class CommandResult:
    exit_code: int
    output: str


def _read(path: str) -> tuple[str, FiniteLattice]:
    return formats.parse_lattice_text(Path(path).read_text())


def _emit(text: str, out: str | None) -> str:
    """Write *text* to *out* when given, else return it for stdout."""
    if out:
        Path(out).write_text(text)
        return f"wrote {out}\n"
    return text


# ------------------------------------------------------------------
# Verbs
# ------------------------------------------------------------------


def _check(args) -> CommandResult:
    name, L = _read(args.file)
    report = classify(L, name)
    facts = report.facts
    prop = args.property
    if prop not in facts:
        raise LatticeWorkbenchError(
            f"unknown property {prop!r}; choose from "
            + ", ".join(sorted(facts))
        )
    if prop in report.verdicts:
        text = formats.describe(report.verdicts[prop])
    elif prop in report.uc:
        text = formats.describe(report.uc[prop])
    elif prop == "orthomodular" and report.orthomodular and not facts[prop]:
        text = formats.describe(report.orthomodular[0])
    else:
        text = "yes" if facts[prop] else "no"
    code = EXIT_OK if facts[prop] else EXIT_NO
    return CommandResult(code, f"{prop}: {text}\n")


def _complements(args) -> CommandResult:
    _, L = _read(args.file)
    comps = complements_of(L, args.element)
    listed = " ".join(comps) if comps else "none"
    return CommandResult(EXIT_OK, f"complements of {args.element}: {listed}\n")


def _classify(args) -> CommandResult:
    name, L = _read(args.file)
    report = classify(L, name)
    render = formats.report_kv if args.format == "kv" else formats.report_text
    return CommandResult(EXIT_OK, render(report))


def _free_leq(args) -> CommandResult:
    s, t = parse_term(args.s), parse_term(args.t)
    holds = free_leq(s, t)
    answer = "yes" if holds else "no"
    return CommandResult(
        EXIT_OK if holds else EXIT_NO, f"{s} <= {t}: {answer}\n"
    )


def _free_canon(args) -> CommandResult:
    return CommandResult(EXIT_OK, f"{canonical_form(parse_term(args.term))}\n")


def _gen_fd(args) -> CommandResult:
    n = args.n
    budget = args.budget or finite_free.DEFAULT_BUDGET
    published = finite_free.PUBLISHED_FD_COUNTS.get(n)
    if n > finite_free.MAX_FD_GENERATORS:
        if not args.flag_n6:
            raise BudgetExceeded(
                "free distributive generators", finite_free.MAX_FD_GENERATORS
            )
        count = finite_free.count_free_distributive(n, budget, allow_n6=True)
        lines = [f"FD({n}): {count} elements"]
        F = None
    else:
        F = finite_free.free_distributive(n, budget)
        count = len(F)
        lines = [f"FD({n}): {count} elements"]
    if published is not None and published != count:
        lines.append(
            f"note: the published table lists {published}; "
            f"computed {count} (discrepancy)"
        )
    text = "\n".join(lines) + "\n"
    if F is not None:
        if args.out:
            lattice_text = formats.format_lattice(F.lattice, f"FD{n}")
            text += _emit(lattice_text, args.out)
        text += formats.term_lines(F)
    return CommandResult(EXIT_OK, text)


def _gen_fm3(args) -> CommandResult:
    F = finite_free.free_modular_3()
    L = F.lattice
    report = classify(L, "FM3")
    uv = interval(L, "u", "v")
    fd3 = finite_free.collapse(F.closure, 0)
    lines = [
        f"FM(3): {len(L)} elements",
        f"modular: {formats.describe(report.verdicts['modular'])}",
        f"distributive: {formats.describe(report.verdicts['distributive'])}",
        f"interval [u, v] isomorphic to M3: "
        f"{'yes' if is_isomorphic(uv, m3()) else 'no'}",
        f"quotient on 2-chain evaluations: {len(fd3)} elements",
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        text += _emit(formats.format_lattice(L, "FM3"), args.out)
    return CommandResult(EXIT_OK, text + formats.term_lines(F))


def _extend(args) -> CommandResult:
    _, K = _read(args.file)
    spec = extension.ExtensionSpec(K, args.element, args.new)
    Q = extension.adjoin_unique_complement(spec)
    budget = args.budget or extension.DEFAULT_BUDGET
    audit = extension.complement_audit(Q, args.depth, budget)
    comps = audit.complements_of(gen(args.new))
    text = formats.audit_text(audit)
    text += f"complements of {args.new}: " + (
        " ".join(str(c) for c in comps) or "none"
    ) + "\n"
    if args.out:
        text += _emit(formats.emit_dot(audit.order, "FQ"), args.out)
    return CommandResult(EXIT_OK, text)


def _insert(args) -> CommandResult:
    name, host = _read(args.host)
    kname, K = _read(args.k)
    L = extension.insert_into_interval(host, args.x, args.y, K)
    text = formats.format_lattice(L, f"{name}_{kname}")
    return CommandResult(EXIT_OK, _emit(text, args.out))


def _enum(args) -> CommandResult:
    c = corpus_mod.enumerate_lattices(
        args.n,
        allow_9=args.allow_9,
        budget=args.budget or corpus_mod.DEFAULT_BUDGET,
    )
    lines = [f"{k} elements: {count}" for k, count in c.counts().items()]
    lines.append(f"total: {len(c)}")
    text = "\n".join(lines) + "\n"
    if args.corpus:
        corpus_mod.save_corpus(c, args.corpus)
        text += f"wrote {args.corpus}\n"
    return CommandResult(EXIT_OK, text)


def _harness(args) -> CommandResult:
    if args.corpus:
        c = corpus_mod.load_corpus(args.corpus)
    else:
        c = corpus_mod.enumerate_lattices(args.size)
    results = harness.run_harness(c, args.claim or None, args.workers)
    failed = any(r.status == harness.COUNTEREXAMPLE for r in results)
    return CommandResult(
        EXIT_NO if failed else EXIT_OK, harness.harness_report(results)
    )


def _dot(args) -> CommandResult:
    name, L = _read(args.file)
    return CommandResult(EXIT_OK, _emit(formats.emit_dot(L, name), args.out))


VERBS: dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "check": _check,
    "complements": _complements,
    "classify": _classify,
    "free-leq": _free_leq,
    "free-canon": _free_canon,
    "gen-fd": _gen_fd,
    "gen-fm3": _gen_fm3,
    "extend": _extend,
    "insert": _insert,
    "enum": _enum,
    "harness": _harness,
    "dot": _dot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-workbench",
        description="Finite lattices, free lattices and unique complements",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="debug logging"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="answer a yes/no property question")
    p.add_argument("property")
    p.add_argument("file")

    p = sub.add_parser("complements", help="list complements of an element")
    p.add_argument("file")
    p.add_argument("element")

    p = sub.add_parser("classify", help="full property report")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "kv"), default="text")

    p = sub.add_parser("free-leq", help="decide s <= t in the free lattice")
    p.add_argument("s")
    p.add_argument("t")

    p = sub.add_parser("free-canon", help="canonical form of a term")
    p.add_argument("term")

    p = sub.add_parser("gen-fd", help="build the free distributive lattice")
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.add_argument("--budget", type=int)
    p.add_argument(
        "--flag-n6",
        action="store_true",
        help="allow counting FD(6) (count only, no tables)",
    )

    p = sub.add_parser("gen-fm3", help="build the free modular lattice FM(3)")
    p.add_argument("--out")

    p = sub.add_parser("extend", help="audit a one-point complement extension")
    p.add_argument("file")
    p.add_argument("--element", required=True)
    p.add_argument("--new", default="u")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--budget", type=int)
    p.add_argument("--out", help="write the depth-capped order as DOT")

    p = sub.add_parser("insert", help="insert K into a prime interval")
    p.add_argument("host")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("k")
    p.add_argument("--out")

    p = sub.add_parser("enum", help="enumerate lattices up to isomorphism")
    p.add_argument("n", type=int)
    p.add_argument("--corpus", help="save the corpus to this path")
    p.add_argument("--allow-9", action="store_true")
    p.add_argument("--budget", type=int)

    p = sub.add_parser("harness", help="test the claim table on a corpus")
    p.add_argument("--corpus", help="load this corpus instead of building")
    p.add_argument("--size", type=int, default=DEFAULT_HARNESS_SIZE)
    p.add_argument("--claim", action="append", help="claim id (repeatable)")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("dot", help="Hasse diagram as DOT")
    p.add_argument("file")
    p.add_argument("--out")
    return parser


def run(command: Command) -> CommandResult:
    """Dispatch *command*; errors become exit code 2.

    The message of a failed command is logged and returned as the
    output with an ``error:`` prefix; :func:`main` routes it to
    stderr.
    """
    try:
        return VERBS[command.verb](command.args)
    except (LatticeWorkbenchError, OSError) as exc:
        log.debug("%s failed", command.verb, exc_info=True)
        return CommandResult(EXIT_ERROR, f"error: {exc}\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    result = run(Command(args.verb, args))
    stream = sys.stderr if result.exit_code == EXIT_ERROR else sys.stdout
    stream.write(result.output)
    return result.exit_code
