"""Lattice terms and the shared term grammar.

A :class:`LatticeTerm` is a generator name or a meet/join node with
at least two children.  Terms are kept flattened (no meet child
under a meet, no join child under a join), deduplicated and sorted
under a fixed total order, so associativity, commutativity and
idempotence of children are resolved structurally.

Grammar::

    term := atom | term '^' term | term 'v' term | '(' term ')'

``^`` binds tighter than ``v``; ``∧``/``∨`` are accepted as
synonyms.  Generators are ``x`` followed by digits; any other word
(``0``, ``m``, ``u``...) names a constant of a partial lattice.  The
bare word ``v`` is always the join operator, and a word starting
with a generator and a ``v`` (``x1vx2``) is split on ``v``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterator, Mapping

import numpy as np

from lattice_workbench.errors import TermError, TermSyntaxError

GEN = "gen"
MEET = "meet"
JOIN = "join"

_GENERATOR = re.compile(r"x\d+")
_NAME = re.compile(r"[A-Za-z0-9_'.]+")
_GLUED_JOIN = re.compile(r"x\d+v")
_TOKEN = re.compile(
    r"(?P<space>\s+)|(?P<op>[()^∧∨])|(?P<name>[A-Za-z0-9_'.]+)|(?P<bad>.)"
)


def is_generator_name(name: str) -> bool:
    return _GENERATOR.fullmatch(name) is not None


def generator_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def _name_key(name: str) -> tuple:
    prefix, digits = re.fullmatch(r"(.*?)(\d*)", name).groups()
    return (prefix, int(digits) if digits else -1, name)


@dataclass(frozen=True, eq=False)
class LatticeTerm:
    """A flattened lattice term; build with :func:`gen`, :func:`meet`,
    :func:`join` or :func:`parse_term`."""

    op: str
    name: str | None = None
    children: tuple[LatticeTerm, ...] = ()

    @cached_property
    def key(self) -> tuple:
        """Total-order key: generators first, then meets, then joins."""
        if self.op == GEN:
            return (0, _name_key(self.name))
        rank = 1 if self.op == MEET else 2
        return (rank, tuple(c.key for c in self.children))

    @cached_property
    def _hash(self) -> int:
        return hash(self.key)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, LatticeTerm):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __lt__(self, other: LatticeTerm) -> bool:
        return self.key < other.key

    @property
    def is_generator(self) -> bool:
        return self.op == GEN

    @cached_property
    def size(self) -> int:
        """Node count."""
        return 1 + sum(c.size for c in self.children)

    @cached_property
    def depth(self) -> int:
        """Operator alternations on the longest root-to-leaf path."""
        if self.op == GEN:
            return 0
        return 1 + max(c.depth for c in self.children)

    @cached_property
    def generators(self) -> frozenset[str]:
        if self.op == GEN:
            return frozenset([self.name])
        return frozenset().union(*(c.generators for c in self.children))

    def __str__(self) -> str:
        return _format(self, top=True)

    def __repr__(self) -> str:
        return f"LatticeTerm({str(self)!r})"

    def subterms(self) -> Iterator[LatticeTerm]:
        yield self
        for c in self.children:
            yield from c.subterms()


def _format(t: LatticeTerm, top: bool = False) -> str:
    if t.op == GEN:
        return t.name
    sep = " ^ " if t.op == MEET else " v "
    body = sep.join(_format(c) for c in t.children)
    return body if top else f"({body})"


def gen(name: str) -> LatticeTerm:
    if not _NAME.fullmatch(name) or name == "v":
        raise TermError(f"invalid generator name {name!r}")
    return LatticeTerm(GEN, name)


def _combine(op: str, terms: tuple[LatticeTerm, ...]) -> LatticeTerm:
    flat: set[LatticeTerm] = set()
    for t in terms:
        if t.op == op:
            flat.update(t.children)
        else:
            flat.add(t)
    if not flat:
        raise TermError(f"empty {op}")
    if len(flat) == 1:
        return next(iter(flat))
    return LatticeTerm(op, None, tuple(sorted(flat, key=lambda c: c.key)))


def meet(*terms: LatticeTerm) -> LatticeTerm:
    return _combine(MEET, terms)


def join(*terms: LatticeTerm) -> LatticeTerm:
    return _combine(JOIN, terms)


# ------------------------------------------------------------------
# Parsing
# ------------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        value = m.group()
        if kind == "space":
            continue
        if kind == "bad":
            raise TermSyntaxError(f"unexpected character {value!r}", m.start())
        if kind == "name" and _GLUED_JOIN.match(value):
            cursor = m.start()
            for i, piece in enumerate(value.split("v")):
                if i:
                    tokens.append(("op", "v", cursor))
                    cursor += 1
                if piece:
                    tokens.append(("name", piece, cursor))
                cursor += len(piece)
            continue
        if kind == "name" and value == "v":
            kind, value = "op", "v"
        if kind == "op":
            value = {"∧": "^", "∨": "v"}.get(value, value)
        tokens.append((kind, value, m.start()))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def offset(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text)

    def take(self, value: str) -> bool:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == value:
            self.pos += 1
            return True
        return False

    def parse(self) -> LatticeTerm:
        if not self.tokens:
            raise TermSyntaxError("empty term", 0)
        term = self.expr()
        if self.peek() is not None:
            raise TermSyntaxError(
                f"unexpected {self.peek()[1]!r}", self.offset()
            )
        return term

    def expr(self) -> LatticeTerm:
        parts = [self.meet_expr()]
        while self.take("v"):
            parts.append(self.meet_expr())
        return join(*parts)

    def meet_expr(self) -> LatticeTerm:
        parts = [self.atom()]
        while self.take("^"):
            parts.append(self.atom())
        return meet(*parts)

    def atom(self) -> LatticeTerm:
        tok = self.peek()
        if tok is None:
            raise TermSyntaxError("unexpected end of term", len(self.text))
        if tok[0] == "name":
            self.pos += 1
            return gen(tok[1])
        if self.take("("):
            inner = self.expr()
            if not self.take(")"):
                raise TermSyntaxError("expected ')'", self.offset())
            return inner
        raise TermSyntaxError(f"unexpected {tok[1]!r}", tok[2])


def parse_term(text: str) -> LatticeTerm:
    """Parse *text* into a flattened, sorted term.

    Raises
    ------
    TermSyntaxError
        With the 0-based offset of the offending token.
    """
    return _Parser(text).parse()


# ------------------------------------------------------------------
# Evaluation
# ------------------------------------------------------------------


def evaluate(
    term: LatticeTerm,
    meet_table: np.ndarray,
    join_table: np.ndarray,
    assignment: Mapping[str, int | np.ndarray],
) -> int | np.ndarray:
    """Evaluate *term* on element positions.

    Assignment values may be integer arrays of a common shape, in
    which case the term is evaluated for every assignment at once.
    """
    memo: dict[LatticeTerm, int | np.ndarray] = {}

    def walk(t: LatticeTerm) -> int | np.ndarray:
        if t in memo:
            return memo[t]
        if t.op == GEN:
            try:
                value = assignment[t.name]
            except KeyError:
                raise TermError(f"no value for {t.name!r}") from None
        else:
            table = meet_table if t.op == MEET else join_table
            value = reduce(
                lambda a, b: table[a, b], (walk(c) for c in t.children)
            )
        memo[t] = value
        return value

    return walk(term)


def evaluate_in(lattice, term: LatticeTerm, assignment: Mapping[str, str]):
    """Evaluate *term* in a lattice with leaves mapped to element ids."""
    positions = {k: lattice.position(v) for k, v in assignment.items()}
    result = evaluate(term, lattice.meet, lattice.join, positions)
    return lattice.elements[int(result)]
