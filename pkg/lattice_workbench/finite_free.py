"""Finite free lattices built by evaluation-vector closure.

An element of the lattice freely generated by ``x1 .. xn`` in the
variety of a family of finite lattices is identified with its vector
of values under every assignment of the generators into every
member.  Meet and join act pointwise, so the free lattice is the
closure of the generator vectors under pointwise operations.

The free distributive lattice has a faster path: with the 2-element
chain as the only member, a vector is a truth table and fits in a
single ``uint64`` for ``n <= 6``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from lattice_workbench.errors import BudgetExceeded, ConsistencyError
from lattice_workbench.fixtures import chain, m3
from lattice_workbench.order import FiniteLattice, index_dtype
from lattice_workbench.terms import (
    MEET,
    LatticeTerm,
    evaluate,
    gen,
    generator_names,
    join,
    meet,
    parse_term,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000
MAX_FD_GENERATORS = 5
PAIR_CHUNK = 1 << 22

# Element counts of FD(n) as printed in the literature table; rows 2
# and 6 do not match the closure (4 and 7,828,352).
PUBLISHED_FD_COUNTS = {1: 1, 2: 42, 3: 18, 4: 166, 5: 7579, 6: 7828532}


def _legend(entries: Mapping[str, str]) -> dict[str, LatticeTerm]:
    def expand(text: str) -> str:
        for d in "123":
            text = text.replace(d, f"x{d}")
        return text

    return {k: parse_term(expand(v)) for k, v in entries.items()}


# Free modular lattice on three generators, one letter per element
# besides the generators and the bounds.
FM3_LEGEND = _legend(
    {
        "a": "1 v 2",
        "b": "1 v 3",
        "c": "2 v 3",
        "d": "(1 v 2) ^ (1 v 3)",
        "e": "(1 v 2) ^ (2 v 3)",
        "f": "(1 v 3) ^ (2 v 3)",
        "g": "1 v (2 ^ 3)",
        "h": "2 v (1 ^ 3)",
        "w": "3 v (1 ^ 2)",
        "i": "1 ^ (2 v 3)",
        "j": "2 ^ (1 v 3)",
        "k": "3 ^ (1 v 2)",
        "l": "(1 ^ 2) v (1 ^ 3)",
        "m": "(1 ^ 2) v (2 ^ 3)",
        "n": "(1 ^ 3) v (2 ^ 3)",
        "o": "1 ^ 2",
        "p": "1 ^ 3",
        "q": "2 ^ 3",
        "r": "(1 ^ (2 v 3)) v (2 ^ 3)",
        "s": "(2 ^ (1 v 3)) v (1 ^ 3)",
        "t": "(3 ^ (1 v 2)) v (1 ^ 2)",
        "u": "(1 ^ 2) v (2 ^ 3) v (1 ^ 3)",
        "v": "(1 v 2) ^ (2 v 3) ^ (1 v 3)",
    }
)

# Free distributive lattice on three generators.
FD3_LEGEND = _legend(
    {
        "a": "1 v 2",
        "b": "1 v 3",
        "c": "2 v 3",
        "d": "1 v (2 ^ 3)",
        "e": "2 v (1 ^ 3)",
        "f": "3 v (1 ^ 2)",
        "g": "(1 ^ 2) v (1 ^ 3) v (2 ^ 3)",
        "h": "1 ^ (2 v 3)",
        "i": "2 ^ (1 v 3)",
        "j": "3 ^ (1 v 2)",
        "k": "1 ^ 2",
        "l": "1 ^ 3",
        "m": "2 ^ 3",
    }
)


@dataclass(frozen=True, eq=False)
class FreeLattice:
    """A built free lattice with a witness term per element."""

    lattice: FiniteLattice
    terms: dict[str, LatticeTerm]
    closure: EvaluationClosure | None = None

    def __len__(self) -> int:
        return len(self.lattice)

    def term_lines(self) -> list[str]:
        """``id TAB term`` lines in element order."""
        return [f"{e}\t{self.terms[e]}" for e in self.lattice.elements]


# ------------------------------------------------------------------
# General families
# ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EvaluationClosure:
    """Closed set of evaluation vectors.

    ``vectors[k, c]`` is the value of element *k* at column *c*, as a
    position in the block-diagonal ``meet``/``join`` tables that stack
    every family member; ``column_member[c]`` names the member.
    """

    n: int
    family: tuple[FiniteLattice, ...]
    column_member: np.ndarray
    generators: np.ndarray
    vectors: np.ndarray
    terms: tuple[LatticeTerm, ...]
    meet: np.ndarray
    join: np.ndarray

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def vector_of(self, term: LatticeTerm) -> np.ndarray:
        names = generator_names(self.n)
        assignment = {x: self.generators[i] for i, x in enumerate(names)}
        value = evaluate(term, self.meet, self.join, assignment)
        return np.broadcast_to(value, self.column_member.shape)


def _stack_tables(
    family: Sequence[FiniteLattice],
) -> tuple[list[int], np.ndarray, np.ndarray]:
    offsets = [0]
    for A in family:
        offsets.append(offsets[-1] + len(A))
    total = offsets[-1]
    meet = np.zeros((total, total), dtype=np.int32)
    join = np.zeros((total, total), dtype=np.int32)
    for A, off in zip(family, offsets):
        block = slice(off, off + len(A))
        meet[block, block] = A.meet.astype(np.int32) + off
        join[block, block] = A.join.astype(np.int32) + off
    return offsets, meet, join


def evaluation_closure(
    n: int,
    family: Sequence[FiniteLattice],
    budget: int = DEFAULT_BUDGET,
) -> EvaluationClosure:
    """Close the *n* generator vectors over *family* under ^ and v.

    Raises
    ------
    BudgetExceeded
        The closure grew past *budget* elements.
    """
    if n < 1:
        raise ValueError("need at least one generator")
    if not family:
        raise ValueError("family must be nonempty")
    family = tuple(family)
    offsets, M, J = _stack_tables(family)
    gen_cols, members = [], []
    for m, (A, off) in enumerate(zip(family, offsets)):
        grid = np.array(
            list(itertools.product(range(len(A)), repeat=n)), dtype=np.int32
        )
        gen_cols.append(grid.T + off)
        members.append(np.full(grid.shape[0], m))
    generators = np.concatenate(gen_cols, axis=1)
    column_member = np.concatenate(members)

    rows: list[np.ndarray] = []
    terms: list[LatticeTerm] = []
    seen: dict[bytes, int] = {}

    def add(row: np.ndarray, term: LatticeTerm) -> None:
        key = row.tobytes()
        if key in seen:
            return
        seen[key] = len(rows)
        rows.append(row)
        terms.append(term)
        if len(rows) > budget:
            raise BudgetExceeded("free lattice elements", budget)

    for i, x in enumerate(generator_names(n)):
        add(generators[i], gen(x))
    frontier = list(range(len(rows)))
    rounds = 0
    while frontier:
        rounds += 1
        fresh = []
        known = np.stack(rows)
        for i in frontier:
            for table, op in ((M, meet), (J, join)):
                out = table[rows[i][None, :], known]
                for j in range(out.shape[0]):
                    if out[j].tobytes() in seen:
                        continue
                    add(out[j], op(terms[i], terms[j]))
                    fresh.append(len(rows) - 1)
        log.debug("closure round %d: %d elements", rounds, len(rows))
        frontier = fresh
    return EvaluationClosure(
        n=n,
        family=family,
        column_member=column_member,
        generators=generators,
        vectors=np.stack(rows),
        terms=tuple(terms),
        meet=M,
        join=J,
    )


def collapse(closure: EvaluationClosure, member: int) -> EvaluationClosure:
    """Keep only the columns of one family member and merge the
    elements that become equal (the quotient onto that member's
    variety)."""
    keep = closure.column_member == member
    vectors = closure.vectors[:, keep]
    _, first = np.unique(vectors, axis=0, return_index=True)
    first = np.sort(first)
    return EvaluationClosure(
        n=closure.n,
        family=closure.family,
        column_member=closure.column_member[keep],
        generators=closure.generators[:, keep],
        vectors=vectors[first],
        terms=tuple(closure.terms[i] for i in first),
        meet=closure.meet,
        join=closure.join,
    )


def _legend_ids(
    closure: EvaluationClosure,
    legend: Mapping[str, LatticeTerm],
    strict: bool,
) -> dict[bytes, str]:
    names = generator_names(closure.n)
    entries = {x: gen(x) for x in names}
    entries.update(legend)
    entries["bot"] = meet(*(gen(x) for x in names))
    entries["top"] = join(*(gen(x) for x in names))
    out: dict[bytes, str] = {}
    for letter, term in entries.items():
        key = np.ascontiguousarray(
            closure.vector_of(term), dtype=closure.vectors.dtype
        ).tobytes()
        if key in out:
            if strict:
                raise ConsistencyError(
                    f"legend entries {out[key]!r} and {letter!r} coincide"
                )
            continue
        out[key] = letter
    return out


def closure_lattice(
    closure: EvaluationClosure,
    legend: Mapping[str, LatticeTerm] | None = None,
    strict: bool = False,
) -> FreeLattice:
    """Turn a closure into a lattice ordered pointwise.

    Elements are sorted by the size of their down-set.  With a
    *legend*, elements are named by legend letter (plus ``x1..``,
    ``bot`` and ``top``); *strict* requires every element named
    exactly once.
    """
    V = closure.vectors
    k = V.shape[0]
    M, J = closure.meet, closure.join
    index = {V[i].tobytes(): i for i in range(k)}
    meet_t = np.empty((k, k), dtype=np.int64)
    join_t = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        for table, out in ((M, meet_t), (J, join_t)):
            rows = table[V[i][None, :], V]
            out[i] = [index[r.tobytes()] for r in rows]
    leq = meet_t == np.arange(k)[:, None]
    order = np.lexsort((np.arange(k), leq.sum(axis=0)))
    inverse = np.empty(k, dtype=np.int64)
    inverse[order] = np.arange(k)
    grid = np.ix_(order, order)
    dtype = index_dtype(k)

    named = _legend_ids(closure, legend or {}, strict) if legend else {}
    ids = []
    for pos, i in enumerate(order):
        name = named.get(V[i].tobytes())
        ids.append(name if name is not None else f"e{pos}")
    if strict and len(set(named.values()) & set(ids)) != k:
        raise ConsistencyError("legend does not name every element")
    lattice = FiniteLattice.from_tables(
        ids,
        leq[grid],
        inverse[meet_t[grid]].astype(dtype),
        inverse[join_t[grid]].astype(dtype),
    )
    terms = {ids[pos]: closure.terms[i] for pos, i in enumerate(order)}
    if legend:
        terms.update({e: t for e, t in legend.items() if e in terms})
    return FreeLattice(lattice, terms, closure)


def free_in_family(
    n: int,
    family: Sequence[FiniteLattice],
    budget: int = DEFAULT_BUDGET,
) -> FreeLattice:
    """Lattice generated by ``x1 .. xn`` in the variety of *family*.

    This is the relatively free lattice only when the family
    separates it; nothing here certifies that.
    """
    return closure_lattice(evaluation_closure(n, family, budget))


def free_modular_3() -> FreeLattice:
    """FM(3) over the family {2-element chain, M3}.

    The closure is a 3-generated sublattice of a product of modular
    lattices, hence a quotient of FM(3) with at most 28 elements;
    reaching 28 certifies it is FM(3) itself.

    Raises
    ------
    ConsistencyError
        The closure does not have exactly 28 elements.
    """
    closure = evaluation_closure(3, [chain(2), m3()])
    if len(closure) != 28:
        raise ConsistencyError(
            f"free modular closure has {len(closure)} elements, not 28"
        )
    return closure_lattice(closure, FM3_LEGEND, strict=True)


# ------------------------------------------------------------------
# Free distributive lattices as truth tables
# ------------------------------------------------------------------


def _projections(n: int) -> np.ndarray:
    points = np.arange(1 << n, dtype=np.uint64)
    masks = []
    for i in range(n):
        bits = (points >> np.uint64(i)) & np.uint64(1)
        weights = np.left_shift(np.uint64(1), points)
        masks.append(np.bitwise_or.reduce(np.where(bits == 1, weights, 0)))
    return np.array(masks, dtype=np.uint64)


def _chunks(frontier: np.ndarray, width: int):
    step = max(1, PAIR_CHUNK // max(1, width))
    for start in range(0, frontier.size, step):
        yield frontier[start : start + step]


def monotone_closure(n: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Sorted truth tables of the nonconstant monotone functions of
    *n* variables, as closures of the projections."""
    if not 1 <= n <= 6:
        raise ValueError("truth tables need 1 <= n <= 6")
    known = np.unique(_projections(n))
    frontier = known
    while frontier.size:
        parts = []
        for chunk in _chunks(frontier, known.size):
            parts.append((chunk[:, None] & known[None, :]).ravel())
            parts.append((chunk[:, None] | known[None, :]).ravel())
        cand = np.unique(np.concatenate(parts))
        fresh = np.setdiff1d(cand, known, assume_unique=True)
        known = np.union1d(known, fresh)
        log.debug("FD(%d) closure: %d elements", n, known.size)
        if known.size > budget:
            raise BudgetExceeded("free distributive elements", budget)
        frontier = fresh
    return known


def _popcount(masks: np.ndarray) -> np.ndarray:
    as_bytes = masks.astype(np.uint64).view(np.uint8).reshape(-1, 8)
    return np.unpackbits(as_bytes, axis=1).sum(axis=1)


def dnf_term(mask: int, n: int) -> LatticeTerm:
    """Join of the meets over the minimal true points of *mask*."""
    true = [a for a in range(1 << n) if mask >> a & 1]
    minimal = [a for a in true if not any(b != a and b & a == b for b in true)]
    names = generator_names(n)
    return join(
        *(
            meet(*(gen(names[i]) for i in range(n) if a >> i & 1))
            for a in minimal
        )
    )


def free_distributive(
    n: int,
    budget: int = DEFAULT_BUDGET,
    legend: Mapping[str, LatticeTerm] | None = None,
) -> FreeLattice:
    """FD(n) ordered pointwise, with a disjunctive witness per element.

    Elements are named ``x1 .. xn`` for the generators and otherwise
    by their truth table in hex (``t`` prefix); FD(3) uses
    :data:`FD3_LEGEND` by default.

    Raises
    ------
    BudgetExceeded
        ``n > 5``; use :func:`count_free_distributive` for ``n = 6``.
    """
    if n > MAX_FD_GENERATORS:
        raise BudgetExceeded("free distributive generators", MAX_FD_GENERATORS)
    masks = monotone_closure(n, budget)
    order = np.lexsort((masks, _popcount(masks)))
    masks = masks[order]
    k = masks.size
    by_value = np.argsort(masks)
    sorted_masks = masks[by_value]
    dtype = index_dtype(k)
    leq = np.empty((k, k), dtype=bool)
    meet_t = np.empty((k, k), dtype=dtype)
    join_t = np.empty((k, k), dtype=dtype)
    step = max(1, PAIR_CHUNK // k)
    for start in range(0, k, step):
        rows = masks[start : start + step, None]
        leq[start : start + step] = (rows & ~masks[None, :]) == 0
        for out, values in ((meet_t, rows & masks), (join_t, rows | masks)):
            out[start : start + step] = by_value[
                np.searchsorted(sorted_masks, values)
            ]

    if legend is None and n == 3:
        legend = FD3_LEGEND
    names = generator_names(n)
    gens = [gen(x) for x in names]
    known = {int(m): x for m, x in zip(_projections(n), names)}
    extra = {**(legend or {}), "bot": meet(*gens), "top": join(*gens)}
    for e, t in extra.items():
        known.setdefault(int(_truth_table(t, n)), e)
    width = (1 << n) // 4 or 1
    ids = [known.get(int(m), f"t{int(m):0{width}x}") for m in masks]
    lattice = FiniteLattice.from_tables(ids, leq, meet_t, join_t)
    terms = {e: dnf_term(int(m), n) for e, m in zip(ids, masks)}
    if legend:
        terms.update({e: t for e, t in legend.items() if e in terms})
    terms.update({x: g for x, g in zip(names, gens)})
    return FreeLattice(lattice, terms)


def _truth_table(term: LatticeTerm, n: int) -> np.uint64:
    proj = _projections(n)
    assignment = {x: proj[i] for i, x in enumerate(generator_names(n))}
    return np.uint64(_eval_masks(term, assignment))


def _eval_masks(term: LatticeTerm, assignment: Mapping[str, np.uint64]):
    if term.is_generator:
        return assignment[term.name]
    vals = [_eval_masks(c, assignment) for c in term.children]
    acc = vals[0]
    for v in vals[1:]:
        acc = acc & v if term.op == MEET else acc | v
    return acc


def count_free_distributive(
    n: int, budget: int = DEFAULT_BUDGET, allow_n6: bool = False
) -> int:
    """|FD(n)| without building order tables.

    ``n = 6`` counts pairs ``f0 <= f1`` of monotone functions of five
    variables (constants included) and needs ``allow_n6``.
    """
    if n <= MAX_FD_GENERATORS:
        return int(monotone_closure(n, budget).size)
    if n > 6 or not allow_n6:
        raise BudgetExceeded("free distributive generators", MAX_FD_GENERATORS)
    five = monotone_closure(5, budget)
    full = np.uint64((1 << 32) - 1)
    funcs = np.concatenate([[np.uint64(0)], five, [full]]).astype(np.uint64)
    total = 0
    for chunk in _chunks(funcs, funcs.size):
        total += int(((chunk[:, None] & ~funcs[None, :] & full) == 0).sum())
    log.info("counted %d monotone functions of 6 variables", total)
    return total - 2


def fd_count_report(
    ns: Sequence[int], budget: int = DEFAULT_BUDGET, allow_n6: bool = False
) -> list[str]:
    """``computed vs published`` lines, flagging disagreements."""
    lines = []
    for n in ns:
        computed = count_free_distributive(n, budget, allow_n6)
        published = PUBLISHED_FD_COUNTS.get(n)
        line = f"n={n} computed={computed} published={published}"
        if published is not None and published != computed:
            line += " DISCREPANCY"
        lines.append(line)
    return lines
