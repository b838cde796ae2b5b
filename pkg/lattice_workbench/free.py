"""Word problem and canonical forms in the free lattice FL(X).

Comparison follows Whitman's recursion:

* ``s1 v ... v sk <= t``  iff every ``si <= t``;
* ``s <= t1 ^ ... ^ tk``  iff ``s <= tj`` for every ``j``;
* ``x <= y`` for generators iff ``x == y``;
* ``x <= t1 v ... v tk`` iff ``x <= tj`` for some ``j``;
* ``s1 ^ ... ^ sk <= y`` iff ``si <= y`` for some ``i``;
* ``s1 ^ ... ^ sk <= t1 v ... v tm`` iff some ``si <= t`` or
  ``s <= tj`` for some ``j`` (condition W).

Canonical forms are the unique shortest terms: a join is canonical
when its joinands are canonical, pairwise incomparable, and no
meetand of a joinand lies below the whole join (dually for meets).
"""

from __future__ import annotations

import logging

from lattice_workbench.errors import BudgetExceeded, TermError
from lattice_workbench.terms import (
    GEN,
    JOIN,
    MEET,
    LatticeTerm,
    gen,
    generator_names,
    is_generator_name,
    join,
    meet,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 2_000_000


def _check_alphabet(*terms: LatticeTerm) -> None:
    kinds = {is_generator_name(g) for t in terms for g in t.generators}
    if len(kinds) > 1:
        raise TermError(
            "terms mix generators x1, x2, ... with named constants"
        )


class WhitmanOrder:
    """Memoised order of the free lattice.

    One instance may be shared across many comparisons; the memo
    only grows, and every cached answer is a fact about FL(X).
    """

    def __init__(self) -> None:
        self._memo: dict[tuple[LatticeTerm, LatticeTerm], bool] = {}

    def __len__(self) -> int:
        return len(self._memo)

    def leq(self, s: LatticeTerm, t: LatticeTerm) -> bool:
        _check_alphabet(s, t)
        try:
            return self._leq(s, t)
        except RecursionError:
            raise TermError("terms nested too deeply to compare") from None

    def equal(self, s: LatticeTerm, t: LatticeTerm) -> bool:
        return self.leq(s, t) and self.leq(t, s)

    def _leq(self, s: LatticeTerm, t: LatticeTerm) -> bool:
        if s == t:
            return True
        key = (s, t)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = self._decide(s, t)
        return hit

    def _decide(self, s: LatticeTerm, t: LatticeTerm) -> bool:
        if s.op == JOIN:
            return all(self._leq(c, t) for c in s.children)
        if t.op == MEET:
            return all(self._leq(s, c) for c in t.children)
        if s.op == GEN and t.op == GEN:
            return False
        if s.op == GEN:
            return any(self._leq(s, c) for c in t.children)
        if t.op == GEN:
            return any(self._leq(c, t) for c in s.children)
        # meet below join
        return any(self._leq(c, t) for c in s.children) or any(
            self._leq(s, c) for c in t.children
        )


def free_leq(
    s: LatticeTerm, t: LatticeTerm, order: WhitmanOrder | None = None
) -> bool:
    """True iff ``s <= t`` holds in every lattice."""
    return (order or WhitmanOrder()).leq(s, t)


def free_equal(
    s: LatticeTerm, t: LatticeTerm, order: WhitmanOrder | None = None
) -> bool:
    order = order or WhitmanOrder()
    return order.leq(s, t) and order.leq(t, s)


# ------------------------------------------------------------------
# Canonical form
# ------------------------------------------------------------------


def _flatten(op: str, terms) -> list[LatticeTerm]:
    out: list[LatticeTerm] = []
    for t in terms:
        for c in t.children if t.op == op else (t,):
            if c not in out:
                out.append(c)
    return out


def _reduce(
    op: str, parts: list[LatticeTerm], order: WhitmanOrder
) -> LatticeTerm:
    dual = MEET if op == JOIN else JOIN

    def below(a: LatticeTerm, b: LatticeTerm) -> bool:
        return order._leq(a, b) if op == JOIN else order._leq(b, a)

    while True:
        for i, ti in enumerate(parts):
            if any(j != i and below(ti, tj) for j, tj in enumerate(parts)):
                del parts[i]
                break
        else:
            if len(parts) == 1:
                return parts[0]
            whole = join(*parts) if op == JOIN else meet(*parts)
            for i, ti in enumerate(parts):
                if ti.op != dual:
                    continue
                c = next((c for c in ti.children if below(c, whole)), None)
                if c is not None:
                    rest = parts[:i] + parts[i + 1 :]
                    parts = _flatten(op, [*rest, c])
                    break
            else:
                return whole


def canonical_form(
    t: LatticeTerm, order: WhitmanOrder | None = None
) -> LatticeTerm:
    """The shortest term equal to *t* in the free lattice.

    Equal inputs give identical outputs, and the result is never
    larger than *t*.
    """
    _check_alphabet(t)
    order = order or WhitmanOrder()
    memo: dict[LatticeTerm, LatticeTerm] = {}

    def walk(u: LatticeTerm) -> LatticeTerm:
        if u.op == GEN:
            return u
        if u in memo:
            return memo[u]
        kids = [walk(c) for c in u.children]
        result = _reduce(u.op, _flatten(u.op, kids), order)
        memo[u] = result
        return result

    try:
        return walk(t)
    except RecursionError:
        raise TermError("term nested too deeply to canonicalise") from None


def is_canonical(t: LatticeTerm, order: WhitmanOrder | None = None) -> bool:
    return canonical_form(t, order) == t


# ------------------------------------------------------------------
# Counting
# ------------------------------------------------------------------


ALTERNATION = "alternation"
BINARY = "binary"
DEPTH_MEASURES = (ALTERNATION, BINARY)


def _combine(
    op,
    s: LatticeTerm,
    t: LatticeTerm,
    order: WhitmanOrder,
    spent: list[int],
    budget: int,
) -> LatticeTerm:
    spent[0] += 1
    if spent[0] > budget:
        raise BudgetExceeded("canonical term pairs", budget)
    return canonical_form(op(s, t), order)


def _binary_step(
    known: set[LatticeTerm],
    frontier: list[LatticeTerm],
    order: WhitmanOrder,
    spent: list[int],
    budget: int,
) -> list[LatticeTerm]:
    """One binary meet or join over pairs touching *frontier*."""
    newest = set(frontier)
    everything = sorted(known)
    fresh: list[LatticeTerm] = []
    for s in frontier:
        for t in everything:
            if s == t or (t in newest and t < s):
                continue
            for op in (meet, join):
                c = _combine(op, s, t, order, spent, budget)
                if c not in known:
                    known.add(c)
                    fresh.append(c)
    return fresh


def _semilattice_closure(
    op,
    base: list[LatticeTerm],
    order: WhitmanOrder,
    spent: list[int],
    budget: int,
) -> set[LatticeTerm]:
    """Every ``op`` of a nonempty finite subset of *base*."""
    closure = set(base)
    frontier = list(base)
    while frontier:
        fresh = []
        for s in frontier:
            for t in base:
                c = _combine(op, s, t, order, spent, budget)
                if c not in closure:
                    closure.add(c)
                    fresh.append(c)
        frontier = sorted(fresh)
    return closure


def canonical_strata(
    n: int,
    depth: int,
    budget: int = DEFAULT_BUDGET,
    measure: str = ALTERNATION,
) -> list[set[LatticeTerm]]:
    """Distinct FL(n) elements representable within *depth*.

    With ``measure="alternation"`` depth is :attr:`LatticeTerm.depth`,
    the number of operator alternations on a root-to-leaf path:
    stratum ``d`` is the union of the meet closure and the join
    closure of stratum ``d - 1``.  With ``measure="binary"`` every
    binary meet or join is one step: stratum ``d`` adds ``s ^ t`` and
    ``s v t`` for ``s, t`` in stratum ``d - 1``.  Elements are stored
    as canonical forms.  *budget* caps the number of meets and joins
    formed.

    Returns
    -------
    list of set
        ``strata[d]`` for ``d = 0 .. depth``; later strata stop
        growing once the closure is reached.
    """
    if n < 1 or depth < 0:
        raise ValueError("need n >= 1 and depth >= 0")
    if measure not in DEPTH_MEASURES:
        raise ValueError(f"unknown depth measure {measure!r}")
    order = WhitmanOrder()
    known = {gen(x) for x in generator_names(n)}
    strata = [set(known)]
    frontier = sorted(known)
    spent = [0]
    for d in range(1, depth + 1):
        if measure == BINARY:
            frontier = sorted(
                _binary_step(known, frontier, order, spent, budget)
            )
        else:
            previous = sorted(known)
            for op in (meet, join):
                known |= _semilattice_closure(
                    op, previous, order, spent, budget
                )
        log.debug(
            "%s stratum %d: %d terms, %d memo entries",
            measure,
            d,
            len(known),
            len(order),
        )
        strata.append(set(known))
    return strata


def count_canonical_terms(
    n: int,
    depth: int,
    budget: int = DEFAULT_BUDGET,
    measure: str = ALTERNATION,
) -> int:
    """Number of FL(n) elements representable within *depth*.

    See :func:`canonical_strata` for the two depth measures.
    """
    return len(canonical_strata(n, depth, budget, measure)[-1])
