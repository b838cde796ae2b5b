"""Finite posets and lattices.

A poset is stored as a dense boolean matrix ``leq`` indexed by
element position, so ``leq[i, j]`` means element *i* is below
element *j*.  Element ids are opaque strings; positions are an
internal detail and every witness reported to callers uses ids.

All structures are immutable after construction and every
operation here is a pure function.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from lattice_workbench.errors import (
    LatticeCheckFailure,
    LatticeWorkbenchError,
    UnknownElementError,
)

log = logging.getLogger(__name__)


def index_dtype(n: int) -> type:
    """Smallest signed integer dtype able to index *n* positions."""
    if n < 2**7:
        return np.int8
    if n < 2**15:
        return np.int16
    return np.int32


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


# ------------------------------------------------------------------
# Posets
# ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FinitePoset:
    """Ground set plus a reflexive, antisymmetric, transitive order.

    Build instances with :func:`build_poset` or
    :func:`poset_from_relation`; the constructor trusts its input.
    """

    elements: tuple[str, ...]
    leq: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        n = len(self.elements)
        if self.leq.shape != (n, n):
            raise LatticeWorkbenchError(
                f"order matrix has shape {self.leq.shape}, expected {(n, n)}"
            )
        if self.leq.flags.writeable:
            _readonly(self.leq)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def position(self, element: str) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise UnknownElementError(element) from None

    def is_leq(self, x: str, y: str) -> bool:
        return bool(self.leq[self.position(x), self.position(y)])

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        """Transitive reduction of the order as a boolean matrix."""
        n = len(self)
        strict = self.leq & ~np.eye(n, dtype=bool)
        s = strict.astype(np.float32)
        through = (s @ s) > 0
        return _readonly(strict & ~through)

    @cached_property
    def covers(self) -> tuple[tuple[str, str], ...]:
        """Cover pairs ``(lower, upper)`` in row-major position order."""
        lo, hi = np.nonzero(self.cover_matrix)
        return tuple(
            (self.elements[i], self.elements[j])
            for i, j in zip(lo.tolist(), hi.tolist())
        )

    @cached_property
    def heights(self) -> np.ndarray:
        """Length of the longest chain from a minimal element."""
        below = self.leq.sum(axis=0)
        covers = self.cover_matrix
        h = np.zeros(len(self), dtype=np.int64)
        for j in np.argsort(below, kind="stable"):
            preds = np.flatnonzero(covers[:, j])
            if preds.size:
                h[j] = h[preds].max() + 1
        return _readonly(h)


def _closure(leq: np.ndarray) -> np.ndarray:
    for k in range(leq.shape[0]):
        leq |= np.outer(leq[:, k], leq[k, :])
    return leq


def _check_ids(elements: Sequence[str]) -> tuple[str, ...]:
    elements = tuple(str(e) for e in elements)
    if not elements:
        raise LatticeWorkbenchError("a poset needs at least one element")
    seen: set[str] = set()
    for e in elements:
        if e in seen:
            raise LatticeWorkbenchError(f"duplicate element id {e!r}")
        seen.add(e)
    return elements


def build_poset(
    elements: Sequence[str],
    covers: Iterable[tuple[str, str]],
) -> FinitePoset:
    """Poset generated by a list of ``(lower, upper)`` pairs.

    The pairs need not be covers: the order is the
    reflexive-transitive closure of the pairs, and the stored cover
    list is recomputed as its transitive reduction.

    Raises
    ------
    UnknownElementError
        A pair mentions an id missing from *elements*.
    LatticeCheckFailure
        ``not-antisymmetric`` when the closure contains a cycle; the
        witness is the first pair ``(a, b)`` in element order with
        ``a <= b <= a``.
    """
    elements = _check_ids(elements)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    leq = np.eye(n, dtype=bool)
    for lo, hi in covers:
        for e in (lo, hi):
            if e not in index:
                raise UnknownElementError(e)
        leq[index[lo], index[hi]] = True
    _closure(leq)
    _check_antisymmetric(elements, leq)
    return FinitePoset(elements, leq)


def _check_antisymmetric(elements: Sequence[str], leq: np.ndarray) -> None:
    both = np.triu(leq & leq.T, k=1)
    if both.any():
        i, j = np.argwhere(both)[0]
        raise LatticeCheckFailure(
            "not-antisymmetric", (elements[i], elements[j])
        )


def poset_from_relation(
    elements: Sequence[str],
    leq: np.ndarray,
) -> FinitePoset:
    """Validate an explicit order matrix and wrap it as a poset.

    The diagonal is forced true.  A missing transitive pair is
    reported as ``not-transitive`` with witness ``(x, y, z)`` where
    ``x <= y <= z`` but not ``x <= z``.
    """
    elements = _check_ids(elements)
    leq = np.array(leq, dtype=bool, copy=True)
    n = len(elements)
    if leq.shape != (n, n):
        raise LatticeWorkbenchError("order matrix does not match elements")
    np.fill_diagonal(leq, True)
    _check_antisymmetric(elements, leq)
    for y in range(n):
        missing = leq[:, y][:, None] & leq[y, :][None, :] & ~leq
        if missing.any():
            x, z = np.argwhere(missing)[0]
            raise LatticeCheckFailure(
                "not-transitive", (elements[x], elements[y], elements[z])
            )
    return FinitePoset(elements, leq)


def induced_poset(p: FinitePoset, ids: Iterable[str]) -> FinitePoset:
    """Subposet on *ids*, kept in the order of ``p.elements``."""
    wanted = {p.elements[p.position(e)] for e in ids}
    idx = [i for i, e in enumerate(p.elements) if e in wanted]
    sub = np.array(p.leq[np.ix_(idx, idx)])
    return FinitePoset(tuple(p.elements[i] for i in idx), sub)


# ------------------------------------------------------------------
# Lattices
# ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A poset with total meet and join tables.

    ``meet[i, j]`` and ``join[i, j]`` hold element positions.
    """

    poset: FinitePoset
    meet: np.ndarray
    join: np.ndarray
    bottom: str
    top: str

    def __post_init__(self) -> None:
        for table in (self.meet, self.join):
            if table.flags.writeable:
                _readonly(table)

    @classmethod
    def from_tables(
        cls,
        elements: Sequence[str],
        leq: np.ndarray,
        meet: np.ndarray,
        join: np.ndarray,
    ) -> FiniteLattice:
        """Wrap precomputed tables without re-deriving them."""
        poset = FinitePoset(tuple(elements), leq)
        bottom = int(np.flatnonzero(leq.all(axis=1))[0])
        top = int(np.flatnonzero(leq.all(axis=0))[0])
        return cls(
            poset,
            meet,
            join,
            poset.elements[bottom],
            poset.elements[top],
        )

    def __len__(self) -> int:
        return len(self.poset)

    def __repr__(self) -> str:
        return f"FiniteLattice(size={len(self)}, bottom={self.bottom!r})"

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def covers(self) -> tuple[tuple[str, str], ...]:
        return self.poset.covers

    def position(self, element: str) -> int:
        return self.poset.position(element)

    @cached_property
    def bottom_index(self) -> int:
        return self.position(self.bottom)

    @cached_property
    def top_index(self) -> int:
        return self.position(self.top)

    def is_leq(self, x: str, y: str) -> bool:
        return self.poset.is_leq(x, y)

    def meet_of(self, x: str, y: str) -> str:
        return self.elements[self.meet[self.position(x), self.position(y)]]

    def join_of(self, x: str, y: str) -> str:
        return self.elements[self.join[self.position(x), self.position(y)]]

    @cached_property
    def atoms(self) -> tuple[str, ...]:
        col = self.poset.cover_matrix[self.bottom_index]
        return tuple(self.elements[i] for i in np.flatnonzero(col))

    @cached_property
    def coatoms(self) -> tuple[str, ...]:
        row = self.poset.cover_matrix[:, self.top_index]
        return tuple(self.elements[i] for i in np.flatnonzero(row))


def lattice_from_poset(p: FinitePoset) -> FiniteLattice:
    """Compute meet and join tables of a poset that is a lattice.

    For each pair the candidate meet is the common lower bound with
    the largest down-set; it is the meet exactly when every other
    common lower bound lies below it.  Joins are dual.

    Raises
    ------
    LatticeCheckFailure
        ``no-join`` or ``no-meet`` for the first failing pair
        ``(x, y)`` in element order (join checked before meet).
    """
    n = len(p)
    leq = p.leq
    below = leq.sum(axis=0)
    above = leq.sum(axis=1)
    dtype = index_dtype(n)
    meet = np.empty((n, n), dtype=dtype)
    join = np.empty((n, n), dtype=dtype)
    no_meet = np.zeros((n, n), dtype=bool)
    no_join = np.zeros((n, n), dtype=bool)
    for x in range(n):
        lower = leq[:, x][:, None] & leq
        m = np.where(lower, below[:, None], -1).argmax(axis=0)
        no_meet[x] = ~lower.any(axis=0) | (lower & ~leq[:, m]).any(axis=0)
        meet[x] = m
        upper = leq[x, :][:, None] & leq.T
        j = np.where(upper, above[:, None], -1).argmax(axis=0)
        no_join[x] = ~upper.any(axis=0) | (upper & ~leq[j, :].T).any(axis=0)
        join[x] = j
    failed = np.triu(no_meet | no_join)
    if failed.any():
        i, j = np.argwhere(failed)[0]
        kind = "no-join" if no_join[i, j] else "no-meet"
        raise LatticeCheckFailure(kind, (p.elements[i], p.elements[j]))
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    return FiniteLattice(p, meet, join, p.elements[bottom], p.elements[top])


def build_lattice(
    elements: Sequence[str],
    covers: Iterable[tuple[str, str]],
) -> FiniteLattice:
    """Shorthand for ``lattice_from_poset(build_poset(...))``."""
    return lattice_from_poset(build_poset(elements, covers))


def _induced(L: FiniteLattice, idx: np.ndarray) -> FiniteLattice:
    idx = np.asarray(idx, dtype=np.int64)
    pos = np.full(len(L), -1, dtype=np.int64)
    pos[idx] = np.arange(idx.size)
    grid = np.ix_(idx, idx)
    meet = pos[L.meet[grid]]
    join = pos[L.join[grid]]
    if (meet < 0).any() or (join < 0).any():
        raise LatticeWorkbenchError("subset is not closed under meet/join")
    dtype = index_dtype(idx.size)
    return FiniteLattice.from_tables(
        [L.elements[i] for i in idx],
        np.array(L.leq[grid]),
        meet.astype(dtype),
        join.astype(dtype),
    )


def interval(L: FiniteLattice, x: str, y: str) -> FiniteLattice:
    """The sublattice ``[x, y] = {z : x <= z <= y}``."""
    xi, yi = L.position(x), L.position(y)
    if not L.leq[xi, yi]:
        raise LatticeWorkbenchError(f"{x!r} is not below {y!r}")
    return _induced(L, np.flatnonzero(L.leq[xi] & L.leq[:, yi]))


def sublattice_generated(L: FiniteLattice, S: Iterable[str]) -> FiniteLattice:
    """Least subset containing *S* closed under meet and join."""
    mask = np.zeros(len(L), dtype=bool)
    for e in S:
        mask[L.position(e)] = True
    if not mask.any():
        raise LatticeWorkbenchError("generating set is empty")
    while True:
        idx = np.flatnonzero(mask)
        grid = np.ix_(idx, idx)
        grown = mask.copy()
        grown[L.meet[grid].ravel()] = True
        grown[L.join[grid].ravel()] = True
        if (grown == mask).all():
            return _induced(L, idx)
        mask = grown


def direct_product(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    """Componentwise product; element ids are ``"(a,b)"``.

    Raises
    ------
    LatticeWorkbenchError
        Two pairs print to the same id, which can happen when factor
        ids contain commas.
    """
    n1, n2 = len(L1), len(L2)
    elements = [f"({a},{b})" for a in L1.elements for b in L2.elements]
    if len(set(elements)) < len(elements):
        clash = next(e for e in elements if elements.count(e) > 1)
        raise LatticeWorkbenchError(f"product ids collide on {clash!r}")
    leq = np.kron(L1.leq.astype(np.int8), L2.leq.astype(np.int8)) > 0
    dtype = index_dtype(n1 * n2)

    def table(t1: np.ndarray, t2: np.ndarray) -> np.ndarray:
        t1 = t1.astype(np.int64)[:, None, :, None]
        t2 = t2.astype(np.int64)[None, :, None, :]
        return (t1 * n2 + t2).reshape(n1 * n2, n1 * n2).astype(dtype)

    return FiniteLattice.from_tables(
        elements,
        leq,
        table(L1.meet, L2.meet),
        table(L1.join, L2.join),
    )


def permute(L: FiniteLattice, order: Sequence[int]) -> FiniteLattice:
    """Same lattice with element positions listed in *order*."""
    order = np.asarray(order, dtype=np.int64)
    if sorted(order.tolist()) != list(range(len(L))):
        raise LatticeWorkbenchError("order is not a permutation")
    inverse = np.empty_like(order)
    inverse[order] = np.arange(order.size)
    grid = np.ix_(order, order)
    dtype = L.meet.dtype
    return FiniteLattice.from_tables(
        [L.elements[i] for i in order],
        np.array(L.leq[grid]),
        inverse[L.meet[grid]].astype(dtype),
        inverse[L.join[grid]].astype(dtype),
    )


def relabel(L: FiniteLattice, mapping: Mapping[str, str]) -> FiniteLattice:
    """Rename elements; ids missing from *mapping* keep their name."""
    elements = [mapping.get(e, e) for e in L.elements]
    _check_ids(elements)
    return FiniteLattice.from_tables(
        elements,
        np.array(L.leq),
        np.array(L.meet),
        np.array(L.join),
    )


# ------------------------------------------------------------------
# Dedekind-MacNeille completion
# ------------------------------------------------------------------


def _members(mask: int, elements: Sequence[str]) -> list[str]:
    return [e for i, e in enumerate(elements) if mask >> i & 1]


def dedekind_macneille(
    p: FinitePoset,
) -> tuple[FiniteLattice, dict[str, str]]:
    """Completion by cuts and the embedding of *p* into it.

    Cuts are the sets equal to the lower bounds of their upper
    bounds; on a finite poset they are exactly the intersections of
    principal down-sets, together with the whole ground set.  A
    principal cut keeps the id of its generator; any other cut is
    named after its members, e.g. ``{a,b}``.

    Returns
    -------
    tuple
        The lattice of cuts ordered by inclusion, and the map
        ``x -> id of the cut of x``.
    """
    n = len(p)
    principal = []
    for j in range(n):
        col = np.flatnonzero(p.leq[:, j])
        principal.append(sum(1 << int(i) for i in col))
    cuts = {(1 << n) - 1, *principal}
    frontier = list(cuts)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(cuts):
                c = a & b
                if c not in cuts:
                    cuts.add(c)
                    fresh.append(c)
        frontier = fresh
    ordered = sorted(cuts, key=lambda c: (bin(c).count("1"), c))
    log.debug("completion of %d elements has %d cuts", n, len(ordered))

    owner = {mask: p.elements[j] for j, mask in enumerate(principal)}
    taken = set(p.elements)
    names = []
    for c in ordered:
        if c in owner:
            names.append(owner[c])
            continue
        name = "{" + ",".join(_members(c, p.elements)) + "}"
        while name in taken:
            name += "'"
        taken.add(name)
        names.append(name)

    k = len(ordered)
    leq = np.zeros((k, k), dtype=bool)
    for i, a in enumerate(ordered):
        for j, b in enumerate(ordered):
            leq[i, j] = (a & b) == a
    completion = lattice_from_poset(FinitePoset(tuple(names), leq))
    embedding = {p.elements[j]: owner[m] for j, m in enumerate(principal)}
    return completion, embedding


# ------------------------------------------------------------------
# Canonical codes
# ------------------------------------------------------------------


def _refine(
    colors: list[int],
    ups: list[list[int]],
    downs: list[list[int]],
) -> list[int]:
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[u] for u in ups[v])),
                tuple(sorted(colors[d] for d in downs[v])),
            )
            for v in range(len(colors))
        ]
        rank = {s: r for r, s in enumerate(sorted(set(sigs)))}
        refined = [rank[s] for s in sigs]
        if len(rank) == len(set(colors)):
            return refined
        colors = refined


def _leaves(
    colors: list[int],
    ups: list[list[int]],
    downs: list[list[int]],
) -> Iterator[list[int]]:
    colors = _refine(colors, ups, downs)
    n = len(colors)
    counts = Counter(colors)
    if len(counts) == n:
        yield sorted(range(n), key=colors.__getitem__)
        return
    target = min(c for c, k in counts.items() if k > 1)
    for v in [v for v in range(n) if colors[v] == target]:
        split = [
            2 * c + (1 if c == target and u != v else 0)
            for u, c in enumerate(colors)
        ]
        yield from _leaves(split, ups, downs)


def canonical_labelling(leq: np.ndarray) -> tuple[bytes, list[int]]:
    """Isomorphism-invariant code of an order matrix and its ordering.

    Colour refinement by (down-set, up-set) signatures partitions
    the positions; remaining ties are broken by individualising each
    member of the first non-singleton cell in turn.  The code is the
    smallest packed order matrix over all resulting orderings.
    """
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    ups = [np.flatnonzero(strict[v]).tolist() for v in range(n)]
    downs = [np.flatnonzero(strict[:, v]).tolist() for v in range(n)]
    start = list(zip(strict.sum(axis=0).tolist(), strict.sum(axis=1).tolist()))
    rank = {s: r for r, s in enumerate(sorted(set(start)))}
    header = n.to_bytes(4, "big")
    best: tuple[bytes, list[int]] | None = None
    for order in _leaves([rank[s] for s in start], ups, downs):
        body = np.packbits(leq[np.ix_(order, order)]).tobytes()
        code = header + body
        if best is None or code < best[0]:
            best = (code, order)
    assert best is not None
    return best


def canonical_code(L: FiniteLattice | FinitePoset) -> bytes:
    """Byte string equal for two lattices exactly when isomorphic."""
    return canonical_labelling(L.leq)[0]


def canonical_relabel(L: FiniteLattice) -> FiniteLattice:
    """Isomorphic copy in canonical order with ids ``"0"``, ``"1"``..."""
    order = canonical_labelling(L.leq)[1]
    P = permute(L, order)
    return relabel(P, {e: str(i) for i, e in enumerate(P.elements)})


def is_isomorphic(L1: FiniteLattice, L2: FiniteLattice) -> bool:
    return len(L1) == len(L2) and canonical_code(L1) == canonical_code(L2)
