"""Unique-complement extensions and interval insertion.

Two constructions live here.

* One-point extension: adjoin a fresh ``u`` to a finite lattice
  ``K`` with ``a ^ u = 0`` and ``a v u = 1`` for a chosen interior
  ``a``, giving a partial lattice ``Q``.  The lattice freely
  generated by ``Q`` is infinite in general, so it is explored
  syntactically up to a depth cap with :class:`FreeExtension`.
* Interval insertion: replace a prime interval ``[x, y]`` of a host
  lattice by the interior of a bounded lattice ``K``.

Terms over ``Q`` are ordinary :class:`LatticeTerm` values whose
leaves are element ids of ``Q``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from lattice_workbench.errors import (
    BudgetExceeded,
    ConsistencyError,
    ExtensionError,
    LatticeCheckFailure,
    TermError,
    UnknownElementError,
)
from lattice_workbench.order import (
    FiniteLattice,
    FinitePoset,
    build_lattice,
    build_poset,
    dedekind_macneille,
    induced_poset,
    is_isomorphic,
    poset_from_relation,
    sublattice_generated,
)
from lattice_workbench.properties import Verdict, complements_of
from lattice_workbench.terms import (
    GEN,
    JOIN,
    MEET,
    LatticeTerm,
    gen,
    join,
    meet,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000
BOUNDS_TABLE_DEPTH = 2


# ------------------------------------------------------------------
# Partial lattices
# ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PartialLattice:
    """A poset with partially defined, commutative meet and join.

    ``meets`` and ``joins`` store both orientations of every defined
    pair.  ``adjoined`` lists ids that are not part of the base
    lattice.
    """

    poset: FinitePoset
    meets: dict[tuple[str, str], str]
    joins: dict[tuple[str, str], str]
    adjoined: frozenset[str] = frozenset()

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    def __len__(self) -> int:
        return len(self.poset)

    def is_leq(self, x: str, y: str) -> bool:
        return self.poset.is_leq(x, y)

    def meet_of(self, x: str, y: str) -> str | None:
        return self.meets.get((x, y))

    def join_of(self, x: str, y: str) -> str | None:
        return self.joins.get((x, y))

    @property
    def base(self) -> tuple[str, ...]:
        return tuple(e for e in self.elements if e not in self.adjoined)


def _symmetric(pairs: Iterable[tuple[str, str, str]]) -> dict:
    out = {}
    for x, y, z in pairs:
        out[(x, y)] = z
        out[(y, x)] = z
    return out


def _comparable_ops(
    poset: FinitePoset,
) -> tuple[list[tuple[str, str, str]], list[tuple[str, str, str]]]:
    meets, joins = [], []
    for x in poset.elements:
        for y in poset.elements:
            if poset.is_leq(x, y):
                meets.append((x, y, x))
                joins.append((x, y, y))
    return meets, joins


@dataclass(frozen=True)
class ExtensionSpec:
    K: FiniteLattice
    a: str
    u: str = "u"


def adjoin_unique_complement(spec: ExtensionSpec) -> PartialLattice:
    """``Q = K + {u}`` with ``0 < u < 1``, ``a ^ u = 0``, ``a v u = 1``.

    ``K`` keeps all its operations; pairs involving ``u`` are defined
    only when comparable, besides the two new ones.

    Raises
    ------
    ExtensionError
        ``a`` is a bound of ``K`` or ``u`` is already an id of ``K``.
    """
    K, a, u = spec.K, spec.a, spec.u
    K.position(a)
    if a in (K.bottom, K.top):
        raise ExtensionError(f"{a!r} must not be a bound of K")
    if u in K.poset.index:
        raise ExtensionError(f"{u!r} is already an element of K")
    if complements_of(K, a):
        log.warning(
            "%r already has complements %s; u will not be its only one",
            a,
            ", ".join(complements_of(K, a)),
        )
    elements = (*K.elements, u)
    covers = [*K.covers, (K.bottom, u), (u, K.top)]
    poset = build_poset(elements, covers)
    meets, joins = _comparable_ops(poset)
    for x in K.elements:
        for y in K.elements:
            meets.append((x, y, K.meet_of(x, y)))
            joins.append((x, y, K.join_of(x, y)))
    meets.append((a, u, K.bottom))
    joins.append((a, u, K.top))
    return PartialLattice(
        poset, _symmetric(meets), _symmetric(joins), frozenset([u])
    )


def weak_partial(L: FiniteLattice) -> PartialLattice:
    """Drop the bounds of *L*, keeping the operations that stay inside."""
    if len(L) < 3:
        raise ExtensionError("need at least three elements")
    keep = [e for e in L.elements if e not in (L.bottom, L.top)]
    poset = induced_poset(L.poset, keep)
    inside = set(keep)
    meets, joins = [], []
    for x in keep:
        for y in keep:
            m, j = L.meet_of(x, y), L.join_of(x, y)
            if m in inside:
                meets.append((x, y, m))
            if j in inside:
                joins.append((x, y, j))
    return PartialLattice(poset, _symmetric(meets), _symmetric(joins))


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def bounded_completion(P: PartialLattice) -> FiniteLattice:
    """Adjoin a new bottom and top to *P* and complete by cuts."""
    taken = set(P.elements)
    bot, top = _fresh("0", taken), _fresh("1", taken | {"0"})
    elements = (bot, *P.elements, top)
    pairs = [*P.poset.covers]
    pairs += [(bot, e) for e in P.elements] + [(e, top) for e in P.elements]
    completed, _ = dedekind_macneille(build_poset(elements, pairs))
    return completed


# ------------------------------------------------------------------
# Order of the lattice freely generated by a partial lattice
# ------------------------------------------------------------------


class FreeExtension:
    """Memoised order on terms over a partial lattice ``Q``.

    Every term ``t`` carries the ideal ``I(t)`` of ``Q``-elements
    forced below it and the filter ``F(t)`` forced above it, as
    bitmasks.  ``I(p)`` is the down-set of ``p``; meets intersect
    ideals and joins take the union closed under the defined joins
    of ``Q``; filters are dual.  Then ``s <= t`` holds when some
    element of ``Q`` lies between them, or by Whitman's clauses.
    """

    def __init__(self, Q: PartialLattice) -> None:
        self.Q = Q
        n = len(Q)
        self._pos = Q.poset.index
        leq = Q.poset.leq
        self._down = [_mask(np.flatnonzero(leq[:, i])) for i in range(n)]
        self._up = [_mask(np.flatnonzero(leq[i])) for i in range(n)]
        self._join_pairs = self._defined(Q.joins)
        self._meet_pairs = self._defined(Q.meets)
        self._ideal: dict[LatticeTerm, int] = {}
        self._filter: dict[LatticeTerm, int] = {}
        self._memo: dict[tuple[LatticeTerm, LatticeTerm], bool] = {}

    def _defined(self, table: Mapping) -> list[tuple[int, int, int]]:
        pos = self._pos
        return [
            (pos[x], pos[y], pos[z])
            for (x, y), z in table.items()
            if pos[x] < pos[y]
        ]

    def _close(self, mask: int, pairs, cone) -> int:
        while True:
            grown = mask
            for x, y, z in pairs:
                if grown >> x & 1 and grown >> y & 1 and not grown >> z & 1:
                    grown |= cone[z]
            if grown == mask:
                return mask
            mask = grown

    def _leaf(self, t: LatticeTerm) -> int:
        try:
            return self._pos[t.name]
        except KeyError:
            raise UnknownElementError(t.name) from None

    def ideal(self, t: LatticeTerm) -> int:
        hit = self._ideal.get(t)
        if hit is not None:
            return hit
        if t.op == GEN:
            mask = self._down[self._leaf(t)]
        elif t.op == MEET:
            mask = -1
            for c in t.children:
                mask &= self.ideal(c)
        else:
            mask = 0
            for c in t.children:
                mask |= self.ideal(c)
            mask = self._close(mask, self._join_pairs, self._down)
        self._ideal[t] = mask
        return mask

    def filter(self, t: LatticeTerm) -> int:
        hit = self._filter.get(t)
        if hit is not None:
            return hit
        if t.op == GEN:
            mask = self._up[self._leaf(t)]
        elif t.op == JOIN:
            mask = -1
            for c in t.children:
                mask &= self.filter(c)
        else:
            mask = 0
            for c in t.children:
                mask |= self.filter(c)
            mask = self._close(mask, self._meet_pairs, self._up)
        self._filter[t] = mask
        return mask

    def leq(self, s: LatticeTerm, t: LatticeTerm) -> bool:
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
        if s.op == GEN and t.op == GEN:
            return self.Q.is_leq(s.name, t.name)
        if self.filter(s) & self.ideal(t):
            return True
        if s.op == JOIN:
            return all(self._leq(c, t) for c in s.children)
        if t.op == MEET:
            return all(self._leq(s, c) for c in t.children)
        if s.op == GEN:
            return any(self._leq(s, c) for c in t.children)
        if t.op == GEN:
            return any(self._leq(c, t) for c in s.children)
        return any(self._leq(c, t) for c in s.children) or any(
            self._leq(s, c) for c in t.children
        )

    def k_bounds(self, A: LatticeTerm) -> tuple[str, str]:
        """Largest base element below *A* and smallest above it.

        Raises
        ------
        ConsistencyError
            The candidates have no greatest (or least) member.
        """
        base = self.Q.base
        below = [k for k in base if self.leq(gen(k), A)]
        above = [k for k in base if self.leq(A, gen(k))]
        lower = [k for k in below if all(self.Q.is_leq(b, k) for b in below)]
        upper = [k for k in above if all(self.Q.is_leq(k, b) for b in above)]
        if len(lower) != 1 or len(upper) != 1:
            raise ConsistencyError(f"no unique base bounds for {A}")
        return lower[0], upper[0]

    def is_complementary(self, x: LatticeTerm, y: LatticeTerm) -> bool:
        Q = self.Q
        bottom = [e for e in Q.elements if Q.poset.leq[Q.poset.index[e]].all()]
        top = [e for e in Q.elements if Q.poset.leq[:, Q.poset.index[e]].all()]
        if not bottom or not top:
            raise ExtensionError("partial lattice is not bounded")
        return self.leq(meet(x, y), gen(bottom[0])) and self.leq(
            gen(top[0]), join(x, y)
        )


def _mask(positions: Iterable[int]) -> int:
    out = 0
    for i in positions:
        out |= 1 << int(i)
    return out


def fq_leq(A: LatticeTerm, B: LatticeTerm, Q: PartialLattice) -> bool:
    return FreeExtension(Q).leq(A, B)


def k_bounds(A: LatticeTerm, Q: PartialLattice) -> tuple[str, str]:
    return FreeExtension(Q).k_bounds(A)


# ------------------------------------------------------------------
# Depth-capped audit
# ------------------------------------------------------------------


@dataclass
class ExtensionAudit:
    """Evidence gathered from terms of bounded depth."""

    depth: int
    terms_enumerated: int
    representatives: list[LatticeTerm]
    depth_of: dict[LatticeTerm, int]
    pairs: list[tuple[LatticeTerm, LatticeTerm]]
    bounds: dict[LatticeTerm, tuple[str, str]] = field(default_factory=dict)
    order: FinitePoset | None = None

    def complements_of(self, x: LatticeTerm) -> list[LatticeTerm]:
        out = [b for a, b in self.pairs if a == x]
        out += [a for a, b in self.pairs if b == x]
        return out


def enumerate_classes(
    fq: FreeExtension, depth: int, budget: int = DEFAULT_BUDGET
) -> tuple[list[LatticeTerm], dict[LatticeTerm, int], int]:
    """Representatives of the classes built by ``depth`` binary steps.

    Returns the representatives in discovery order, the step at
    which each appeared and the number of candidate terms formed.
    """
    reps = [gen(e) for e in fq.Q.elements]
    depth_of = {r: 0 for r in reps}
    frontier = list(reps)
    formed = 0
    for d in range(1, depth + 1):
        fresh = []
        snapshot = list(reps)
        for s in frontier:
            for t in snapshot:
                if s == t:
                    continue
                for cand in (meet(s, t), join(s, t)):
                    formed += 1
                    if formed > budget:
                        raise BudgetExceeded("extension terms", budget)
                    if any(fq.equal(cand, r) for r in reps):
                        continue
                    reps.append(cand)
                    depth_of[cand] = d
                    fresh.append(cand)
        log.debug("depth %d: %d classes", d, len(reps))
        if not fresh:
            break
        frontier = fresh
    return reps, depth_of, formed


def complement_audit(
    Q: PartialLattice, depth: int, budget: int = DEFAULT_BUDGET
) -> ExtensionAudit:
    """All complementary pairs among classes reached within *depth*."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    fq = FreeExtension(Q)
    reps, depth_of, formed = enumerate_classes(fq, depth, budget)
    pairs = [
        (reps[i], reps[j])
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
        if fq.is_complementary(reps[i], reps[j])
    ]
    bounds = {
        r: fq.k_bounds(r)
        for r in reps
        if depth_of[r] <= BOUNDS_TABLE_DEPTH
    }
    leq = np.array([[fq.leq(s, t) for t in reps] for s in reps])
    order = poset_from_relation([str(r) for r in reps], leq)
    log.info(
        "depth %d: %d classes, %d complementary pairs",
        depth,
        len(reps),
        len(pairs),
    )
    return ExtensionAudit(
        depth, formed, reps, depth_of, pairs, bounds, order
    )


def complements_in_fq(
    x: LatticeTerm, Q: PartialLattice, depth: int, budget: int = DEFAULT_BUDGET
) -> list[LatticeTerm]:
    """Class representatives complementary to *x* within the cap."""
    fq = FreeExtension(Q)
    reps, _, _ = enumerate_classes(fq, depth, budget)
    return [r for r in reps if fq.is_complementary(x, r)]


# ------------------------------------------------------------------
# Interval insertion
# ------------------------------------------------------------------


def insert_into_interval(
    host: FiniteLattice, x: str, y: str, K: FiniteLattice
) -> FiniteLattice:
    """Replace the prime interval ``[x, y]`` of *host* by ``K``.

    The new order is the transitive closure of the host order, the
    order of ``K`` on its interior and ``x < k < y`` for every
    interior ``k``.  Interior ids clashing with host ids get a
    ``'`` suffix.

    Raises
    ------
    ExtensionError
        ``x`` is not covered by ``y``, ``K`` is trivial, or the
        result is not a lattice.
    """
    if not host.poset.cover_matrix[host.position(x), host.position(y)]:
        raise ExtensionError(f"{x!r} is not covered by {y!r}")
    if len(K) < 2:
        raise ExtensionError("K needs at least two elements")
    taken = set(host.elements)
    rename = {}
    for k in K.elements:
        if k in (K.bottom, K.top):
            continue
        rename[k] = _fresh(k, taken)
        taken.add(rename[k])
    interior = list(rename.values())
    pairs = list(host.covers)
    pairs += [
        (rename[lo], rename[hi])
        for lo, hi in K.covers
        if lo in rename and hi in rename
    ]
    pairs += [(x, k) for k in interior] + [(k, y) for k in interior]
    try:
        return build_lattice([*host.elements, *interior], pairs)
    except LatticeCheckFailure as exc:
        raise ExtensionError(
            f"inserted order is not a lattice: {exc}"
        ) from exc


def check_generated_copy(
    big: FiniteLattice,
    P: PartialLattice,
    image: Mapping[str, str] | None = None,
) -> Verdict:
    """Does the copy of *P* inside *big* generate its bounded completion?

    *image* maps elements of *P* to ids of *big* (identity when
    omitted).  The image must be a relative sublattice: the order is
    preserved and reflected, and a meet or join of two image points
    lies in the image exactly when *P* defines it.

    Raises
    ------
    ExtensionError
        The image is incomplete or not a relative sublattice.
    """
    image = dict(image) if image is not None else {e: e for e in P.elements}
    missing = [e for e in P.elements if e not in image]
    if missing:
        raise ExtensionError(f"image misses {', '.join(missing)}")
    for e in image.values():
        big.position(e)
    back = {v: k for k, v in image.items()}
    for p in P.elements:
        for q in P.elements:
            ip, iq = image[p], image[q]
            if P.is_leq(p, q) != big.is_leq(ip, iq):
                raise ExtensionError(f"order differs on ({p}, {q})")
            for ours, theirs in (
                (P.meet_of(p, q), big.meet_of(ip, iq)),
                (P.join_of(p, q), big.join_of(ip, iq)),
            ):
                expected = back.get(theirs)
                if ours != expected:
                    raise ExtensionError(
                        f"({p}, {q}) is not a relative sublattice pair"
                    )
    generated = sublattice_generated(big, image.values())
    expected = bounded_completion(P)
    if is_isomorphic(generated, expected):
        return Verdict(True, note=f"{len(generated)} elements")
    return Verdict(
        False,
        tuple(generated.elements),
        f"generated {len(generated)} elements, expected {len(expected)}",
    )
