"""Property deciders for finite lattices.

Every decider returns a :class:`Verdict`: a truth value plus, when
false, the first counter-witness in element order, given as element
ids so it can be replayed against the defining law.  Most checks
are vectorised over the meet/join tables; the ones that range over
triples loop over the first coordinate to bound memory.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np

from lattice_workbench.errors import (
    BudgetExceeded,
    LatticeWorkbenchError,
    TermError,
)
from lattice_workbench.order import FiniteLattice
from lattice_workbench.terms import LatticeTerm, _name_key, evaluate

log = logging.getLogger(__name__)

IDENTITY_ASSIGNMENT_LIMIT = 10**8
IDENTITY_MAX_VARIABLES = 6
IDENTITY_CHUNK = 1 << 18


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decider; falsy when the property fails."""

    holds: bool
    witness: tuple[str, ...] | None = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


TRUE = Verdict(True)


def _fail(L: FiniteLattice, *positions: int, note: str = "") -> Verdict:
    return Verdict(False, tuple(L.elements[int(i)] for i in positions), note)


def _tables(L: FiniteLattice) -> tuple[np.ndarray, np.ndarray]:
    return L.meet.astype(np.int64), L.join.astype(np.int64)


# ------------------------------------------------------------------
# Complements
# ------------------------------------------------------------------


def complement_matrix(L: FiniteLattice) -> np.ndarray:
    """``C[x, y]`` iff ``x ^ y = 0`` and ``x v y = 1``."""
    return (L.meet == L.bottom_index) & (L.join == L.top_index)


def complements_of(L: FiniteLattice, x: str) -> tuple[str, ...]:
    """Complements of *x* in element order."""
    row = complement_matrix(L)[L.position(x)]
    return tuple(L.elements[i] for i in np.flatnonzero(row))


def complement_map(L: FiniteLattice) -> dict[str, tuple[str, ...]]:
    C = complement_matrix(L)
    return {
        e: tuple(L.elements[j] for j in np.flatnonzero(C[i]))
        for i, e in enumerate(L.elements)
    }


def relative_complements(
    L: FiniteLattice, x: str, y: str, a: str
) -> tuple[str, ...]:
    """Elements ``b`` with ``a ^ b = x`` and ``a v b = y``."""
    xi, yi, ai = L.position(x), L.position(y), L.position(a)
    if not (L.leq[xi, ai] and L.leq[ai, yi]):
        raise LatticeWorkbenchError(f"{a!r} is not in [{x!r}, {y!r}]")
    hits = (L.meet[ai] == xi) & (L.join[ai] == yi)
    return tuple(L.elements[i] for i in np.flatnonzero(hits))


def is_complemented(L: FiniteLattice) -> Verdict:
    counts = complement_matrix(L).sum(axis=1)
    bad = np.flatnonzero(counts == 0)
    return _fail(L, bad[0], note="no complement") if bad.size else TRUE


def is_uniquely_complemented(L: FiniteLattice) -> Verdict:
    counts = complement_matrix(L).sum(axis=1)
    bad = np.flatnonzero(counts != 1)
    if bad.size:
        i = bad[0]
        return _fail(L, i, note=f"{int(counts[i])} complements")
    return TRUE


def has_at_most_one_complement(L: FiniteLattice) -> Verdict:
    counts = complement_matrix(L).sum(axis=1)
    bad = np.flatnonzero(counts > 1)
    if bad.size:
        i = bad[0]
        return _fail(L, i, note=f"{int(counts[i])} complements")
    return TRUE


def _relative_counts(L: FiniteLattice, a: int) -> np.ndarray:
    """``counts[x, y]`` = number of relative complements of *a*."""
    n = len(L)
    counts = np.zeros((n, n), dtype=np.int64)
    np.add.at(counts, (L.meet[a].astype(np.int64), L.join[a]), 1)
    return counts


def is_relatively_complemented(L: FiniteLattice) -> Verdict:
    """Every ``a`` in every interval ``[x, y]`` has a relative complement.

    The witness is ``(x, y, a)``.
    """
    for a in range(len(L)):
        need = L.leq[:, a][:, None] & L.leq[a, :][None, :]
        missing = need & (_relative_counts(L, a) == 0)
        if missing.any():
            x, y = np.argwhere(missing)[0]
            return _fail(L, x, y, a)
    return TRUE


def is_sectionally_complemented(L: FiniteLattice) -> Verdict:
    """Every interval ``[0, y]`` is complemented; witness ``(y, a)``."""
    b = L.bottom_index
    for y in range(len(L)):
        below = np.flatnonzero(L.leq[:, y])
        for a in below:
            if not ((L.meet[a, below] == b) & (L.join[a, below] == y)).any():
                return _fail(L, y, a)
    return TRUE


def relative_complements_unique(L: FiniteLattice) -> Verdict:
    """No element has two relative complements in one interval."""
    for a in range(len(L)):
        extra = _relative_counts(L, a) > 1
        if extra.any():
            x, y = np.argwhere(extra)[0]
            return _fail(L, x, y, a)
    return TRUE


def complements_relativize(L: FiniteLattice) -> Verdict:
    """A complemented ``a`` has a relative complement in every
    interval containing it; witness ``(x, y, a)``."""
    C = complement_matrix(L)
    for a in np.flatnonzero(C.any(axis=1)):
        need = L.leq[:, a][:, None] & L.leq[a, :][None, :]
        missing = need & (_relative_counts(L, a) == 0)
        if missing.any():
            x, y = np.argwhere(missing)[0]
            return _fail(L, x, y, a)
    return TRUE


# ------------------------------------------------------------------
# Equational laws
# ------------------------------------------------------------------


def is_modular(L: FiniteLattice) -> Verdict:
    """``x <= z`` implies ``x v (y ^ z) = (x v y) ^ z``.

    The witness is the first failing ``(x, y, z)``.
    """
    M, J = _tables(L)
    cols = np.arange(len(L))[None, :]
    for x in range(len(L)):
        lhs = J[x, M]
        rhs = M[J[x][:, None], cols]
        bad = (lhs != rhs) & L.leq[x][None, :]
        if bad.any():
            y, z = np.argwhere(bad)[0]
            return _fail(L, x, y, z)
    return TRUE


def is_distributive(L: FiniteLattice) -> Verdict:
    """``x ^ (y v z) = (x ^ y) v (x ^ z)`` for all triples."""
    M, J = _tables(L)
    for x in range(len(L)):
        lhs = M[x, J]
        rhs = J[M[x][:, None], M[x][None, :]]
        bad = lhs != rhs
        if bad.any():
            y, z = np.argwhere(bad)[0]
            return _fail(L, x, y, z)
    return TRUE


def is_join_distributive(L: FiniteLattice) -> Verdict:
    """The dual law ``x v (y ^ z) = (x v y) ^ (x v z)``."""
    M, J = _tables(L)
    for x in range(len(L)):
        lhs = J[x, M]
        rhs = M[J[x][:, None], J[x][None, :]]
        bad = lhs != rhs
        if bad.any():
            y, z = np.argwhere(bad)[0]
            return _fail(L, x, y, z)
    return TRUE


def is_semimodular(L: FiniteLattice) -> Verdict:
    """Upper semimodularity: ``a ^ b`` covered by ``a`` implies ``b``
    covered by ``a v b``.  Witness ``(a, b)``."""
    C = L.poset.cover_matrix
    M, J = _tables(L)
    rows = np.arange(len(L))[:, None]
    hyp = C[M, rows]
    concl = C[rows.T, J]
    bad = hyp & ~concl
    if bad.any():
        a, b = np.argwhere(bad)[0]
        return _fail(L, a, b)
    return TRUE


def is_chain(L: FiniteLattice) -> Verdict:
    bad = ~(L.leq | L.leq.T)
    if bad.any():
        x, y = np.argwhere(bad)[0]
        return _fail(L, x, y)
    return TRUE


def relative_pseudocomplement(L: FiniteLattice, a: str, b: str) -> str | None:
    """Greatest ``c`` with ``a ^ c <= b``, or ``None``."""
    ai, bi = L.position(a), L.position(b)
    cand = np.flatnonzero(L.leq[L.meet[ai].astype(np.int64), bi])
    j = L.bottom_index
    for c in cand:
        j = L.join[j, c]
    return L.elements[j] if j in set(cand.tolist()) else None


def is_heyting(L: FiniteLattice) -> Verdict:
    """Every pair has a relative pseudocomplement; witness ``(a, b)``."""
    M, J = _tables(L)
    n = len(L)
    for a in range(n):
        # cand[b, c]: a ^ c <= b
        cand = L.leq[M[a][None, :], np.arange(n)[:, None]]
        best = np.full(n, L.bottom_index, dtype=np.int64)
        for c in range(n):
            best = np.where(cand[:, c], J[best, c], best)
        ok = cand[np.arange(n), best]
        if not ok.all():
            return _fail(L, a, np.flatnonzero(~ok)[0])
    return TRUE


# ------------------------------------------------------------------
# Atoms and width
# ------------------------------------------------------------------


def is_atomic(L: FiniteLattice) -> Verdict:
    """Every nonzero element lies above an atom."""
    atoms = [L.position(a) for a in L.atoms]
    covered = (
        L.leq[atoms].any(axis=0) if atoms else np.zeros(len(L), bool)
    )
    covered[L.bottom_index] = True
    bad = np.flatnonzero(~covered)
    return _fail(L, bad[0]) if bad.size else Verdict(True, note="finite")


def is_dually_atomic(L: FiniteLattice) -> Verdict:
    coatoms = [L.position(a) for a in L.coatoms]
    covered = (
        L.leq[:, coatoms].any(axis=1)
        if coatoms
        else np.zeros(len(L), bool)
    )
    covered[L.top_index] = True
    bad = np.flatnonzero(~covered)
    return _fail(L, bad[0]) if bad.size else Verdict(True, note="finite")


def _join_of_atoms_below(L: FiniteLattice) -> np.ndarray:
    acc = np.full(len(L), L.bottom_index, dtype=np.int64)
    for a in (L.position(e) for e in L.atoms):
        acc = np.where(L.leq[a], L.join[acc, a], acc)
    return acc


def is_atomistic(L: FiniteLattice) -> Verdict:
    """Every element is the join of the atoms below it."""
    bad = np.flatnonzero(_join_of_atoms_below(L) != np.arange(len(L)))
    return _fail(L, bad[0]) if bad.size else TRUE


def is_dually_atomistic(L: FiniteLattice) -> Verdict:
    acc = np.full(len(L), L.top_index, dtype=np.int64)
    for c in (L.position(e) for e in L.coatoms):
        acc = np.where(L.leq[:, c], L.meet[acc, c], acc)
    bad = np.flatnonzero(acc != np.arange(len(L)))
    return _fail(L, bad[0]) if bad.size else TRUE


def top_is_join_of_atoms(L: FiniteLattice) -> Verdict:
    joined = _join_of_atoms_below(L)[L.top_index]
    if joined == L.top_index:
        return TRUE
    return _fail(L, joined, note="join of all atoms")


def width(L: FiniteLattice) -> int:
    """Size of a largest antichain.

    By Dilworth's theorem this is ``n`` minus a maximum matching in
    the bipartite graph of strict comparabilities.
    """
    n = len(L)
    G = nx.Graph()
    left = [("lo", i) for i in range(n)]
    G.add_nodes_from(left)
    G.add_nodes_from(("hi", j) for j in range(n))
    lo, hi = np.nonzero(L.leq & ~np.eye(n, dtype=bool))
    G.add_edges_from(
        (("lo", i), ("hi", j)) for i, j in zip(lo.tolist(), hi.tolist())
    )
    matching = nx.bipartite.hopcroft_karp_matching(G, top_nodes=left)
    return n - len(matching) // 2


# ------------------------------------------------------------------
# Forbidden sublattices
# ------------------------------------------------------------------


@dataclass(frozen=True)
class ForbiddenSublattice:
    """A copy of M3 or N5: ``embedding`` maps fixture ids to ids of L."""

    kind: str
    embedding: dict[str, str]

    @property
    def elements(self) -> tuple[str, ...]:
        return tuple(self.embedding.values())


def _find_m3(L: FiniteLattice) -> ForbiddenSublattice | None:
    M, J = _tables(L)
    incomparable = ~(L.leq | L.leq.T)
    for a, b in np.argwhere(np.triu(incomparable)):
        m, j = M[a, b], J[a, b]
        hits = (
            (M[a] == m) & (M[b] == m) & (J[a] == j) & (J[b] == j)
            & incomparable[a] & incomparable[b]
        )
        hits[: b + 1] = False
        if hits.any():
            c = np.flatnonzero(hits)[0]
            ids = [L.elements[int(i)] for i in (m, a, b, c, j)]
            return ForbiddenSublattice("M3", dict(zip("0abc1", ids)))
    return None


def _find_n5(L: FiniteLattice) -> ForbiddenSublattice | None:
    M, J = _tables(L)
    strict = L.leq & ~np.eye(len(L), dtype=bool)
    for x, z in np.argwhere(strict):
        hits = (J[x] == J[z]) & (M[x] == M[z])
        if hits.any():
            y = np.flatnonzero(hits)[0]
            ids = [L.elements[int(i)] for i in (M[x, y], x, y, z, J[x, y])]
            return ForbiddenSublattice("N5", dict(zip("0xyz1", ids)))
    return None


def forbidden_sublattice(L: FiniteLattice) -> ForbiddenSublattice | None:
    """A sublattice isomorphic to M3 (searched first) or N5, if any."""
    return _find_m3(L) or _find_n5(L)


# ------------------------------------------------------------------
# Orthocomplementation
# ------------------------------------------------------------------


def orthocomplementations(L: FiniteLattice) -> list[dict[str, str]]:
    """Every involutive antitone complement-choice map.

    Elements are assigned in element order and candidates tried in
    element order, so the list order is deterministic.
    """
    n = len(L)
    C = complement_matrix(L)
    choices = [np.flatnonzero(C[i]).tolist() for i in range(n)]
    leq = L.leq
    found: list[dict[str, str]] = []
    o = [-1] * n

    def consistent(x: int, y: int) -> bool:
        for u in range(n):
            if o[u] < 0:
                continue
            for p, q in ((x, y), (y, x)):
                if leq[p, u] and not leq[o[u], q]:
                    return False
                if leq[u, p] and not leq[q, o[u]]:
                    return False
        return True

    def search(i: int) -> None:
        while i < n and o[i] >= 0:
            i += 1
        if i == n:
            found.append({L.elements[k]: L.elements[o[k]] for k in range(n)})
            return
        for y in choices[i]:
            if o[y] >= 0 or (y == i and n > 1):
                continue
            if not consistent(i, y):
                continue
            o[i], o[y] = y, i
            search(i + 1)
            o[i] = o[y] = -1

    search(0)
    log.debug("%d orthocomplementations found", len(found))
    return found


def _check_orthocomplementation(L: FiniteLattice, o: dict[str, str]) -> None:
    if set(o) != set(L.elements):
        raise LatticeWorkbenchError("map must cover every element")
    C = complement_matrix(L)
    for x, y in o.items():
        xi, yi = L.position(x), L.position(y)
        if not C[xi, yi]:
            raise LatticeWorkbenchError(f"{y!r} is not a complement of {x!r}")
        if o.get(y) != x:
            raise LatticeWorkbenchError(f"map is not an involution at {x!r}")
    for lo, hi in L.covers:
        if not L.is_leq(o[hi], o[lo]):
            raise LatticeWorkbenchError(
                f"map is not order-reversing on {lo!r} <= {hi!r}"
            )


def is_orthomodular(L: FiniteLattice, o: dict[str, str]) -> Verdict:
    """``x <= y`` implies ``y = x v (y ^ o(x))``; witness ``(x, y)``.

    Raises
    ------
    LatticeWorkbenchError
        *o* is not an orthocomplementation of *L*.
    """
    _check_orthocomplementation(L, o)
    M, J = _tables(L)
    perp = np.array([L.position(o[e]) for e in L.elements])
    n = len(L)
    rhs = J[np.arange(n)[:, None], M[:, perp].T]
    bad = L.leq & (rhs != np.arange(n)[None, :])
    if bad.any():
        x, y = np.argwhere(bad)[0]
        return _fail(L, x, y)
    return TRUE


# ------------------------------------------------------------------
# Identities, regular elements, homomorphisms
# ------------------------------------------------------------------


def satisfies_identity(
    L: FiniteLattice,
    lhs: LatticeTerm,
    rhs: LatticeTerm,
    limit: int = IDENTITY_ASSIGNMENT_LIMIT,
) -> Verdict:
    """Evaluate ``lhs = rhs`` under every assignment into *L*.

    The witness lists the element assigned to each variable, in
    variable order; the note names the variables.
    """
    names = sorted(lhs.generators | rhs.generators, key=_name_key)
    k = len(names)
    if k > IDENTITY_MAX_VARIABLES:
        raise TermError(f"identity has {k} variables, at most 6 allowed")
    n = len(L)
    total = n**k
    if total > limit:
        raise BudgetExceeded("identity assignments", limit)
    M, J = _tables(L)
    for start in range(0, total, IDENTITY_CHUNK):
        idx = np.arange(start, min(total, start + IDENTITY_CHUNK))
        digits = {}
        rest = idx
        for name in reversed(names):
            digits[name] = rest % n
            rest = rest // n
        left = evaluate(lhs, M, J, digits)
        right = evaluate(rhs, M, J, digits)
        bad = np.flatnonzero(np.broadcast_to(left != right, idx.shape))
        if bad.size:
            i = bad[0]
            return Verdict(
                False,
                tuple(L.elements[int(digits[v][i])] for v in names),
                "variables " + " ".join(names),
            )
    return TRUE


def regular_elements(L: FiniteLattice) -> tuple[str, ...]:
    """Elements ``a`` such that ``a ^ x = 0 = a ^ y`` implies
    ``a ^ (x v y) = 0``."""
    b = L.bottom_index
    out = []
    for a in range(len(L)):
        zero = np.flatnonzero(L.meet[a] == b)
        joined = L.join[np.ix_(zero, zero)]
        if (L.meet[a][joined] == b).all():
            out.append(L.elements[a])
    return tuple(out)


def join_prime_elements(L: FiniteLattice) -> list[int]:
    """Positions ``p != 0`` with ``p <= x v y`` only if ``p <= x`` or
    ``p <= y``."""
    J = L.join.astype(np.int64)
    primes = []
    for p in range(len(L)):
        if p == L.bottom_index:
            continue
        up = L.leq[p]
        if not (up[J] & ~(up[:, None] | up[None, :])).any():
            primes.append(p)
    return primes


def two_valued_homomorphisms(L: FiniteLattice) -> list[dict[str, int]]:
    """Lattice homomorphisms of *L* onto the 2-element chain.

    On a finite lattice each is ``x -> [p <= x]`` for a join-prime
    ``p``; the preimage of 1 is a prime filter, of 0 a prime ideal.
    """
    return [
        {e: int(L.leq[p, i]) for i, e in enumerate(L.elements)}
        for p in join_prime_elements(L)
    ]


def prime_ideals(L: FiniteLattice) -> list[tuple[str, ...]]:
    return [
        tuple(e for e, v in hom.items() if v == 0)
        for hom in two_valued_homomorphisms(L)
    ]


def homomorphisms_separate(L: FiniteLattice) -> Verdict:
    """Every nonzero element is sent to 1 by some homomorphism."""
    primes = join_prime_elements(L)
    hit = (
        L.leq[primes].any(axis=0) if primes else np.zeros(len(L), bool)
    )
    hit[L.bottom_index] = True
    bad = np.flatnonzero(~hit)
    return _fail(L, bad[0]) if bad.size else TRUE


# ------------------------------------------------------------------
# Conditions on uniquely complemented lattices
# ------------------------------------------------------------------


UC_CONDITIONS = (
    "uc-de-morgan-comparable",
    "uc-de-morgan-incomparable",
    "uc-antitone",
    "uc-huntington",
    "uc-regular-below-nonzero",
    "uc-cover-atom",
)


def uc_conditions(L: FiniteLattice) -> dict[str, Verdict]:
    """Conditions known to force distributivity of a uniquely
    complemented lattice, each decided on *L*.

    Returns an empty dict when *L* is not uniquely complemented.
    The key ``uc-inequality-zero`` records whether
    ``(x v ((x v y) ^ x')) ^ y`` vanishes for every ``x`` and every
    ``y > 0``; it is reported, never used as a hypothesis.
    """
    if not is_uniquely_complemented(L):
        return {}
    n = len(L)
    M, J = _tables(L)
    comp = complement_matrix(L).argmax(axis=1)
    b, t = L.bottom_index, L.top_index
    comparable = L.leq | L.leq.T
    de_morgan = comp[M] == J[comp[:, None], comp[None, :]]
    out: dict[str, Verdict] = {}

    def record(name: str, bad: np.ndarray) -> None:
        if bad.any():
            out[name] = _fail(L, *np.argwhere(bad)[0])
        else:
            out[name] = TRUE

    record("uc-de-morgan-comparable", comparable & ~de_morgan)
    record("uc-de-morgan-incomparable", ~comparable & ~de_morgan)
    record("uc-antitone", L.leq & ~L.leq[comp[None, :], comp[:, None]])
    below_comp = L.leq[np.arange(n)[None, :], comp[:, None]]
    record("uc-huntington", (M == b) & ~below_comp)

    regular = {L.position(e) for e in regular_elements(L)} - {b}
    nonzero = [x for x in range(n) if x != b]
    missing = [
        x for x in nonzero if not any(L.leq[r, x] for r in regular)
    ]
    out["uc-regular-below-nonzero"] = (
        _fail(L, missing[0]) if missing else TRUE
    )

    atoms = {L.position(e) for e in L.atoms}
    covers = L.poset.cover_matrix
    bad_cover = None
    for a, c in np.argwhere(covers):
        r = M[c, comp[a]]
        if r not in atoms or M[a, r] != b or J[a, r] != c:
            bad_cover = (a, c)
            break
    out["uc-cover-atom"] = _fail(L, *bad_cover) if bad_cover else TRUE

    expr = M[J[np.arange(n)[:, None], M[J, comp[:, None]]], np.arange(n)]
    positive = np.ones(n, dtype=bool)
    positive[b] = False
    vanishes = bool((expr[:, positive] == b).all())
    out["uc-inequality-zero"] = Verdict(
        vanishes, note="evaluated only; direction not asserted"
    )
    return out


def complementation_profile(L: FiniteLattice) -> dict[str, Verdict | int]:
    """The complementation deciders plus atomicity and width."""
    return {
        "complemented": is_complemented(L),
        "uniquely-complemented": is_uniquely_complemented(L),
        "relatively-complemented": is_relatively_complemented(L),
        "sectionally-complemented": is_sectionally_complemented(L),
        "atomic": is_atomic(L),
        "dually-atomic": is_dually_atomic(L),
        "width": width(L),
    }


# ------------------------------------------------------------------
# Report
# ------------------------------------------------------------------


@dataclass
class PropertyReport:
    """Every decided property of one lattice.

    ``verdicts`` is ordered; :attr:`facts` flattens it, plus the
    derived classes, into a name -> bool map.
    """

    name: str
    size: int
    verdicts: dict[str, Verdict]
    width: int
    complements: dict[str, tuple[str, ...]]
    regular: tuple[str, ...]
    orthocomplementations: list[dict[str, str]]
    orthomodular: list[Verdict]
    two_valued_homs: list[dict[str, int]]
    forbidden: ForbiddenSublattice | None
    uc: dict[str, Verdict] = field(default_factory=dict)

    @cached_property
    def facts(self) -> dict[str, bool]:
        facts = {k: bool(v) for k, v in self.verdicts.items()}
        facts["orthocomplementable"] = bool(self.orthocomplementations)
        facts["orthomodular"] = any(self.orthomodular)
        facts["boolean"] = facts["distributive"] and facts["complemented"]
        facts["no-forbidden-sublattice"] = self.forbidden is None
        facts["has-two-valued-hom"] = bool(self.two_valued_homs)
        facts["finite-width"] = True
        facts["acc"] = facts["dcc"] = True
        facts["bounded"] = facts["lattice"] = True
        facts["residuated"] = facts["heyting"]
        for name in UC_CONDITIONS:
            facts[name] = bool(self.uc.get(name, False))
        return facts


def classify(L: FiniteLattice, name: str = "L") -> PropertyReport:
    """Run every decider on *L*."""
    verdicts = {
        "modular": is_modular(L),
        "distributive": is_distributive(L),
        "join-distributive": is_join_distributive(L),
        "semimodular": is_semimodular(L),
        "complemented": is_complemented(L),
        "uniquely-complemented": is_uniquely_complemented(L),
        "at-most-one-complement": has_at_most_one_complement(L),
        "relatively-complemented": is_relatively_complemented(L),
        "relative-complements-unique": relative_complements_unique(L),
        "complements-relativize": complements_relativize(L),
        "sectionally-complemented": is_sectionally_complemented(L),
        "atomic": is_atomic(L),
        "dually-atomic": is_dually_atomic(L),
        "atomistic": is_atomistic(L),
        "dually-atomistic": is_dually_atomistic(L),
        "top-join-of-atoms": top_is_join_of_atoms(L),
        "chain": is_chain(L),
        "heyting": is_heyting(L),
        "homs-separate": homomorphisms_separate(L),
    }
    orthos = orthocomplementations(L)
    report = PropertyReport(
        name=name,
        size=len(L),
        verdicts=verdicts,
        width=width(L),
        complements=complement_map(L),
        regular=regular_elements(L),
        orthocomplementations=orthos,
        orthomodular=[is_orthomodular(L, o) for o in orthos],
        two_valued_homs=two_valued_homomorphisms(L),
        forbidden=forbidden_sublattice(L),
        uc=uc_conditions(L),
    )
    facts = report.facts
    if facts["distributive"] != facts["no-forbidden-sublattice"]:
        log.error("distributivity and M3/N5 search disagree on %s", name)
    return report
