"""Every finite lattice up to isomorphism, to a size bound.

Two independent strategies build the same classes:

* ``atom-extension`` (primary).  Deleting an atom ``a`` from a
  lattice leaves a lattice, so every lattice on ``k + 1`` elements
  arises from one on ``k`` by adding a new atom.  The new atom lies
  below an up-set ``U = up(M)`` for an antichain ``M`` of nonzero
  elements, and the result is a lattice exactly when ``U`` is
  closed under every meet that is not the bottom.
* ``poset-filter`` (oracle).  Every order on ``k - 2`` inner points,
  bounded by a new bottom and top, is tested for the lattice
  property.  Only practical for ``k <= 6``.

Entries are stored in canonical labelling, sorted by size and then
canonical code.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import networkx as nx
import numpy as np

from lattice_workbench.errors import (
    BudgetExceeded,
    ConsistencyError,
    CorpusFileError,
    CorpusVersionError,
    LatticeCheckFailure,
    LatticeWorkbenchError,
)
from lattice_workbench.fixtures import chain, one_element
from lattice_workbench.formats import format_lattice, parse_lattices
from lattice_workbench.order import (
    FiniteLattice,
    FinitePoset,
    canonical_code,
    canonical_relabel,
    lattice_from_poset,
)

log = logging.getLogger(__name__)

CORPUS_FORMAT_VERSION = 1
DEFAULT_MAX_SIZE = 8
ALLOW_9_MAX_SIZE = 9
ORACLE_MAX_SIZE = 6
DEFAULT_BUDGET = 5_000_000

ATOM_EXTENSION = "atom-extension"
POSET_FILTER = "poset-filter"

# Lattices on k elements, k = 1, 2, ...
KNOWN_COUNTS = (1, 1, 1, 2, 5, 15, 53, 222, 1078)


@dataclass
class Corpus:
    """Lattices on ``1 .. n`` elements, one per isomorphism class."""

    n: int
    entries: list[tuple[bytes, FiniteLattice]]
    strategy: str = ATOM_EXTENSION
    created: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(
            timespec="seconds"
        )
    )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def codes(self) -> list[bytes]:
        return [code for code, _ in self.entries]

    def counts(self) -> dict[int, int]:
        """Number of classes per element count, ``1 .. n``."""
        sizes = Counter(len(L) for _, L in self.entries)
        return {k: sizes.get(k, 0) for k in range(1, self.n + 1)}

    def of_size(self, k: int) -> list[FiniteLattice]:
        return [L for _, L in self.entries if len(L) == k]

    def find(self, L: FiniteLattice) -> FiniteLattice | None:
        code = canonical_code(L)
        for c, entry in self.entries:
            if c == code:
                return entry
        return None


def _check_bound(n: int, allow_9: bool) -> None:
    if n < 1:
        raise ValueError("size bound must be at least 1")
    cap = ALLOW_9_MAX_SIZE if allow_9 else DEFAULT_MAX_SIZE
    if n > cap:
        raise BudgetExceeded("lattice size", cap)


def _entry(L: FiniteLattice) -> tuple[bytes, FiniteLattice]:
    C = canonical_relabel(L)
    return canonical_code(C), C


# ------------------------------------------------------------------
# Atom extension
# ------------------------------------------------------------------


def _add_atom(L: FiniteLattice, up: np.ndarray) -> FiniteLattice:
    n = len(L)
    leq = np.zeros((n + 1, n + 1), dtype=bool)
    leq[:n, :n] = L.leq
    leq[n, n] = True
    leq[L.bottom_index, n] = True
    leq[n, :n] = up
    return lattice_from_poset(FinitePoset((*L.elements, "new"), leq))


def atom_extensions(
    L: FiniteLattice, budget: int = DEFAULT_BUDGET
) -> list[FiniteLattice]:
    """Lattices obtained from *L* by adding one new atom."""
    n = len(L)
    b = L.bottom_index
    nonzero = [i for i in range(n) if i != b]
    graph = nx.DiGraph()
    graph.add_nodes_from(nonzero)
    pos = L.poset.index
    graph.add_edges_from(
        (pos[lo], pos[hi]) for lo, hi in L.covers if pos[lo] != b
    )
    out = []
    for count, antichain in enumerate(nx.antichains(graph)):
        if count > budget:
            raise BudgetExceeded("antichains", budget)
        if not antichain:
            continue
        up = L.leq[antichain].any(axis=0)
        inside = np.flatnonzero(up)
        meets = L.meet[np.ix_(inside, inside)]
        if not (up[meets] | (meets == b)).all():
            continue
        out.append(_add_atom(L, up))
    return out


def _by_atom_extension(n: int, budget: int) -> list[FiniteLattice]:
    levels = [[one_element()]]
    if n >= 2:
        levels.append([chain(2)])
    for k in range(3, n + 1):
        seen: dict[bytes, FiniteLattice] = {}
        for L in levels[-1]:
            for M in atom_extensions(L, budget):
                code, C = _entry(M)
                seen.setdefault(code, C)
        log.debug("%d lattices on %d elements", len(seen), k)
        levels.append(list(seen.values()))
    return [L for level in levels for L in level]


# ------------------------------------------------------------------
# Poset filter
# ------------------------------------------------------------------


def _inner_orders(k: int):
    """Every partial order on ``k`` points as a boolean matrix."""
    pairs = list(itertools.combinations(range(k), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        leq = np.eye(k, dtype=bool)
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                leq[i, j] = True
            elif c == 2:
                leq[j, i] = True
        if ((leq.astype(np.int64) @ leq.astype(np.int64) > 0) <= leq).all():
            yield leq


def _by_poset_filter(n: int) -> list[FiniteLattice]:
    if n > ORACLE_MAX_SIZE:
        raise BudgetExceeded("poset-filter size", ORACLE_MAX_SIZE)
    found = [one_element()]
    if n >= 2:
        found.append(chain(2))
    for size in range(3, n + 1):
        k = size - 2
        seen: dict[bytes, FiniteLattice] = {}
        for inner in _inner_orders(k):
            leq = np.ones((size, size), dtype=bool)
            leq[1:, 0] = False
            leq[-1, :-1] = False
            leq[1:-1, 1:-1] = inner
            ids = tuple(str(i) for i in range(size))
            try:
                L = lattice_from_poset(FinitePoset(ids, leq))
            except LatticeCheckFailure:
                continue
            code, C = _entry(L)
            seen.setdefault(code, C)
        found.extend(seen.values())
    return found


# ------------------------------------------------------------------
# Public API
# ------------------------------------------------------------------


def enumerate_lattices(
    n: int,
    strategy: str = ATOM_EXTENSION,
    verify: bool = True,
    allow_9: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> Corpus:
    """All lattices with at most *n* elements, up to isomorphism.

    With *verify*, the per-size counts are checked against the other
    strategy for sizes up to six.

    Raises
    ------
    BudgetExceeded
        ``n > 8`` without *allow_9*, or ``n > 9``.
    ConsistencyError
        The two strategies disagree.
    """
    _check_bound(n, allow_9)
    if strategy == ATOM_EXTENSION:
        lattices = _by_atom_extension(n, budget)
    elif strategy == POSET_FILTER:
        lattices = _by_poset_filter(n)
    else:
        raise LatticeWorkbenchError(f"unknown strategy {strategy!r}")
    entries = sorted(
        (_entry(L) for L in lattices), key=lambda e: (len(e[1]), e[0])
    )
    corpus = Corpus(n, entries, strategy)
    log.info("corpus up to %d elements: %d lattices", n, len(corpus))
    if verify:
        _cross_check(corpus, strategy)
    return corpus


def _cross_check(corpus: Corpus, strategy: str) -> None:
    m = min(corpus.n, ORACLE_MAX_SIZE)
    other = POSET_FILTER if strategy == ATOM_EXTENSION else ATOM_EXTENSION
    if other == POSET_FILTER:
        reference = _by_poset_filter(m)
    else:
        reference = _by_atom_extension(m, DEFAULT_BUDGET)
    ref_counts = Counter(len(L) for L in reference)
    counts = corpus.counts()
    for k in range(1, m + 1):
        if counts[k] != ref_counts.get(k, 0):
            raise ConsistencyError(
                f"{strategy} finds {counts[k]} lattices on {k} elements, "
                f"{other} finds {ref_counts.get(k, 0)}"
            )
    log.debug("strategies agree up to %d elements", m)


# ------------------------------------------------------------------
# Persistence
# ------------------------------------------------------------------


def save_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a versioned header followed by one block per lattice.

    Blocks are named by the hex canonical code of their lattice.
    """
    counts = " ".join(str(c) for c in corpus.counts().values())
    header = [
        "# lattice-workbench corpus",
        f"version {CORPUS_FORMAT_VERSION}",
        f"strategy {corpus.strategy}",
        f"created {corpus.created}",
        f"bound {corpus.n}",
        f"counts {counts}",
        f"entries {len(corpus)}",
        "",
    ]
    body = [
        format_lattice(L, code.hex()) for code, L in corpus.entries
    ]
    Path(path).write_text("\n".join(header) + "\n".join(body))


_HEADER_KEYS = ("version", "strategy", "created", "bound", "counts")


def load_corpus(path: str | Path) -> Corpus:
    """Read a corpus file and re-validate every entry.

    Raises
    ------
    CorpusVersionError
        The header names another format version.
    CorpusFileError
        Missing header fields, unparsable blocks, wrong entry count or
        a block whose lattice does not match its code.
    """
    try:
        lines = Path(path).read_text().splitlines()
    except UnicodeDecodeError as exc:
        raise CorpusFileError(f"{path}: not a text file") from exc
    header: dict[str, str] = {}
    body_start = None
    for i, line in enumerate(lines):
        if line.startswith("#") or not line.strip():
            continue
        key, _, value = line.partition(" ")
        if key == "lattice":
            body_start = i
            break
        header[key] = value.strip()
        if key == "entries":
            body_start = i + 1
            break
    if "version" not in header:
        raise CorpusFileError(f"{path}: missing version header")
    if header["version"] != str(CORPUS_FORMAT_VERSION):
        raise CorpusVersionError(
            f"{path}: format version {header['version']}, "
            f"expected {CORPUS_FORMAT_VERSION}"
        )
    missing = [k for k in (*_HEADER_KEYS, "entries") if k not in header]
    if missing:
        raise CorpusFileError(f"{path}: header lacks {', '.join(missing)}")
    try:
        n = int(header["bound"])
        expected = int(header["entries"])
        blocks = parse_lattices("\n".join(lines[body_start:]))
    except (ValueError, LatticeWorkbenchError) as exc:
        raise CorpusFileError(f"{path}: {exc}") from exc
    if len(blocks) != expected:
        raise CorpusFileError(
            f"{path}: header promises {expected} entries, found "
            f"{len(blocks)}"
        )
    entries = []
    for name, L in blocks:
        code = canonical_code(L)
        if code.hex() != name:
            raise CorpusFileError(f"{path}: entry {name} fails its code")
        entries.append((code, L))
    if len({c for c, _ in entries}) != len(entries):
        raise CorpusFileError(f"{path}: duplicate entries")
    corpus = Corpus(n, entries, header["strategy"], header["created"])
    counts = " ".join(str(c) for c in corpus.counts().values())
    if counts != header["counts"]:
        raise CorpusFileError(f"{path}: counts do not match the header")
    return corpus
