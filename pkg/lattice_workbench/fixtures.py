"""Named lattices used throughout the worked examples and tests."""

from __future__ import annotations

import itertools

from lattice_workbench.order import (
    FiniteLattice,
    FinitePoset,
    build_lattice,
    build_poset,
    direct_product,
    relabel,
)


def one_element() -> FiniteLattice:
    return build_lattice(["0"], [])


def chain(n: int) -> FiniteLattice:
    """The *n*-element chain ``0 < 1 < ... < n-1``.

    The 3-chain uses ids ``0 < m < 1`` instead, matching the
    middle-element examples.
    """
    if n < 1:
        raise ValueError("a chain needs at least one element")
    if n == 3:
        return build_lattice(["0", "m", "1"], [("0", "m"), ("m", "1")])
    ids = [str(i) for i in range(n)]
    return build_lattice(ids, list(zip(ids, ids[1:])))


def antichain_poset(n: int) -> FinitePoset:
    """*n* pairwise incomparable points ``a``, ``b``, ..."""
    return build_poset([chr(ord("a") + i) for i in range(n)], [])


def boolean(k: int) -> FiniteLattice:
    """The Boolean lattice of subsets of ``{p, q, r, ...}``.

    ``boolean(2)`` has ids ``0, p, q, 1``; larger ones name each
    element by its set of atoms (``0`` and ``1`` for the bounds).
    """
    atoms = "pqrstuvw"[:k]
    if k > len(atoms):
        raise ValueError("at most 8 atoms")

    def name(s: tuple[str, ...]) -> str:
        if not s:
            return "0"
        if len(s) == k:
            return "1"
        return "".join(s)

    subsets = [
        s for r in range(k + 1) for s in itertools.combinations(atoms, r)
    ]
    pairs = [
        (name(s), name(tuple(sorted(s + (a,)))))
        for s in subsets
        for a in atoms
        if a not in s
    ]
    return build_lattice([name(s) for s in subsets], pairs)


def m3() -> FiniteLattice:
    """The diamond: three atoms ``a, b, c`` between ``0`` and ``1``."""
    return _diamond("abc")


def m4() -> FiniteLattice:
    """Four atoms between the bounds; ``a`` has three complements."""
    return _diamond("abcd")


def _diamond(atoms: str) -> FiniteLattice:
    pairs = [("0", a) for a in atoms] + [(a, "1") for a in atoms]
    return build_lattice(["0", *atoms, "1"], pairs)


def n5() -> FiniteLattice:
    """The pentagon ``0 < x < z < 1`` with ``0 < y < 1``."""
    return build_lattice(
        ["0", "x", "y", "z", "1"],
        [("0", "x"), ("x", "z"), ("z", "1"), ("0", "y"), ("y", "1")],
    )


def benzene() -> FiniteLattice:
    """The hexagon ``0 < a < b < 1``, ``0 < c < d < 1``."""
    return build_lattice(
        ["0", "a", "b", "c", "d", "1"],
        [
            ("0", "a"),
            ("a", "b"),
            ("b", "1"),
            ("0", "c"),
            ("c", "d"),
            ("d", "1"),
        ],
    )


def capped_diamond() -> FiniteLattice:
    """M3 with a new bottom: ``0 < p < x, y, z < 1``.

    Contains M3 but no element other than the bounds is
    complemented.
    """
    return build_lattice(
        ["0", "p", "x", "y", "z", "1"],
        [("0", "p")] + [("p", a) for a in "xyz"] + [(a, "1") for a in "xyz"],
    )


def diamond_with_complements() -> FiniteLattice:
    """A 12-element lattice containing M3 as a sublattice.

    The only complementary pairs are ``(0, 1)`` and ``(a, b)``; it
    is the product of the 2-chain with :func:`capped_diamond`.
    """
    product = direct_product(chain(2), capped_diamond())
    names = {"(0,0)": "0", "(1,1)": "1", "(0,1)": "a", "(1,0)": "b"}
    return relabel(product, names)


FIXTURES = {
    "one": one_element,
    "chain2": lambda: chain(2),
    "chain3": lambda: chain(3),
    "boolean4": lambda: boolean(2),
    "boolean8": lambda: boolean(3),
    "m3": m3,
    "m4": m4,
    "n5": n5,
    "benzene": benzene,
    "capped-diamond": capped_diamond,
    "diamond-with-complements": diamond_with_complements,
}
