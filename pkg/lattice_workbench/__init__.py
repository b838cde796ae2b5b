"""Finite lattices, free lattices and unique complements."""

from lattice_workbench.errors import LatticeWorkbenchError
from lattice_workbench.order import (
    FiniteLattice,
    FinitePoset,
    build_lattice,
    build_poset,
)
from lattice_workbench.properties import classify
from lattice_workbench.terms import LatticeTerm, parse_term

__all__ = [
    "FiniteLattice",
    "FinitePoset",
    "LatticeTerm",
    "LatticeWorkbenchError",
    "build_lattice",
    "build_poset",
    "classify",
    "parse_term",
]
