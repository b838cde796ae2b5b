"""Tests for the property deciders and reports."""

from __future__ import annotations

import pytest

from lattice_workbench.errors import BudgetExceeded, LatticeWorkbenchError
from lattice_workbench.fixtures import (
    benzene,
    boolean,
    capped_diamond,
    chain,
    diamond_with_complements,
    m3,
    m4,
    n5,
    one_element,
)
from lattice_workbench.order import is_isomorphic, sublattice_generated
from lattice_workbench.properties import (
    classify,
    complementation_profile,
    complements_of,
    forbidden_sublattice,
    has_at_most_one_complement,
    homomorphisms_separate,
    is_atomistic,
    is_chain,
    is_complemented,
    is_distributive,
    is_heyting,
    is_modular,
    is_orthomodular,
    is_relatively_complemented,
    is_sectionally_complemented,
    is_semimodular,
    is_uniquely_complemented,
    orthocomplementations,
    regular_elements,
    relative_complements,
    relative_pseudocomplement,
    satisfies_identity,
    two_valued_homomorphisms,
    uc_conditions,
    width,
)
from lattice_workbench.terms import parse_term

# ------------------------------------------------------------------
# Complements
# ------------------------------------------------------------------


class TestComplements:
    def test_m3_listing(self) -> None:
        assert complements_of(m3(), "a") == ("b", "c")

    def test_m4_has_three_complements(self) -> None:
        assert complements_of(m4(), "a") == ("b", "c", "d")
        v = has_at_most_one_complement(m4())
        assert not v
        assert v.witness == ("a",)
        assert v.note == "3 complements"

    def test_chain_middle_has_none(self) -> None:
        assert complements_of(chain(3), "m") == ()
        v = is_complemented(chain(3))
        assert not v and v.witness == ("m",)

    def test_one_element_is_complemented(self) -> None:
        assert is_complemented(one_element())
        assert is_uniquely_complemented(one_element())

    def test_boolean_is_uniquely_complemented(self) -> None:
        assert is_uniquely_complemented(boolean(3))
        assert not is_uniquely_complemented(m3())

    def test_relative_complements(self) -> None:
        assert relative_complements(n5(), "0", "z", "x") == ()
        assert relative_complements(m3(), "0", "1", "a") == ("b", "c")
        with pytest.raises(LatticeWorkbenchError):
            relative_complements(n5(), "x", "z", "y")

    def test_relatively_complemented(self) -> None:
        assert is_relatively_complemented(m3())
        v = is_relatively_complemented(n5())
        assert not v
        x, y, a = v.witness
        assert relative_complements(n5(), x, y, a) == ()

    def test_sectionally_complemented(self) -> None:
        assert is_sectionally_complemented(boolean(2))
        assert not is_sectionally_complemented(chain(3))

    def test_diamond_with_complements(self) -> None:
        L = diamond_with_complements()
        comps = {e: complements_of(L, e) for e in L.elements}
        pairs = {(e, c) for e, cs in comps.items() for c in cs}
        assert pairs == {("0", "1"), ("1", "0"), ("a", "b"), ("b", "a")}


# ------------------------------------------------------------------
# Equational laws
# ------------------------------------------------------------------


class TestLaws:
    def test_n5_not_modular_with_witness(self) -> None:
        L = n5()
        v = is_modular(L)
        assert not v
        x, y, z = v.witness
        assert L.is_leq(x, z)
        lhs = L.join_of(x, L.meet_of(y, z))
        rhs = L.meet_of(L.join_of(x, y), z)
        assert lhs != rhs

    def test_m3_modular_not_distributive(self) -> None:
        L = m3()
        assert is_modular(L)
        v = is_distributive(L)
        assert not v
        x, y, z = v.witness
        assert L.meet_of(x, L.join_of(y, z)) != L.join_of(
            L.meet_of(x, y), L.meet_of(x, z)
        )

    @pytest.mark.parametrize("L", [boolean(3), chain(4), one_element()])
    def test_distributive(self, L) -> None:
        assert is_distributive(L)
        assert is_modular(L)
        assert is_semimodular(L)
        assert is_heyting(L)

    def test_n5_not_semimodular(self) -> None:
        L = n5()
        v = is_semimodular(L)
        assert not v
        a, b = v.witness
        assert (a, b) == ("y", "x")

    def test_chain(self) -> None:
        assert is_chain(chain(5))
        assert not is_chain(m3())

    def test_relative_pseudocomplement(self) -> None:
        assert relative_pseudocomplement(boolean(2), "p", "0") == "q"
        assert relative_pseudocomplement(m3(), "a", "0") is None

    def test_m3_not_heyting(self) -> None:
        assert not is_heyting(m3())


# ------------------------------------------------------------------
# Atoms, width, forbidden sublattices
# ------------------------------------------------------------------


class TestStructure:
    def test_width(self) -> None:
        assert width(m4()) == 4
        assert width(chain(5)) == 1
        assert width(boolean(3)) == 3
        assert width(n5()) == 2

    def test_complementation_profile(self) -> None:
        profile = complementation_profile(m3())
        assert profile["complemented"]
        assert not profile["uniquely-complemented"]
        assert profile["width"] == 3
        cube = complementation_profile(boolean(3))
        assert all(cube[k] for k in cube if k != "width")
        small = complementation_profile(chain(3))
        assert small["complemented"].witness == ("m",)
        assert small["sectionally-complemented"].witness == ("1", "m")

    def test_atomistic(self) -> None:
        assert is_atomistic(boolean(3))
        assert not is_atomistic(chain(3))

    def test_n5_finds_itself(self) -> None:
        found = forbidden_sublattice(n5())
        assert found.kind == "N5"
        assert found.embedding == {
            "0": "0", "x": "x", "y": "y", "z": "z", "1": "1"
        }

    def test_m3_containing_lattice(self) -> None:
        L = diamond_with_complements()
        found = forbidden_sublattice(L)
        assert found.kind == "M3"
        copy = sublattice_generated(L, found.elements)
        assert is_isomorphic(copy, m3())

    def test_distributive_has_none(self) -> None:
        assert forbidden_sublattice(boolean(3)) is None

    def test_capped_diamond(self) -> None:
        assert forbidden_sublattice(capped_diamond()).kind == "M3"


# ------------------------------------------------------------------
# Orthocomplementation
# ------------------------------------------------------------------


class TestOrthocomplementation:
    def test_square_has_one(self) -> None:
        orthos = orthocomplementations(boolean(2))
        assert orthos == [{"0": "1", "p": "q", "q": "p", "1": "0"}]
        assert is_orthomodular(boolean(2), orthos[0])

    def test_m3_has_none(self) -> None:
        assert orthocomplementations(m3()) == []

    def test_benzene_not_orthomodular(self) -> None:
        L = benzene()
        orthos = orthocomplementations(L)
        assert len(orthos) == 1
        v = is_orthomodular(L, orthos[0])
        assert not v
        assert v.witness == ("a", "b")

    def test_rejects_non_ortho_map(self) -> None:
        o = {"0": "1", "p": "p", "q": "q", "1": "0"}
        with pytest.raises(LatticeWorkbenchError):
            is_orthomodular(boolean(2), o)


# ------------------------------------------------------------------
# Identities and homomorphisms
# ------------------------------------------------------------------


class TestIdentities:
    def test_distributive_law_fails_in_m3(self) -> None:
        lhs = parse_term("x1 ^ (x2 v x3)")
        rhs = parse_term("(x1 ^ x2) v (x1 ^ x3)")
        assert satisfies_identity(boolean(2), lhs, rhs)
        v = satisfies_identity(m3(), lhs, rhs)
        assert not v
        assert v.note == "variables x1 x2 x3"
        assert len(v.witness) == 3

    def test_budget(self) -> None:
        lhs = parse_term("x1 ^ x2")
        rhs = parse_term("x2 ^ x1")
        with pytest.raises(BudgetExceeded):
            satisfies_identity(boolean(3), lhs, rhs, limit=10)

    def test_two_valued_homs(self) -> None:
        assert len(two_valued_homomorphisms(boolean(3))) == 3
        assert homomorphisms_separate(boolean(3))
        assert not homomorphisms_separate(m3())

    def test_regular_elements(self) -> None:
        assert set(regular_elements(boolean(2))) == {"0", "p", "q", "1"}
        assert "a" not in regular_elements(m3())


# ------------------------------------------------------------------
# Report
# ------------------------------------------------------------------


class TestClassify:
    def test_boolean_square(self) -> None:
        facts = classify(boolean(2)).facts
        assert facts["boolean"]
        assert facts["orthomodular"]
        assert facts["relatively-complemented"]

    def test_m3(self) -> None:
        facts = classify(m3(), "M3").facts
        assert facts["modular"]
        assert facts["complemented"]
        assert not facts["distributive"]
        assert not facts["uniquely-complemented"]
        assert not facts["no-forbidden-sublattice"]

    def test_complement_map_matches_verdict(self) -> None:
        for L in (m3(), n5(), chain(3), benzene()):
            report = classify(L)
            all_have = all(report.complements.values())
            assert all_have == report.facts["complemented"]

    def test_uc_conditions_only_for_uc(self) -> None:
        assert uc_conditions(m3()) == {}
        conds = uc_conditions(boolean(3))
        for key in (
            "uc-de-morgan-comparable",
            "uc-de-morgan-incomparable",
            "uc-antitone",
            "uc-huntington",
            "uc-regular-below-nonzero",
            "uc-cover-atom",
        ):
            assert conds[key], key

    def test_deterministic(self) -> None:
        a = classify(diamond_with_complements())
        b = classify(diamond_with_complements())
        assert a.facts == b.facts
        assert a.verdicts == b.verdicts
