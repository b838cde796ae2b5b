"""Tests for one-point complement extensions and interval insertion."""

from __future__ import annotations

import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_workbench.corpus import enumerate_lattices
from lattice_workbench.errors import (
    BudgetExceeded,
    ExtensionError,
    UnknownElementError,
)
from lattice_workbench.extension import (
    ExtensionSpec,
    FreeExtension,
    adjoin_unique_complement,
    bounded_completion,
    check_generated_copy,
    complement_audit,
    complements_in_fq,
    fq_leq,
    insert_into_interval,
    k_bounds,
    weak_partial,
)
from lattice_workbench.fixtures import boolean, chain, m3, one_element
from lattice_workbench.order import interval, is_isomorphic
from lattice_workbench.properties import forbidden_sublattice, is_distributive
from lattice_workbench.terms import gen, join, meet


@pytest.fixture
def chain_q():
    """The 3-chain ``0 < m < 1`` with ``u`` adjoined as a complement of m."""
    return adjoin_unique_complement(ExtensionSpec(chain(3), "m"))


# ------------------------------------------------------------------
# Partial lattices
# ------------------------------------------------------------------


class TestAdjoin:
    def test_operations(self, chain_q) -> None:
        Q = chain_q
        assert Q.elements == ("0", "m", "1", "u")
        assert Q.base == ("0", "m", "1")
        assert Q.meet_of("m", "u") == "0"
        assert Q.join_of("u", "m") == "1"
        assert Q.meet_of("u", "1") == "u"
        assert Q.is_leq("0", "u")
        assert not Q.is_leq("u", "m")

    def test_rejects_bound(self) -> None:
        with pytest.raises(ExtensionError):
            adjoin_unique_complement(ExtensionSpec(chain(3), "0"))

    def test_rejects_taken_name(self) -> None:
        with pytest.raises(ExtensionError):
            adjoin_unique_complement(ExtensionSpec(chain(3), "m", "m"))

    def test_unknown_element(self) -> None:
        with pytest.raises(UnknownElementError):
            adjoin_unique_complement(ExtensionSpec(chain(3), "zz"))

    def test_warns_when_already_complemented(self, caplog) -> None:
        with caplog.at_level(logging.WARNING):
            adjoin_unique_complement(ExtensionSpec(boolean(2), "p"))
        assert "already has complements" in caplog.text


class TestWeakPartial:
    def test_drops_bounds(self) -> None:
        P = weak_partial(m3())
        assert P.elements == ("a", "b", "c")
        assert P.meet_of("a", "b") is None
        assert P.meet_of("a", "a") == "a"

    def test_too_small(self) -> None:
        with pytest.raises(ExtensionError):
            weak_partial(chain(2))

    def test_completion_restores_m3(self) -> None:
        assert is_isomorphic(bounded_completion(weak_partial(m3())), m3())


# ------------------------------------------------------------------
# Order on terms over Q
# ------------------------------------------------------------------


class TestFreeExtension:
    def test_defined_operations_hold(self, chain_q) -> None:
        fq = FreeExtension(chain_q)
        assert fq.equal(meet(gen("m"), gen("u")), gen("0"))
        assert fq.equal(join(gen("m"), gen("u")), gen("1"))
        assert fq.is_complementary(gen("m"), gen("u"))

    def test_order_of_leaves(self, chain_q) -> None:
        assert fq_leq(gen("m"), join(gen("0"), gen("m")), chain_q)
        assert not fq_leq(gen("u"), gen("m"), chain_q)

    def test_base_bounds(self, chain_q) -> None:
        assert k_bounds(gen("u"), chain_q) == ("0", "1")
        assert k_bounds(gen("m"), chain_q) == ("m", "m")
        assert k_bounds(meet(gen("m"), gen("u")), chain_q) == ("0", "0")

    def test_unknown_leaf(self, chain_q) -> None:
        with pytest.raises(UnknownElementError):
            FreeExtension(chain_q).leq(meet(gen("zz"), gen("m")), gen("m"))

    def test_new_class_below_u(self) -> None:
        Q = adjoin_unique_complement(ExtensionSpec(chain(4), "1"))
        fq = FreeExtension(Q)
        t = meet(gen("u"), gen("2"))
        assert not fq.equal(t, gen("0"))
        assert fq.leq(gen("0"), t)
        assert fq.leq(t, gen("u"))


EXTENSIONS = [(chain(3), "m"), (chain(4), "1"), (boolean(2), "p")]

fq_terms = st.recursive(
    st.sampled_from([gen(e) for e in ("0", "m", "1", "u")]),
    lambda inner: (
        st.builds(meet, inner, inner) | st.builds(join, inner, inner)
    ),
    max_leaves=10,
).filter(lambda t: t.depth <= 3)


class TestFreeExtensionInvariants:
    @pytest.mark.parametrize(("K", "a"), EXTENSIONS)
    def test_conservative_over_base(self, K, a) -> None:
        fq = FreeExtension(adjoin_unique_complement(ExtensionSpec(K, a)))
        for x in K.elements:
            for y in K.elements:
                assert fq.leq(gen(x), gen(y)) == K.is_leq(x, y)
                assert fq.equal(meet(gen(x), gen(y)), gen(K.meet_of(x, y)))
                assert fq.equal(join(gen(x), gen(y)), gen(K.join_of(x, y)))

    @settings(max_examples=200, deadline=None)
    @given(fq_terms)
    def test_base_bounds_are_extremal(self, A) -> None:
        K = chain(3)
        fq = FreeExtension(adjoin_unique_complement(ExtensionSpec(K, "m")))
        lower, upper = fq.k_bounds(A)
        assert fq.leq(gen(lower), A)
        assert fq.leq(A, gen(upper))
        for k in K.elements:
            if fq.leq(gen(k), A):
                assert K.is_leq(k, lower)
            if fq.leq(A, gen(k)):
                assert K.is_leq(upper, k)

    def test_bounds_of_larger_extension(self) -> None:
        K = chain(4)
        Q = adjoin_unique_complement(ExtensionSpec(K, "1"))
        fq = FreeExtension(Q)
        for A in complement_audit(Q, 2).representatives:
            lower, upper = fq.k_bounds(A)
            below = [k for k in K.elements if fq.leq(gen(k), A)]
            above = [k for k in K.elements if fq.leq(A, gen(k))]
            assert all(K.is_leq(k, lower) for k in below)
            assert all(K.is_leq(upper, k) for k in above)
            assert lower in below and upper in above


class TestComplementAudit:
    def test_closed_chain_extension(self, chain_q) -> None:
        audit = complement_audit(chain_q, 3)
        assert audit.representatives == [gen(e) for e in "0m1u"]
        assert audit.pairs == [(gen("0"), gen("1")), (gen("m"), gen("u"))]
        assert audit.complements_of(gen("u")) == [gen("m")]
        assert audit.complements_of(gen("0")) == [gen("1")]
        assert audit.bounds[gen("u")] == ("0", "1")
        assert audit.order.elements == ("0", "m", "1", "u")

    def test_larger_extension_invariants(self) -> None:
        Q = adjoin_unique_complement(ExtensionSpec(chain(4), "1"))
        audit = complement_audit(Q, 1)
        reps = audit.representatives
        assert len(reps) > len(Q)
        fq = FreeExtension(Q)
        for s, t in audit.pairs:
            assert fq.is_complementary(s, t)
        assert (gen("1"), gen("u")) in audit.pairs
        assert len(audit.order) == len(reps)

    def test_complements_in_fq(self, chain_q) -> None:
        assert complements_in_fq(gen("u"), chain_q, 1) == [gen("m")]

    @pytest.mark.parametrize(
        ("x", "expected"),
        [("u", ["m"]), ("m", ["u"]), ("0", ["1"]), ("1", ["0"])],
    )
    def test_complements_at_depth_three(self, chain_q, x, expected) -> None:
        found = complements_in_fq(gen(x), chain_q, 3)
        assert found == [gen(e) for e in expected]

    def test_evidence_only_grows_with_depth(self) -> None:
        Q = adjoin_unique_complement(ExtensionSpec(chain(4), "1"))
        audits = [complement_audit(Q, d) for d in (1, 2, 3)]
        for low, high in zip(audits, audits[1:]):
            assert set(low.pairs) <= set(high.pairs)
            assert low.representatives == high.representatives[
                : len(low.representatives)
            ]
        for x in ("u", "2"):
            found = [complements_in_fq(gen(x), Q, d) for d in (1, 2, 3)]
            assert set(found[0]) <= set(found[1]) <= set(found[2])

    def test_depth_must_be_positive(self, chain_q) -> None:
        with pytest.raises(ValueError):
            complement_audit(chain_q, 0)

    def test_budget(self, chain_q) -> None:
        with pytest.raises(BudgetExceeded):
            complement_audit(chain_q, 2, budget=3)


# ------------------------------------------------------------------
# Interval insertion
# ------------------------------------------------------------------


class TestInsert:
    def test_m3_into_chain(self) -> None:
        L = insert_into_interval(chain(3), "0", "m", m3())
        assert len(L) == 6
        assert is_isomorphic(interval(L, "0", "m"), m3())
        assert not is_distributive(L)
        assert forbidden_sublattice(L).kind == "M3"

    def test_clashing_ids_are_primed(self) -> None:
        L = insert_into_interval(chain(3), "0", "m", chain(3))
        assert "m'" in L.elements
        assert is_isomorphic(L, chain(4))

    def test_two_chain_is_identity_on_small_hosts(self) -> None:
        hosts = [L for _, L in enumerate_lattices(6) if len(L) > 1]
        assert len(hosts) >= 20
        for L in hosts:
            x, y = L.covers[-1]
            assert is_isomorphic(insert_into_interval(L, x, y, chain(2)), L)

    def test_needs_a_cover(self) -> None:
        with pytest.raises(ExtensionError):
            insert_into_interval(chain(3), "0", "1", m3())

    def test_needs_nontrivial_k(self) -> None:
        with pytest.raises(ExtensionError):
            insert_into_interval(chain(3), "0", "m", one_element())


class TestGeneratedCopy:
    def test_m3_generates_itself(self) -> None:
        v = check_generated_copy(m3(), weak_partial(m3()))
        assert v
        assert v.note == "5 elements"

    def test_boolean_host_generates_too_much(self) -> None:
        image = {"a": "p", "b": "q", "c": "r"}
        v = check_generated_copy(boolean(3), weak_partial(m3()), image)
        assert not v
        assert v.note == "generated 8 elements, expected 5"

    def test_order_must_be_reflected(self) -> None:
        image = {"a": "p", "b": "q", "c": "pq"}
        with pytest.raises(ExtensionError):
            check_generated_copy(boolean(3), weak_partial(m3()), image)

    def test_incomplete_image(self) -> None:
        with pytest.raises(ExtensionError):
            check_generated_copy(boolean(3), weak_partial(m3()), {"a": "p"})
