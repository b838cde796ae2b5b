"""Tests for the free-lattice word problem and canonical forms."""

from __future__ import annotations

from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_workbench.corpus import enumerate_lattices
from lattice_workbench.errors import BudgetExceeded, TermError
from lattice_workbench.free import (
    ALTERNATION,
    BINARY,
    WhitmanOrder,
    canonical_form,
    canonical_strata,
    count_canonical_terms,
    free_equal,
    free_leq,
    is_canonical,
)
from lattice_workbench.order import FiniteLattice
from lattice_workbench.terms import evaluate_in, gen, join, meet, parse_term

NAMES = ("x1", "x2", "x3")
GENERATORS = [gen(x) for x in NAMES]

terms = st.recursive(
    st.sampled_from(GENERATORS),
    lambda inner: (
        st.builds(meet, inner, inner) | st.builds(join, inner, inner)
    ),
    max_leaves=8,
)
shallow = terms.filter(lambda t: t.depth <= 4)


@lru_cache(maxsize=None)
def small_lattices() -> tuple[FiniteLattice, ...]:
    return tuple(L for _, L in enumerate_lattices(6))


def leq(s: str, t: str) -> bool:
    return free_leq(parse_term(s), parse_term(t))


# ------------------------------------------------------------------
# Word problem
# ------------------------------------------------------------------


class TestWhitmanOrder:
    def test_bounds_of_generators(self) -> None:
        assert leq("x1 ^ x2", "x1")
        assert leq("x1", "x1 v x2")
        assert not leq("x1 v x2", "x1")
        assert not leq("x1", "x2")

    def test_distributive_law_fails(self) -> None:
        assert leq("(x1 ^ x2) v (x1 ^ x3)", "x1 ^ (x2 v x3)")
        assert not leq("x1 ^ (x2 v x3)", "(x1 ^ x2) v (x1 ^ x3)")

    def test_modular_law_fails(self) -> None:
        assert not leq("(x1 v x2) ^ (x1 v x3)", "x1 v (x2 ^ (x1 v x3))")

    def test_meet_below_join(self) -> None:
        assert leq("x1 ^ x2", "(x1 ^ x2) v x3")
        assert leq("x1 ^ (x2 v x3)", "x1 v x3")

    def test_absorption(self) -> None:
        assert free_equal(parse_term("x1 v (x1 ^ x2)"), gen("x1"))

    def test_mixed_alphabet(self) -> None:
        with pytest.raises(TermError):
            free_leq(gen("a"), gen("x1"))

    def test_memo_grows(self) -> None:
        order = WhitmanOrder()
        free_leq(parse_term("x1 ^ (x2 v x3)"), parse_term("x1 v x2"), order)
        assert len(order) > 0

    @settings(max_examples=60, deadline=None)
    @given(terms, terms)
    def test_meet_and_join_are_bounds(self, s, t) -> None:
        assert free_leq(meet(s, t), s)
        assert free_leq(s, join(s, t))


class TestLatticeLaws:
    """Identities and order axioms on random terms over x1, x2, x3."""

    @settings(max_examples=500, deadline=None)
    @given(shallow, shallow, shallow)
    def test_axioms_hold_as_identities(self, s, t, u) -> None:
        for op in (meet, join):
            assert free_equal(op(s, s), s)
            assert free_equal(op(s, t), op(t, s))
            assert free_equal(op(op(s, t), u), op(s, op(t, u)))
        assert free_equal(meet(s, join(s, t)), s)
        assert free_equal(join(s, meet(s, t)), s)

    @settings(max_examples=500, deadline=None)
    @given(shallow, shallow, shallow)
    def test_order_is_reflexive_and_transitive(self, s, t, u) -> None:
        assert free_leq(s, s)
        if free_leq(s, t) and free_leq(t, u):
            assert free_leq(s, u)
        # a chain that always exists
        low, mid, high = meet(s, t), s, join(s, u)
        assert free_leq(low, mid) and free_leq(mid, high)
        assert free_leq(low, high)

    @settings(max_examples=200, deadline=None)
    @given(shallow, shallow, shallow, st.randoms(use_true_random=False))
    def test_sound_in_small_lattices(self, s, t, u, rng) -> None:
        pairs = [
            (s, t),
            (t, s),
            (join(meet(s, t), meet(s, u)), meet(s, join(t, u))),
        ]
        decided = [(a, b) for a, b in pairs if free_leq(a, b)]
        for L in small_lattices():
            for _ in range(3):
                point = {x: rng.choice(L.elements) for x in NAMES}
                for a, b in decided:
                    assert L.is_leq(
                        evaluate_in(L, a, point), evaluate_in(L, b, point)
                    )


# ------------------------------------------------------------------
# Canonical forms
# ------------------------------------------------------------------


class TestCanonicalForm:
    @pytest.mark.parametrize(
        ("text", "expected"),
        [
            ("x1 v (x1 ^ x2)", "x1"),
            ("x1 ^ (x1 v x2)", "x1"),
            ("(x1 ^ x2) v (x1 ^ x2 ^ x3)", "x1 ^ x2"),
            ("x1 v x2 v (x1 ^ x3)", "x1 v x2"),
        ],
    )
    def test_known_reductions(self, text, expected) -> None:
        assert canonical_form(parse_term(text)) == parse_term(expected)

    def test_canonical_terms_are_fixed(self) -> None:
        assert is_canonical(parse_term("x1 ^ (x2 v x3)"))
        assert not is_canonical(parse_term("x1 v (x1 ^ x2)"))

    @settings(max_examples=80, deadline=None)
    @given(terms)
    def test_equal_and_no_longer(self, t) -> None:
        c = canonical_form(t)
        assert free_equal(c, t)
        assert c.size <= t.size
        assert canonical_form(c) == c

    @settings(max_examples=60, deadline=None)
    @given(terms, terms)
    def test_equal_terms_share_a_form(self, s, t) -> None:
        if free_equal(s, t):
            assert canonical_form(s) == canonical_form(t)
        else:
            assert canonical_form(s) != canonical_form(t)


class TestCounting:
    def test_one_generator(self) -> None:
        assert count_canonical_terms(1, 3) == 1

    def test_two_generators_close_at_four(self) -> None:
        assert count_canonical_terms(2, 1) == 4
        assert count_canonical_terms(2, 3) == 4
        assert count_canonical_terms(2, 3, measure=BINARY) == 4

    def test_first_strata_of_three_generators(self) -> None:
        # generators, their 4 meets and their 4 joins
        assert count_canonical_terms(3, 1) == 11
        # meets of joins of generators and joins of meets, 18 each,
        # sharing the 11 terms of depth at most one
        assert count_canonical_terms(3, 2) == 25

    def test_alternations_not_binary_steps(self) -> None:
        three = parse_term("x1 v x2 v x3")
        assert three.depth == 1
        assert three in canonical_strata(3, 1)[1]
        assert three not in canonical_strata(3, 1, measure=BINARY)[1]
        assert count_canonical_terms(3, 1, measure=BINARY) == 9

    def test_strata_grow(self) -> None:
        strata = canonical_strata(3, 2)
        assert all(a <= b for a, b in zip(strata, strata[1:]))
        assert len(strata) == 3

    @pytest.mark.slow
    def test_strictly_increasing(self) -> None:
        sizes = [len(s) for s in canonical_strata(3, 3)]
        assert sizes[:3] == [3, 11, 25]
        assert sizes[3] > sizes[2]

    def test_budget(self) -> None:
        with pytest.raises(BudgetExceeded):
            count_canonical_terms(3, 3, budget=5)

    @pytest.mark.parametrize(
        ("n", "depth", "measure"),
        [(0, 1, ALTERNATION), (2, -1, ALTERNATION), (2, 1, "size")],
    )
    def test_bad_arguments(self, n, depth, measure) -> None:
        with pytest.raises(ValueError):
            count_canonical_terms(n, depth, measure=measure)
