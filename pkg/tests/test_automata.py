"""Automaton values and their run semantics: post, accepts, seeded runs,
weak pre, trims, and the determinism predicates."""

from __future__ import annotations

import itertools
import random

import pytest

from treeca import (
    Bta,
    NotWellRankedError,
    TreecaError,
    Tta,
    accepts,
    enumerate_contexts,
    enumerate_trees,
    is_codeterministic,
    is_deterministic,
    language_upto,
    parse_context,
    parse_term,
    plug,
    post_tree,
    reachable_states,
    reverse_bta,
    seeded_post,
    trim_empty,
    trim_unreachable,
    tta_accepts,
    useful_states,
    wpre,
)

from helpers import AB, BOOL, load_fixture, random_bta


# === Construction =================================================================

def test_bta_validates_states_and_arities():
    with pytest.raises(TreecaError):
        Bta(BOOL, {"q0"}, {}, {"q1"})  # undeclared final state
    with pytest.raises(TreecaError):
        Bta(BOOL, {"q0"}, {("and", ("q0",)): {"q0"}}, set())  # arity mismatch
    with pytest.raises(TreecaError):
        Bta(BOOL, {"q0"}, {("xor", ("q0", "q0")): {"q0"}}, set())  # unknown symbol
    with pytest.raises(TreecaError):
        Bta(BOOL, {"q0"}, {("and", ("q0", "q1")): {"q0"}}, set())  # undeclared state


def test_initial_states_are_the_nullary_targets(bool2, abc):
    assert bool2.initial_states == {"q0", "q1"}
    assert abc.initial_states == {"q_a", "q_b", "q_c", "q_dot"}


def test_tta_validates_productions():
    with pytest.raises(TreecaError):
        Tta(BOOL, {"p"}, {}, {"q"})
    with pytest.raises(TreecaError):
        Tta(BOOL, {"p"}, {"p": {("and", ("p",))}}, {"p"})


# === post and accepts =============================================================

def test_post_reproduces_the_worked_example(bool2):
    t = parse_term("and(or(T,F),and(T,T))")
    assert post_tree(bool2, t, {"q0", "q1"}) == {"q1"}
    assert post_tree(bool2, t, {"q0"}) == frozenset()


def test_post_rejects_foreign_trees_and_states(bool2):
    with pytest.raises(NotWellRankedError):
        post_tree(bool2, parse_term("f(a,b)"), bool2.states)
    with pytest.raises(TreecaError):
        post_tree(bool2, parse_term("T"), {"nope"})


def test_accepts_evaluates_booleans(bool2):
    assert accepts(bool2, parse_term("or(F,T)"))
    assert not accepts(bool2, parse_term("and(T,F)"))
    assert accepts(bool2, parse_term("or(and(T,T),F)"))


def test_accepts_on_the_nondeterministic_fixture(abc):
    assert accepts(abc, parse_term("f(a,a)"))
    assert accepts(abc, parse_term("f(a,b)"))  # both leaves can move to q_dot
    assert not accepts(abc, parse_term("a"))
    assert not accepts(abc, parse_term("f(f(a,a),a)"))


def test_inductive_characterization_of_post(bool2, abc, and1):
    """q is in post(f[t1..tk]) exactly when some rule f(q1..qk) -> q has
    qi in post(ti) for every i."""
    for a in (bool2, abc, and1):
        full = a.states
        for t in enumerate_trees(a.alphabet, 3):
            got = post_tree(a, t, full)
            if not t.children:
                assert got == a.delta.get((t.label, ()), frozenset())
                continue
            kid_posts = [post_tree(a, c, full) for c in t.children]
            expected = set()
            for (sym, args), targets in a.delta.items():
                if sym == t.label and all(q in s for q, s in zip(args, kid_posts)):
                    expected |= targets
            assert got == frozenset(expected)


def test_post_recursion_over_every_seed_set(and1):
    """post(f[t1..tk], S) = delta(f[post(t1,S) x .. x post(tk,S)]) for every S."""
    states = sorted(and1.states)
    for r in range(len(states) + 1):
        for s in itertools.combinations(states, r):
            for t in enumerate_trees(and1.alphabet, 3):
                if not t.children:
                    continue
                kid_posts = [post_tree(and1, c, s) for c in t.children]
                expected = set()
                for combo in itertools.product(*kid_posts):
                    expected |= and1.delta.get((t.label, combo), frozenset())
                assert post_tree(and1, t, s) == frozenset(expected)


# === Seeded runs and wpre =========================================================

def test_seeded_post_pins_only_the_hole(bool2):
    x = parse_context("or(<>,F)")
    assert seeded_post(bool2, x, "q1") == {"q1"}
    assert seeded_post(bool2, x, "q0") == {"q0"}
    y = parse_context("or(<>,T)")
    assert seeded_post(bool2, y, "q0") == {"q1"}


def test_seeded_post_composes_along_context_nesting(bool2):
    """Seeding x[[y]] equals seeding y first, then climbing x from each result."""
    xs = enumerate_contexts(BOOL, 2)
    for x, y in itertools.product(xs, repeat=2):
        for q in sorted(bool2.states):
            via = set()
            for p in seeded_post(bool2, y, q):
                via |= seeded_post(bool2, x, p)
            assert seeded_post(bool2, plug(x, y), q) == frozenset(via)


def test_wpre_worked_examples(bool2):
    assert wpre(bool2, parse_context("or(and(T,F),<>)"), bool2.final) == {"q1"}
    assert wpre(bool2, parse_context("and(or(F,F),<>)"), bool2.final) == frozenset()
    assert wpre(bool2, parse_context("<>"), bool2.final) == {"q1"}


def test_wpre_membership_is_seeded_acceptance(bool2):
    for x in enumerate_contexts(BOOL, 2):
        got = wpre(bool2, x, bool2.final)
        for q in sorted(bool2.states):
            assert (q in got) == bool(seeded_post(bool2, x, q) & bool2.final)


# === Trims ========================================================================

def test_reachable_and_useful_states(star):
    # q2 only occurs in star rules whose other argument needs q2 already, and
    # q0 can never climb out of the false and-rules.
    assert reachable_states(star) == {"q0", "q1"}
    assert useful_states(star) == {"q1", "q2"}
    trimmed = trim_unreachable(star)
    assert trimmed.states == {"q0", "q1"}
    assert all(sym != "star" for (sym, _), _ in trimmed.delta.items())


def test_trim_empty_keeps_unreachable_but_useful_states(star):
    # Upward usefulness does not require reachability: q2 climbs to the final
    # q2 through star rules whose sibling q1 is reachable.
    kept = trim_empty(star)
    assert kept.states == {"q1", "q2"}
    assert "q2" not in reachable_states(star)


def test_sibling_realizability_blocks_usefulness():
    # f(q_dead, q) -> final: the unreachable q_dead still has an upward
    # language (plug the hole there, fill the sibling with a), but q does not,
    # because its sibling position q_dead can never be filled by a real tree.
    a = Bta(
        AB,
        {"q", "q_dead", "q_fin"},
        {("a", ()): {"q"}, ("f", ("q_dead", "q")): {"q_fin"}},
        {"q_fin"},
    )
    assert useful_states(a) == {"q_dead", "q_fin"}
    assert trim_empty(a).states == {"q_dead", "q_fin"}


def test_trims_preserve_the_language():
    rng = random.Random(401)
    for _ in range(40):
        a = random_bta(rng)
        for t in enumerate_trees(AB, 3):
            expect = accepts(a, t)
            assert accepts(trim_unreachable(a), t) == expect
            assert accepts(trim_empty(a), t) == expect


def test_trim_language_preservation_at_height_four(and1, bool2):
    for a in (and1, bool2):
        assert language_upto(trim_unreachable(a), 4) == language_upto(a, 4)
        assert language_upto(trim_empty(a), 4) == language_upto(a, 4)


# === Determinism predicates =======================================================

def test_determinism_predicates_on_fixtures(bool2, abc, and1):
    assert is_deterministic(bool2)
    assert is_deterministic(and1)
    assert not is_deterministic(abc)  # a() -> q_a and a() -> q_dot
    assert not is_codeterministic(bool2)  # or(q0,q1) and or(q1,q0) both give q1
    assert not is_codeterministic(abc)  # |F| = 1 but four tuples feed q_f


def test_codeterminism_requires_singleton_final_and_injective_tuples():
    one = Bta(AB, {"q"}, {("a", ()): {"q"}, ("f", ("q", "q")): {"q"}}, {"q"})
    assert is_codeterministic(one)
    two_final = Bta(AB, {"q", "r"}, {("a", ()): {"q"}}, {"q", "r"})
    assert not is_codeterministic(two_final)


# === Top-down acceptance through reverse ==========================================

def test_tta_accepts_agrees_with_the_reverse_bta(bool2r, bool2):
    for t in enumerate_trees(BOOL, 3):
        assert tta_accepts(bool2r, t) == accepts(bool2, t)


def test_accepts_round_trips_through_reverse():
    rng = random.Random(402)
    for _ in range(25):
        a = random_bta(rng)
        r = reverse_bta(a)
        for t in enumerate_trees(AB, 3):
            assert tta_accepts(r, t) == accepts(a, t)
