"""Brute-force reference layer: bounded languages and observational classes.

Everything here is defined directly from acceptance of enumerated trees and
contexts, independent of the constructions in the rest of the package, so it
doubles as an oracle for testing them.
"""

from __future__ import annotations

import itertools

from .automata import EMPTY, Bta, accepts
from .trees import (
    DEFAULT_ENUM_BUDGET,
    Tree,
    enumerate_contexts,
    enumerate_trees,
    plug,
)


class _Evaluator:
    """Memoized bottom-up state evaluation for one automaton.

    Enumerated trees share subtree objects, so the memo turns the quadratic
    tree-times-context sweeps below into cheap lookups.
    """

    def __init__(self, a: Bta):
        self.a = a
        self.memo: dict[Tree, frozenset[str]] = {}

    def states(self, t: Tree) -> frozenset[str]:
        got = self.memo.get(t)
        if got is not None:
            return got
        if not t.children:
            out = self.a.delta.get((t.label, ()), EMPTY)
        else:
            kid_sets = [self.states(c) for c in t.children]
            acc: set[str] = set()
            for combo in itertools.product(*kid_sets):
                acc |= self.a.delta.get((t.label, combo), EMPTY)
            out = frozenset(acc)
        self.memo[t] = out
        return out

    def accepts(self, t: Tree) -> bool:
        return bool(self.states(t) & self.a.final)


def language_upto(
    a: Bta, max_height: int, *, budget: int = DEFAULT_ENUM_BUDGET
) -> frozenset[Tree]:
    """All accepted trees of height up to max_height."""
    ev = _Evaluator(a)
    return frozenset(
        t for t in enumerate_trees(a.alphabet, max_height, budget) if ev.accepts(t)
    )


def nerode_classes_up(
    a: Bta,
    tree_height: int,
    context_height: int,
    *,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> tuple[tuple[Tree, ...], ...]:
    """Group trees by which bounded contexts carry them into the language.

    Two trees land in the same class iff plugging them into every enumerated
    context gives the same accept/reject vector.  Classes are ordered by
    their first member; members keep the canonical enumeration order.
    """
    trees = enumerate_trees(a.alphabet, tree_height, budget)
    contexts = enumerate_contexts(a.alphabet, context_height, budget)
    ev = _Evaluator(a)
    groups: dict[tuple[bool, ...], list[Tree]] = {}
    for t in trees:
        bits = tuple(ev.accepts(plug(x, t)) for x in contexts)
        groups.setdefault(bits, []).append(t)
    classes = [tuple(ts) for ts in groups.values()]
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


def nerode_classes_down(
    a: Bta,
    context_height: int,
    tree_height: int,
    *,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> tuple[tuple[Tree, ...], ...]:
    """Group contexts by which bounded trees they carry into the language.

    The observational dual of nerode_classes_up, with the same ordering
    conventions.
    """
    contexts = enumerate_contexts(a.alphabet, context_height, budget)
    trees = enumerate_trees(a.alphabet, tree_height, budget)
    ev = _Evaluator(a)
    groups: dict[tuple[bool, ...], list[Tree]] = {}
    for x in contexts:
        bits = tuple(ev.accepts(plug(x, t)) for t in trees)
        groups.setdefault(bits, []).append(x)
    classes = [tuple(xs) for xs in groups.values()]
    classes.sort(key=lambda c: c[0])
    return tuple(classes)


def quotient_member_up(a: Bta, x: Tree, t: Tree) -> bool:
    """True iff context x carries tree t into the language."""
    return accepts(a, plug(x, t))


def quotient_member_down(a: Bta, t: Tree, x: Tree) -> bool:
    """True iff tree t fills context x into the language."""
    return accepts(a, plug(x, t))
