"""Context preimages, path-closedness, and double-reversal diagnostics.

The pre of a context is computed by folding its spine from the root to the
pivot, which is exact once unreachable states are removed: every sibling
position of a surviving rule is then realizable by an actual tree.
"""

from __future__ import annotations

import itertools
import warnings
from typing import Iterable

from .automata import Bta, post_tree, reachable_states, trim_unreachable, wpre
from .errors import NotPathClosedError, TreecaError
from .minimize import equivalent, isomorphic, min_codbta, minimize_bta
from .trees import (
    DEFAULT_ENUM_BUDGET,
    Tree,
    enumerate_contexts,
    enumerate_trees,
    pivot,
)
from .transforms import (
    DEFAULT_STATE_BUDGET,
    codeterminize,
    determinize,
    subset_construction,
)

Spine = tuple[tuple[str, int], ...]


def spine_of(x: Tree) -> Spine:
    """The root-to-pivot spine of a context: (symbol, child index) pairs,
    indices 1-based, one pair per step down to the hole."""
    out: list[tuple[str, int]] = []
    node = x
    for i in pivot(x):
        out.append((node.label, i))
        node = node.children[i - 1]
    return tuple(out)


def _checked_seed(a: Bta, s: Iterable[str] | None) -> frozenset[str]:
    if s is None:
        return a.final
    s = frozenset(s)
    bad = s - a.states
    if bad:
        raise TreecaError(f"unknown states {sorted(bad)}")
    return s


def pre_context(a: Bta, x: Tree, s: Iterable[str] | None = None) -> frozenset[str]:
    """States q such that plugging any tree of q into x can reach s at the root.

    Defaults s to the final states.  Unreachable states distort the result,
    so they are removed first with a warning.  The empty set is returned
    outright when not even the weak preimage survives; otherwise the spine of
    x is folded downward, collecting at each step the argument states at the
    spine position of every rule whose target set meets the running set.
    """
    seed = _checked_seed(a, s)
    if reachable_states(a) != a.states:
        warnings.warn(
            "pre_context removes unreachable states before computing",
            stacklevel=2,
        )
        a = trim_unreachable(a)
        seed &= a.states
    if not wpre(a, x, seed):
        return frozenset()
    r = seed
    for sym, i in spine_of(x):
        r = frozenset(
            args[i - 1]
            for (s2, args), targets in a.delta.items()
            if s2 == sym and targets & r
        )
    return r


def root_to_pivot_equiv(
    a: Bta, x: Tree, y: Tree, s: Iterable[str] | None = None
) -> bool:
    """True iff x and y have equal spines and their weak preimages of s are
    both empty or both nonempty."""
    seed = _checked_seed(a, s)
    if spine_of(x) != spine_of(y):
        return False
    return bool(wpre(a, x, seed)) == bool(wpre(a, y, seed))


def is_path_closed(a: Bta, *, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff the language of a is closed under recombining accepted paths.

    Co-determinization always accepts a superset of the language, with
    equality exactly for path-closed languages, so the check compares the
    trimmed automaton against its co-determinization.
    """
    a1 = trim_unreachable(a)
    return equivalent(a1, codeterminize(a1, budget=budget), budget=budget)


def check_gen_det_u(a: Bta, *, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff determinizing a directly yields the minimal deterministic
    automaton, i.e. distinct reachable state subsets are never language
    equivalent."""
    return isomorphic(
        determinize(a, budget=budget), minimize_bta(a, budget=budget)
    )


def gen_det_u_witness(
    a: Bta, *, budget: int = DEFAULT_STATE_BUDGET
) -> tuple[str, str, frozenset[str], frozenset[str]] | None:
    """None when determinization is already minimal; otherwise a witness
    (q, m, s1, s2): two distinct reachable subsets s1 and s2 that merge into
    the same minimal state m, with q a state in their symmetric difference."""
    det, members = subset_construction(a, budget=budget)
    mini = minimize_bta(a, budget=budget)

    def target(d: Bta, sym: str, args: tuple[str, ...]) -> str:
        return next(iter(d.delta[(sym, args)]))

    pairs: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for sym in a.alphabet.nullary:
        p = (target(det, sym, ()), target(mini, sym, ()))
        if p not in seen:
            seen.add(p)
            pairs.append(p)
    m = 0
    while m < len(pairs):
        for sym in a.alphabet.symbols:
            k = a.alphabet.arity(sym)
            if k == 0:
                continue
            for combo in itertools.product(range(m + 1), repeat=k):
                if max(combo) != m:
                    continue
                picked = [pairs[i] for i in combo]
                p = (
                    target(det, sym, tuple(x[0] for x in picked)),
                    target(mini, sym, tuple(x[1] for x in picked)),
                )
                if p not in seen:
                    seen.add(p)
                    pairs.append(p)
        m += 1
    by_minimal: dict[str, set[str]] = {}
    for subset_state, minimal_state in pairs:
        by_minimal.setdefault(minimal_state, set()).add(subset_state)
    merged = sorted(m for m, subs in by_minimal.items() if len(subs) > 1)
    if not merged:
        return None
    m_state = merged[0]
    s1_name, s2_name = sorted(by_minimal[m_state])[:2]
    s1, s2 = members[s1_name], members[s2_name]
    return (min(s1 ^ s2), m_state, s1, s2)


def check_gen_det_d(a: Bta, *, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff co-determinizing the trimmed automaton directly yields the
    minimal co-deterministic automaton.  Only defined for path-closed
    languages; anything else is rejected."""
    a1 = trim_unreachable(a)
    if not is_path_closed(a1, budget=budget):
        raise NotPathClosedError(
            "the downward determinization check requires a path-closed language"
        )
    return isomorphic(
        codeterminize(a1, budget=budget), min_codbta(a1, budget=budget)
    )


def bta_congruence_up(
    a: Bta, max_height: int, *, budget: int = DEFAULT_ENUM_BUDGET
) -> dict[frozenset[str], tuple[Tree, ...]]:
    """Group every tree up to max_height by the set of states it evaluates to."""
    groups: dict[frozenset[str], list[Tree]] = {}
    initial = a.initial_states
    for t in enumerate_trees(a.alphabet, max_height, budget):
        groups.setdefault(post_tree(a, t, initial), []).append(t)
    return {key: tuple(ts) for key, ts in groups.items()}


def bta_congruence_down(
    a: Bta, max_height: int, *, budget: int = DEFAULT_ENUM_BUDGET
) -> dict[frozenset[str], tuple[Tree, ...]]:
    """Group every context up to max_height by its pre of the final states.

    Unreachable states are removed up front, once, since pre_context is only
    exact on trimmed automata.
    """
    a1 = trim_unreachable(a)
    groups: dict[frozenset[str], list[Tree]] = {}
    for x in enumerate_contexts(a.alphabet, max_height, budget):
        groups.setdefault(pre_context(a1, x), []).append(x)
    return {key: tuple(xs) for key, xs in groups.items()}
