"""Minimization and comparison of tree automata.

Deterministic automata are minimized by Moore-style partition refinement: two
states stay merged only while they lead to equivalent targets in every rule
position, with every combination of concrete states at the other positions.
On top of that sit language equivalence, a canonical renaming for isomorphism
checks, and the co-deterministic and double-reversal minimizers, both of which
only apply to path-closed languages.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .automata import (
    Bta,
    is_codeterministic,
    is_deterministic,
    reachable_states,
    trim_empty,
    trim_unreachable,
)
from .errors import NotDeterministicError, NotPathClosedError, TreecaError
from .transforms import (
    DEFAULT_STATE_BUDGET,
    codeterminize,
    complete,
    determinize,
    reverse_bta,
    reverse_tta,
    subset_name,
    tta_determinize,
)
from .trees import Tree


@dataclass(frozen=True)
class Partition:
    """A partition of a state set into disjoint nonempty blocks."""

    blocks: tuple[frozenset[str], ...]

    @cached_property
    def block_of(self) -> dict[str, int]:
        """Map each state to the index of its block."""
        return {q: i for i, block in enumerate(self.blocks) for q in block}

    def __len__(self) -> int:
        return len(self.blocks)


def _refine(c: Bta) -> Partition:
    """Coarsest congruence of a complete deterministic automaton that
    separates final from non-final states."""
    states = sorted(c.states)
    block = {q: 1 if q in c.final else 0 for q in states}
    nblocks = len(set(block.values()))
    arities = [
        (sym, c.alphabet.arity(sym))
        for sym in c.alphabet.symbols
        if c.alphabet.arity(sym) > 0
    ]
    while True:
        sigs: dict[str, tuple[int, ...]] = {}
        for q in states:
            sig = [block[q]]
            for sym, k in arities:
                for i in range(k):
                    for others in itertools.product(states, repeat=k - 1):
                        args = others[:i] + (q,) + others[i:]
                        target = next(iter(c.delta[(sym, args)]))
                        sig.append(block[target])
            sigs[q] = tuple(sig)
        fresh: dict[tuple[int, ...], int] = {}
        block = {q: fresh.setdefault(sigs[q], len(fresh)) for q in states}
        if len(fresh) == nblocks:
            break
        nblocks = len(fresh)
    members: dict[int, set[str]] = {}
    for q, b in block.items():
        members.setdefault(b, set()).add(q)
    blocks = sorted((frozenset(m) for m in members.values()), key=sorted)
    return Partition(tuple(blocks))


def minimize_dbta(d: Bta) -> Bta:
    """The minimal complete deterministic automaton for the language of d.

    The input is completed and stripped of unreachable states, then merged
    along the coarsest congruence.  The result is total over its states; a
    rejecting sink class is kept when some tree has no accepting context.
    """
    if not is_deterministic(d):
        raise NotDeterministicError("minimize_dbta requires a deterministic automaton")
    c = trim_unreachable(complete(d))
    if not c.states:
        return c
    part = _refine(c)
    name_of = {q: subset_name(block) for block in part.blocks for q in block}
    delta: dict[tuple[str, tuple[str, ...]], set[str]] = {}
    for (sym, args), targets in c.delta.items():
        key = (sym, tuple(name_of[q] for q in args))
        delta.setdefault(key, set()).add(name_of[next(iter(targets))])
    return Bta(
        c.alphabet,
        {subset_name(block) for block in part.blocks},
        delta,
        {name_of[q] for q in c.final},
    )


def minimize_bta(
    a: Bta, *, strip_dead: bool = False, budget: int = DEFAULT_STATE_BUDGET
) -> Bta:
    """Determinize and minimize.  With strip_dead the rejecting sink class is
    removed, giving a partial automaton for the same language."""
    m = minimize_dbta(determinize(a, budget=budget))
    return trim_empty(m) if strip_dead else m


def min_codbta(a: Bta, *, budget: int = DEFAULT_STATE_BUDGET) -> Bta:
    """The minimal co-deterministic automaton, defined for path-closed
    languages only: co-determinize the minimal deterministic automaton."""
    from .analysis import is_path_closed

    if not is_path_closed(a, budget=budget):
        raise NotPathClosedError(
            "co-deterministic minimization requires a path-closed language"
        )
    return codeterminize(determinize(a, budget=budget), budget=budget)


def brzozowski(a: Bta, *, budget: int = DEFAULT_STATE_BUDGET) -> Bta:
    """Minimize by double reversal: reverse, determinize top-down, reverse,
    determinize.  Sound exactly for path-closed languages, so anything else
    is rejected."""
    from .analysis import is_path_closed

    if not is_path_closed(a, budget=budget):
        raise NotPathClosedError(
            "double-reversal minimization requires a path-closed language"
        )
    t = tta_determinize(reverse_bta(trim_unreachable(a)), budget=budget)
    return determinize(reverse_tta(t), budget=budget)


def canonical_form(d: Bta) -> Bta:
    """Rename the reachable part of a deterministic automaton to "0".."n-1".

    States are numbered by a breadth-first walk that takes nullary symbols in
    sorted order and then, layer by layer, every symbol in sorted order with
    argument tuples in lexicographic index order.  The walk only sees
    reachable states, so unreachable ones are dropped.  Two deterministic,
    fully reachable automata are isomorphic iff their canonical forms are
    equal.
    """
    if not is_deterministic(d):
        raise NotDeterministicError("canonical_form requires a deterministic automaton")
    order: list[str] = []
    index: dict[str, int] = {}

    def intern(q: str) -> None:
        if q not in index:
            index[q] = len(order)
            order.append(q)

    for sym in d.alphabet.nullary:
        targets = d.delta.get((sym, ()))
        if targets:
            intern(next(iter(targets)))
    m = 0
    while m < len(order):
        for sym in d.alphabet.symbols:
            k = d.alphabet.arity(sym)
            if k == 0:
                continue
            for combo in itertools.product(range(m + 1), repeat=k):
                if max(combo) != m:
                    continue
                targets = d.delta.get((sym, tuple(order[i] for i in combo)))
                if targets:
                    intern(next(iter(targets)))
        m += 1
    names = {q: str(i) for q, i in index.items()}
    delta = {
        (sym, tuple(names[q] for q in args)): {names[next(iter(targets))]}
        for (sym, args), targets in d.delta.items()
        if all(q in names for q in args)
    }
    return Bta(
        d.alphabet, names.values(), delta, {names[q] for q in d.final if q in names}
    )


def _codet_canonical(a: Bta) -> Bta | None:
    """Canonical renaming by a downward walk from the single final state;
    None when the walk does not cover every state."""
    rev: dict[tuple[str, str], tuple[str, ...]] = {}
    for (sym, args), targets in a.delta.items():
        if not args:
            continue
        for q in targets:
            rev[(q, sym)] = args
    order: list[str] = []
    index: dict[str, int] = {}

    def intern(q: str) -> None:
        if q not in index:
            index[q] = len(order)
            order.append(q)

    intern(next(iter(a.final)))
    m = 0
    while m < len(order):
        for sym in a.alphabet.symbols:
            if a.alphabet.arity(sym) == 0:
                continue
            args = rev.get((order[m], sym))
            if args:
                for q in args:
                    intern(q)
        m += 1
    if len(order) != len(a.states):
        return None
    names = {q: str(i) for q, i in index.items()}
    delta = {
        (sym, tuple(names[q] for q in args)): {names[q] for q in targets}
        for (sym, args), targets in a.delta.items()
    }
    return Bta(a.alphabet, names.values(), delta, {names[q] for q in a.final})


def _signatures(a: Bta) -> dict[str, tuple]:
    occ: dict[str, Counter] = {q: Counter() for q in a.states}
    for (sym, args), targets in a.delta.items():
        for i, q in enumerate(args):
            occ[q][("arg", sym, i, len(targets))] += 1
        for q in targets:
            occ[q][("target", sym)] += 1
    return {
        q: (q in a.final, tuple(sorted(occ[q].items()))) for q in a.states
    }


def _mapped_rules_consistent(a: Bta, b: Bta, mapping: dict[str, str]) -> bool:
    for (sym, args), targets in a.delta.items():
        if not all(q in mapping for q in args):
            continue
        image = b.delta.get((sym, tuple(mapping[q] for q in args)))
        if image is None or len(image) != len(targets):
            return False
        if any(mapping[q] not in image for q in targets if q in mapping):
            return False
    return True


def _backtracking_iso(a: Bta, b: Bta) -> bool:
    siga = _signatures(a)
    sigb = _signatures(b)
    if Counter(siga.values()) != Counter(sigb.values()):
        return False
    order = sorted(a.states)
    candidates = {
        q: sorted(p for p in b.states if sigb[p] == siga[q]) for q in order
    }
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def extend(idx: int) -> bool:
        if idx == len(order):
            renamed = {
                (sym, tuple(mapping[q] for q in args)): frozenset(
                    mapping[q] for q in targets
                )
                for (sym, args), targets in a.delta.items()
            }
            return renamed == b.delta
        q = order[idx]
        for p in candidates[q]:
            if p in used:
                continue
            mapping[q] = p
            used.add(p)
            if _mapped_rules_consistent(a, b, mapping) and extend(idx + 1):
                return True
            del mapping[q]
            used.discard(p)
        return False

    return extend(0)


def isomorphic(a: Bta, b: Bta) -> bool:
    """True iff some renaming of states turns a into b.

    Deterministic fully reachable automata and co-deterministic fully covered
    ones are compared through canonical renamings; everything else falls back
    to a backtracking search pruned by local state signatures.
    """
    if a.alphabet != b.alphabet:
        return False
    if (
        len(a.states) != len(b.states)
        or len(a.final) != len(b.final)
        or len(a.delta) != len(b.delta)
        or sum(len(v) for v in a.delta.values()) != sum(len(v) for v in b.delta.values())
    ):
        return False
    if (
        is_deterministic(a)
        and is_deterministic(b)
        and reachable_states(a) == a.states
        and reachable_states(b) == b.states
    ):
        return canonical_form(a) == canonical_form(b)
    if is_codeterministic(a) and is_codeterministic(b):
        ca = _codet_canonical(a)
        cb = _codet_canonical(b)
        if ca is not None and cb is not None:
            return ca == cb
    return _backtracking_iso(a, b)


def equivalent(a: Bta, b: Bta, *, budget: int = DEFAULT_STATE_BUDGET) -> bool:
    """True iff a and b accept the same language.

    Automata over different alphabets are never considered equivalent.  Both
    sides are minimized into their unique minimal complete form and compared
    up to isomorphism.
    """
    if a.alphabet != b.alphabet:
        return False
    return isomorphic(
        complete(minimize_bta(a, budget=budget)),
        complete(minimize_bta(b, budget=budget)),
    )


def separating_tree(
    a: Bta, b: Bta, *, budget: int = DEFAULT_STATE_BUDGET
) -> Tree | None:
    """A tree of minimal height accepted by exactly one of a and b, or None.

    Runs a breadth-first product walk of the two determinized automata, so the
    witness height is bounded by the number of reachable state pairs.
    """
    if a.alphabet != b.alphabet:
        raise TreecaError("separating_tree requires automata over the same alphabet")
    da = determinize(a, budget=budget)
    db = determinize(b, budget=budget)

    def target(d: Bta, sym: str, args: tuple[str, ...]) -> str:
        return next(iter(d.delta[(sym, args)]))

    explored: list[tuple[str, str, Tree, int]] = []
    seen: set[tuple[str, str]] = set()
    fresh: list[tuple[str, str, Tree]] = []
    for sym in a.alphabet.nullary:
        pa, pb = target(da, sym, ()), target(db, sym, ())
        if (pa, pb) not in seen:
            seen.add((pa, pb))
            fresh.append((pa, pb, Tree(sym)))
    rnd = 1
    while fresh:
        for pa, pb, wit in fresh:
            if (pa in da.final) != (pb in db.final):
                return wit
        explored.extend((pa, pb, wit, rnd) for pa, pb, wit in fresh)
        nxt: list[tuple[str, str, Tree]] = []
        for sym in a.alphabet.symbols:
            k = a.alphabet.arity(sym)
            if k == 0:
                continue
            for combo in itertools.product(range(len(explored)), repeat=k):
                if max(explored[i][3] for i in combo) != rnd:
                    continue
                entries = [explored[i] for i in combo]
                pa = target(da, sym, tuple(e[0] for e in entries))
                pb = target(db, sym, tuple(e[1] for e in entries))
                if (pa, pb) not in seen:
                    seen.add((pa, pb))
                    nxt.append(
                        (pa, pb, Tree(sym, tuple(e[2] for e in entries)))
                    )
        rnd += 1
        fresh = nxt
    return None
