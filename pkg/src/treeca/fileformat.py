"""The line-oriented automaton file format.

    bta                          # or: tta
    alphabet and/2 or/2 T/0 F/0
    states q0 q1
    final q1                     # tta files use: initial q1
    T() -> q1
    and(q0,q1) -> q0             # tta lines are reversed: q0 -> and(q0,q1)

'#' starts a comment, blank lines are ignored, one transition per line, and
duplicate left-hand sides merge into the target set.  Synthesized state names
such as {q0,q1} are legal tokens: argument lists split on commas only at
brace depth zero.  serialize_automaton emits the canonical form (sorted
alphabet, states, and transitions), so serialize(parse(x)) is a fixpoint.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .automata import Bta, Tta
from .trees import RankedAlphabet

_ALPHA_ENTRY_RE = re.compile(r"([A-Za-z0-9_]+)/(\d+)$")


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _split_args(body: str, lineno: int, col0: int) -> list[str]:
    """Split a parenthesized argument body on brace-depth-zero commas."""
    args: list[str] = []
    depth = 0
    cur = ""
    for i, ch in enumerate(body):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced '}' in state name", lineno, col0 + i + 1)
        if ch == "," and depth == 0:
            args.append(cur)
            cur = ""
        else:
            cur += ch
    if depth != 0:
        raise ParseError("unbalanced '{' in state name", lineno, col0 + len(body))
    if cur or args:
        args.append(cur)
    return [a.strip() for a in args]


def _parse_pattern(text: str, lineno: int, col0: int) -> tuple[str, tuple[str, ...]]:
    """Parse ``sym(arg,...)`` or a bare nullary ``sym``."""
    text = text.strip()
    open_at = text.find("(")
    if open_at < 0:
        return text, ()
    if not text.endswith(")"):
        raise ParseError("expected ')' to close the argument list", lineno, col0 + len(text))
    sym = text[:open_at].strip()
    body = text[open_at + 1 : -1]
    if not body.strip():
        return sym, ()
    return sym, tuple(_split_args(body, lineno, col0 + open_at + 1))


class _Decls:
    def __init__(self) -> None:
        self.alphabet: RankedAlphabet | None = None
        self.states: list[str] | None = None
        self.marked: list[str] | None = None  # final (bta) or initial (tta)


def _check_symbol(sym: str, args: tuple[str, ...], d: _Decls, lineno: int, col: int) -> None:
    assert d.alphabet is not None and d.states is not None
    if sym not in d.alphabet:
        raise ParseError(f"unknown symbol {sym!r}", lineno, col)
    want = d.alphabet.arity(sym)
    if want != len(args):
        raise ParseError(
            f"symbol {sym!r} has arity {want}, got {len(args)} arguments", lineno, col
        )
    for q in args:
        if q not in d.states:
            raise ParseError(f"undeclared state {q!r}", lineno, col)


def parse_automaton(text: str) -> Bta | Tta:
    """Parse an automaton file; raises ParseError with line/column on failure."""
    kind: str | None = None
    d = _Decls()
    bta_delta: dict[tuple[str, tuple[str, ...]], set[str]] = {}
    tta_delta: dict[str, set[tuple[str, tuple[str, ...]]]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        words = line.split()
        head = words[0]

        if kind is None:
            if head not in ("bta", "tta") or len(words) != 1:
                raise ParseError("missing header: the first line must be 'bta' or 'tta'", lineno, 1)
            kind = head
            continue

        if head == "alphabet":
            if d.alphabet is not None:
                raise ParseError("duplicate alphabet line", lineno, 1)
            entries: dict[str, int] = {}
            for w in words[1:]:
                m = _ALPHA_ENTRY_RE.fullmatch(w)
                if not m:
                    raise ParseError(
                        f"bad alphabet entry {w!r}, expected name/arity", lineno, raw.find(w) + 1
                    )
                name, arity = m.group(1), int(m.group(2))
                if name in entries:
                    raise ParseError(f"duplicate alphabet entry {name!r}", lineno, raw.find(w) + 1)
                entries[name] = arity
            try:
                d.alphabet = RankedAlphabet(entries)
            except ValueError as e:
                raise ParseError(str(e), lineno, 1) from None
            continue

        if head == "states":
            if d.states is not None:
                raise ParseError("duplicate states line", lineno, 1)
            d.states = words[1:]
            continue

        if head in ("final", "initial"):
            want = "final" if kind == "bta" else "initial"
            if head != want:
                raise ParseError(f"a {kind} file declares '{want}', not {head!r}", lineno, 1)
            if d.marked is not None:
                raise ParseError(f"duplicate {head} line", lineno, 1)
            d.marked = words[1:]
            continue

        # Anything else must be a transition line.
        if "->" not in line:
            raise ParseError(f"expected a transition line, got {line.strip()!r}", lineno, 1)
        if d.alphabet is None or d.states is None or d.marked is None:
            raise ParseError(
                "transitions must come after the alphabet, states, and "
                + ("final" if kind == "bta" else "initial")
                + " lines",
                lineno,
                1,
            )
        lhs, _, rhs = line.partition("->")
        lhs, rhs = lhs.strip(), rhs.strip()
        if not lhs or not rhs:
            raise ParseError("malformed transition, expected 'lhs -> rhs'", lineno, 1)
        if kind == "bta":
            sym, args = _parse_pattern(lhs, lineno, raw.find(lhs) + 1)
            _check_symbol(sym, args, d, lineno, raw.find(lhs) + 1)
            if rhs not in d.states:
                raise ParseError(f"undeclared state {rhs!r}", lineno, raw.rfind(rhs) + 1)
            bta_delta.setdefault((sym, args), set()).add(rhs)
        else:
            if lhs not in d.states:
                raise ParseError(f"undeclared state {lhs!r}", lineno, raw.find(lhs) + 1)
            sym, args = _parse_pattern(rhs, lineno, raw.rfind(rhs) + 1)
            _check_symbol(sym, args, d, lineno, raw.rfind(rhs) + 1)
            tta_delta.setdefault(lhs, set()).add((sym, args))

    if kind is None:
        raise ParseError("missing header: the first line must be 'bta' or 'tta'", 1, 1)
    lastline = text.count("\n") + 1
    if d.alphabet is None:
        raise ParseError("missing alphabet line", lastline, 1)
    if d.states is None:
        raise ParseError("missing states line", lastline, 1)
    if d.marked is None:
        raise ParseError("missing final line" if kind == "bta" else "missing initial line", lastline, 1)
    for q in d.marked:
        if q not in d.states:
            raise ParseError(f"undeclared state {q!r} in {'final' if kind == 'bta' else 'initial'} line", lastline, 1)

    if kind == "bta":
        return Bta(d.alphabet, d.states, bta_delta, d.marked)
    return Tta(d.alphabet, d.states, tta_delta, d.marked)


def serialize_automaton(a: Bta | Tta) -> str:
    """Render an automaton in canonical form: sorted alphabet, states, transitions."""
    out: list[str] = []
    if isinstance(a, Bta):
        out.append("bta")
    else:
        out.append("tta")
    out.append("alphabet " + " ".join(f"{n}/{a.alphabet.arity(n)}" for n in a.alphabet.symbols))
    out.append(("states " + " ".join(sorted(a.states))).rstrip())
    if isinstance(a, Bta):
        out.append(("final " + " ".join(sorted(a.final))).rstrip())
        lines = sorted(
            (sym, args, q) for (sym, args), targets in a.delta.items() for q in targets
        )
        for sym, args, q in lines:
            out.append(f"{sym}({','.join(args)}) -> {q}")
    else:
        out.append(("initial " + " ".join(sorted(a.initial))).rstrip())
        lines = sorted(
            (q, sym, args) for q, prods in a.delta.items() for sym, args in prods
        )
        for q, sym, args in lines:
            out.append(f"{q} -> {sym}({','.join(args)})")
    return "\n".join(out) + "\n"
