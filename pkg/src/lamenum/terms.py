"""Lambda terms in de Bruijn notation.

A term is an index (a positive integer naming an enclosing binder, 1 being
the innermost), an abstraction, or an application.  The size of a term counts
abstraction and application nodes only; indices are free.  Under this size
model there are infinitely many terms of each size but only finitely many
whose free indices stay below a bound, which is what makes the census here
work.

Terms are immutable and compare structurally, so they can live in sets and
dict keys.  All traversals over whole terms are iterative: terms a few
hundred nodes deep show up routinely when unranking, and Python's recursion
limit is not part of the interface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Union


class LamenumError(Exception):
    """Base class for all errors raised by this package."""


class TermSyntaxError(LamenumError):
    """Raised when parsing a term from text or JSON fails.

    ``position`` is the character offset of the offending token for text
    input, or None for JSON input.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True, slots=True)
class Index:
    """A de Bruijn index; ``i`` >= 1 refers to the i-th enclosing binder."""

    i: int

    def __post_init__(self):
        if not isinstance(self.i, int) or isinstance(self.i, bool) or self.i < 1:
            raise ValueError(f"de Bruijn indices start at 1, got {self.i!r}")


@dataclass(frozen=True, slots=True)
class Abs:
    body: "Term"


@dataclass(frozen=True, slots=True)
class App:
    left: "Term"
    right: "Term"


Term = Union[Index, Abs, App]


@dataclass(frozen=True)
class TermMetrics:
    """Structural statistics of a term, computed in one pass.

    variable_depths lists, for each index occurrence in left-to-right order,
    the number of Abs and App nodes strictly above it.
    """

    size: int
    openness: int
    head_lambdas: int
    variable_depths: tuple[int, ...]


def subterms(t: Term) -> Iterator[Term]:
    """Yield every subterm of ``t`` (including ``t``), preorder, left first."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Abs):
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.right)
            stack.append(node.left)


def size_of(t: Term) -> int:
    """Number of Abs and App nodes in ``t``.  Indices contribute 0."""
    return sum(1 for s in subterms(t) if not isinstance(s, Index))


def openness_of(t: Term) -> int:
    """Minimal number of enclosing binders needed to close ``t``.

    An index i under d binders reaches out by i - d; the openness is the
    maximum of that over all occurrences, floored at 0.  Closed terms have
    openness 0, and openness_of(t) <= m iff t belongs to the (size, m)
    census family.
    """
    best = 0
    stack: list[tuple[Term, int]] = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, Index):
            if node.i - depth > best:
                best = node.i - depth
        elif isinstance(node, Abs):
            stack.append((node.body, depth + 1))
        else:
            stack.append((node.right, depth))
            stack.append((node.left, depth))
    return best


def head_lambdas(t: Term) -> int:
    """Length of the maximal leading chain of abstractions."""
    k = 0
    while isinstance(t, Abs):
        k += 1
        t = t.body
    return k


def variable_depths(t: Term) -> tuple[int, ...]:
    """Depths (count of Abs+App nodes strictly above) of each index
    occurrence, left-to-right."""
    out: list[int] = []
    stack: list[tuple[Term, int]] = [(t, 0)]
    while stack:
        node, depth = stack.pop()
        if isinstance(node, Index):
            out.append(depth)
        elif isinstance(node, Abs):
            stack.append((node.body, depth + 1))
        else:
            stack.append((node.right, depth + 1))
            stack.append((node.left, depth + 1))
    return tuple(out)


def term_metrics(t: Term) -> TermMetrics:
    """All per-term statistics in a single traversal."""
    size = 0
    openness = 0
    depths: list[int] = []
    stack: list[tuple[Term, int, int]] = [(t, 0, 0)]  # (node, binders, nodes above)
    while stack:
        node, binders, above = stack.pop()
        if isinstance(node, Index):
            depths.append(above)
            if node.i - binders > openness:
                openness = node.i - binders
        elif isinstance(node, Abs):
            size += 1
            stack.append((node.body, binders + 1, above + 1))
        else:
            size += 1
            stack.append((node.right, binders, above + 1))
            stack.append((node.left, binders, above + 1))
    return TermMetrics(
        size=size,
        openness=openness,
        head_lambdas=head_lambdas(t),
        variable_depths=tuple(depths),
    )


def is_normal_form(t: Term) -> bool:
    """True iff ``t`` contains no beta redex (no abstraction applied to an
    argument anywhere)."""
    for s in subterms(t):
        if isinstance(s, App) and isinstance(s.left, Abs):
            return False
    return True


# ---------------------------------------------------------------------------
# Printing

_LAMBDA = {"unicode": "λ", "ascii": "\\"}


def print_term(t: Term, style: str = "unicode") -> str:
    """Render ``t`` with minimal parentheses.

    Abstraction bodies that are applications are parenthesized (λ(1 1)),
    abstractions on either side of an application are parenthesized
    ((λ1)(λ1)), application chains associate left without parentheses
    (λ(1 1 1)), and a single space separates adjacent index tokens.
    ``style`` selects the binder glyph: "unicode" for λ, "ascii" for a
    backslash.  The output parses back to an equal term.
    """
    lam = _LAMBDA.get(style)
    if lam is None:
        raise ValueError(f"unknown style {style!r}, expected 'unicode' or 'ascii'")

    # Work stack of (kind, payload): "term" renders bare, "operand" renders
    # as an application's right operand (parenthesized unless an index),
    # "lit" appends literal text.
    out: list[str] = []
    stack: list[tuple[str, object]] = [("term", t)]
    while stack:
        kind, item = stack.pop()
        if kind == "lit":
            out.append(item)  # type: ignore[arg-type]
            continue
        node = item
        if kind == "operand" and not isinstance(node, Index):
            out.append("(")
            stack.append(("lit", ")"))
            stack.append(("term", node))
            continue
        if isinstance(node, Index):
            if out and out[-1][-1].isdigit():
                out.append(" ")  # keep "1 1" from reading as "11"
            out.append(str(node.i))
        elif isinstance(node, Abs):
            out.append(lam)
            if isinstance(node.body, App):
                out.append("(")
                stack.append(("lit", ")"))
            stack.append(("term", node.body))
        else:
            stack.append(("operand", node.right))
            if isinstance(node.left, Abs):
                out.append("(")
                stack.append(("lit", ")"))
                stack.append(("term", node.left))
            else:
                stack.append(("term", node.left))
    return "".join(out)


# ---------------------------------------------------------------------------
# Parsing

def parse_term(text: str) -> Term:
    """Parse the printable syntax back into a term.

    Grammar: a term is an abstraction (λ or backslash followed by a term,
    extending as far right as possible) or an application of one or more
    atoms; an atom is a positive integer or a parenthesized term.  An
    abstraction may appear unparenthesized as the last operand of an
    application, so "λ(1 λ2)" parses.  Whitespace separates tokens.
    """
    tokens = _tokenize(text)
    pos = 0

    def peek() -> tuple[str, object, int] | None:
        return tokens[pos] if pos < len(tokens) else None

    def parse(level: int) -> Term:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise TermSyntaxError("unexpected end of input", len(text))
        kind, value, at = tok
        if kind == "lambda":
            pos += 1
            return Abs(parse(level))
        node = parse_atom(level)
        while True:
            tok = peek()
            if tok is None:
                break
            kind, value, at = tok
            if kind in ("int", "open"):
                node = App(node, parse_atom(level))
            elif kind == "lambda":
                # Trailing abstraction swallows the rest of this term.
                pos += 1
                node = App(node, Abs(parse(level)))
                break
            else:
                break
        return node

    def parse_atom(level: int) -> Term:
        nonlocal pos
        tok = peek()
        if tok is None:
            raise TermSyntaxError("unexpected end of input", len(text))
        kind, value, at = tok
        if kind == "int":
            pos += 1
            if value < 1:  # type: ignore[operator]
                raise TermSyntaxError("de Bruijn indices start at 1", at)
            return Index(value)  # type: ignore[arg-type]
        if kind == "open":
            pos += 1
            node = parse(level + 1)
            tok = peek()
            if tok is None or tok[0] != "close":
                raise TermSyntaxError("expected ')'",
                                      tok[2] if tok else len(text))
            pos += 1
            return node
        raise TermSyntaxError(f"unexpected {_describe(kind)}", at)

    term = parse(0)
    tok = peek()
    if tok is not None:
        raise TermSyntaxError(f"unexpected {_describe(tok[0])} after term", tok[2])
    return term


def _describe(kind: str) -> str:
    return {"close": "')'", "lambda": "lambda", "int": "index",
            "open": "'('"}.get(kind, kind)


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens: list[tuple[str, object, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in ("λ", "\\"):
            tokens.append(("lambda", ch, i))
            i += 1
        elif ch == "(":
            tokens.append(("open", ch, i))
            i += 1
        elif ch == ")":
            tokens.append(("close", ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
        else:
            raise TermSyntaxError(f"unexpected character {ch!r}", i)
    if not tokens:
        raise TermSyntaxError("empty input", 0)
    return tokens


# ---------------------------------------------------------------------------
# JSON interchange

def term_to_json(t: Term) -> dict:
    """Term as a JSON-compatible dict: {"ix": i}, {"abs": t} or
    {"app": [l, r]}."""
    # Bottom-up assembly so deep terms do not recurse.
    done: dict[int, dict] = {}
    stack: list[tuple[Term, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Index):
            done[id(node)] = {"ix": node.i}
        elif not expanded:
            stack.append((node, True))
            if isinstance(node, Abs):
                stack.append((node.body, False))
            else:
                stack.append((node.left, False))
                stack.append((node.right, False))
        elif isinstance(node, Abs):
            done[id(node)] = {"abs": done[id(node.body)]}
        else:
            done[id(node)] = {"app": [done[id(node.left)], done[id(node.right)]]}
    return done[id(t)]


def term_from_json(data: object) -> Term:
    """Inverse of term_to_json.  Accepts parsed JSON, raises
    TermSyntaxError on malformed input."""
    if not isinstance(data, dict) or len(data) != 1:
        raise TermSyntaxError(f"expected an object with one of 'ix', 'abs', "
                              f"'app', got {data!r}")
    (key, value), = data.items()
    if key == "ix":
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise TermSyntaxError(f"'ix' wants a positive integer, got {value!r}")
        return Index(value)
    if key == "abs":
        return Abs(term_from_json(value))
    if key == "app":
        if not isinstance(value, list) or len(value) != 2:
            raise TermSyntaxError(f"'app' wants a two-element list, got {value!r}")
        return App(term_from_json(value[0]), term_from_json(value[1]))
    raise TermSyntaxError(f"unknown term constructor {key!r}")


def term_to_json_text(t: Term) -> str:
    return json.dumps(term_to_json(t), separators=(",", ":"))


def term_from_json_text(text: str) -> Term:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TermSyntaxError(f"invalid JSON: {exc}") from exc
    return term_from_json(data)
