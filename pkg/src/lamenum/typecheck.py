"""Simple-type reconstruction for closed terms.

Types are variables and arrows.  Constraint generation walks the term with
a cursor for fresh variables: an index occurrence at binder depth d

  * allocates d fresh variables as its view of the context (innermost
    binder first) and reports the i-th of them as its candidate type;
  * abstraction pops the context head into an arrow;
  * application emits `left = Arrow(right, fresh)`, equates the two operand
    views of the shared context pointwise, and reports the fresh variable.

By construction the residual context at the root is empty, so openness is
checked up front rather than read off the result.  The constraint set is
then solved by transformation rules: arrow/arrow equations decompose,
arrow/variable equations flip, variable equations become bindings that are
substituted through the remaining work list, and a variable equated to an
arrow mentioning it fails the occurs check (the check is strict, so the
benign `v = v` equations that substitution creates do not fail).  Every
closed term is either rejected or gets its principal type this way.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Union

from .terms import Abs, App, Index, LamenumError, Term, openness_of


class OpenTermError(LamenumError):
    """Type reconstruction is defined for closed terms only."""


class UntypableError(LamenumError):
    """The term has no simple type."""


@dataclass(frozen=True, slots=True)
class TypeVar:
    vid: int


@dataclass(frozen=True, slots=True)
class Arrow:
    arg: "SimpleType"
    res: "SimpleType"


SimpleType = Union[TypeVar, Arrow]


class Equation(NamedTuple):
    left: SimpleType
    right: SimpleType


@dataclass(frozen=True)
class ConstraintResult:
    """Candidate type for the whole term, the equations it must satisfy,
    and the first unused fresh-variable id."""

    candidate: SimpleType
    equations: tuple[Equation, ...]
    next_cursor: int


def build_constraint(t: Term) -> ConstraintResult:
    """Generate the typing constraints of a closed term."""
    spill = openness_of(t)
    if spill:
        raise OpenTermError(f"term has {spill} free variable(s)")
    ty, ctx, eqs, cursor = _build(t, 0, 0)
    assert not ctx, "closed terms leave no residual context"
    return ConstraintResult(candidate=ty, equations=tuple(eqs),
                            next_cursor=cursor)


def _build(t: Term, depth: int,
           cursor: int) -> tuple[SimpleType, list[SimpleType], list[Equation], int]:
    if isinstance(t, Index):
        ctx: list[SimpleType] = [TypeVar(cursor + j) for j in range(depth)]
        return ctx[t.i - 1], ctx, [], cursor + depth
    if isinstance(t, Abs):
        ty, ctx, eqs, cursor = _build(t.body, depth + 1, cursor)
        return Arrow(ctx[0], ty), ctx[1:], eqs, cursor
    lty, lctx, leqs, cursor = _build(t.left, depth, cursor)
    rty, rctx, reqs, cursor = _build(t.right, depth, cursor)
    result: SimpleType = TypeVar(cursor)
    eqs = [Equation(lty, Arrow(rty, result))]
    eqs.extend(Equation(a, b) for a, b in zip(lctx, rctx))
    eqs.extend(leqs)
    eqs.extend(reqs)
    return result, lctx, eqs, cursor + 1


def occurs_in(v: TypeVar, ty: SimpleType) -> bool:
    """Strict occurs check: true iff ``v`` appears properly inside an
    arrow.  A bare variable does not occur in itself."""
    if isinstance(ty, TypeVar):
        return False
    stack = [ty.arg, ty.res]
    while stack:
        s = stack.pop()
        if isinstance(s, TypeVar):
            if s == v:
                return True
        else:
            stack.append(s.arg)
            stack.append(s.res)
    return False


def substitute(ty: SimpleType, v: TypeVar, replacement: SimpleType) -> SimpleType:
    """``ty`` with every occurrence of variable ``v`` replaced."""
    if isinstance(ty, TypeVar):
        return replacement if ty == v else ty
    arg = substitute(ty.arg, v, replacement)
    res = substitute(ty.res, v, replacement)
    if arg is ty.arg and res is ty.res:
        return ty
    return Arrow(arg, res)


def decompose(eq: Equation) -> list[Equation]:
    """Split an arrow/arrow equation into component equations and flip an
    arrow/variable equation so the variable is on the left."""
    left, right = eq
    if isinstance(left, Arrow) and isinstance(right, Arrow):
        return (decompose(Equation(left.arg, right.arg))
                + decompose(Equation(left.res, right.res)))
    if isinstance(left, Arrow):
        return [Equation(right, left)]
    return [eq]


def _non_trivial(eq: Equation) -> bool:
    return not (isinstance(eq.left, TypeVar) and eq.left == eq.right)


def solve(equations) -> tuple[list[Equation], bool]:
    """Run the transformation rules to completion.

    Returns (bindings, ok).  Bindings are variable-to-type equations in the
    order they were made; each binding was substituted through the pending
    work only, so an earlier binding's right side may mention variables
    bound later (resolve with _resolve).  ok is False iff an occurs check
    failed, i.e. the original equations are unsatisfiable.
    """
    todo = deque(equations)
    solved: list[Equation] = []
    while todo:
        eq = todo.popleft()
        left, right = eq
        if isinstance(left, TypeVar):
            if occurs_in(left, right):
                return solved, False
            if left != right:
                todo = deque(
                    Equation(substitute(a, left, right),
                             substitute(b, left, right))
                    for a, b in todo)
            solved.append(Equation(left, right))
        else:
            for new_eq in reversed(decompose(eq)):
                if _non_trivial(new_eq):
                    todo.appendleft(new_eq)
    return solved, True


def _resolve(ty: SimpleType, bindings: list[Equation]) -> SimpleType:
    # Chronological pass: binding right sides only mention later-bound
    # variables (substitution removed each bound variable from the pending
    # work the moment it was bound), so one forward sweep settles the type.
    for v, replacement in bindings:
        ty = substitute(ty, v, replacement)
    return ty


def is_typable(t: Term) -> bool:
    """True iff the closed term ``t`` has a simple type."""
    _, ok = solve(build_constraint(t).equations)
    return ok


def principal_type(t: Term) -> SimpleType:
    """Most general simple type of the closed term ``t``, with variables
    renamed to 0, 1, 2, ... in first-occurrence order."""
    result = build_constraint(t)
    bindings, ok = solve(result.equations)
    if not ok:
        raise UntypableError("term has no simple type")
    return canonical_type(_resolve(result.candidate, bindings))


def type_variables(ty: SimpleType) -> Iterator[TypeVar]:
    """Variables of ``ty`` in first-occurrence order (argument before
    result), with repeats."""
    stack = [ty]
    while stack:
        s = stack.pop()
        if isinstance(s, TypeVar):
            yield s
        else:
            stack.append(s.res)
            stack.append(s.arg)


def canonical_type(ty: SimpleType) -> SimpleType:
    """Rename variables to 0, 1, 2, ... in first-occurrence order, so
    alpha-equivalent types compare equal."""
    names: dict[TypeVar, TypeVar] = {}
    for v in type_variables(ty):
        if v not in names:
            names[v] = TypeVar(len(names))

    def rename(s: SimpleType) -> SimpleType:
        if isinstance(s, TypeVar):
            return names[s]
        return Arrow(rename(s.arg), rename(s.res))

    return rename(ty)


_GREEK = "αβγδεζηθικμνξοπρστυφχψω"  # no lambda, that glyph means binder here
_LATIN = "abcdefghijklmnopqrstuvwxyz"


def format_type(ty: SimpleType, style: str = "unicode") -> str:
    """Render a type, arrows right-associative, argument arrows
    parenthesized.  Variables display as α, β, γ, ... (or a, b, c, ... in
    ascii style) in first-occurrence order, with a numeric suffix once the
    alphabet runs out."""
    if style == "unicode":
        letters, arrow = _GREEK, "→"
    elif style == "ascii":
        letters, arrow = _LATIN, "->"
    else:
        raise ValueError(f"unknown style {style!r}, expected 'unicode' or 'ascii'")

    names: dict[TypeVar, str] = {}
    for v in type_variables(ty):
        if v not in names:
            k = len(names)
            suffix = "" if k < len(letters) else str(k // len(letters))
            names[v] = letters[k % len(letters)] + suffix

    def render(s: SimpleType) -> str:
        if isinstance(s, TypeVar):
            return names[s]
        arg = render(s.arg)
        if isinstance(s.arg, Arrow):
            arg = f"({arg})"
        return f"{arg}{arrow}{render(s.res)}"

    return render(ty)
