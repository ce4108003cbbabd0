import pytest

from lamenum.terms import Abs, App, Index, parse_term
from lamenum.typecheck import (
    Arrow,
    Equation,
    OpenTermError,
    TypeVar,
    UntypableError,
    build_constraint,
    canonical_type,
    decompose,
    format_type,
    is_typable,
    occurs_in,
    principal_type,
    solve,
    substitute,
    type_variables,
)

from oracles import all_terms, ground_typable, hm_principal, is_nf_oracle


def shape(ty):
    """Nested-tuple skeleton of a canonical type, for oracle comparison."""
    if isinstance(ty, Arrow):
        return (shape(ty.arg), shape(ty.res))
    return ty.vid


def test_constraints_for_identity():
    got = build_constraint(parse_term("λ1"))
    assert got.candidate == Arrow(TypeVar(0), TypeVar(0))
    assert got.equations == ()
    assert got.next_cursor == 1


def test_constraints_for_const():
    got = build_constraint(parse_term("λλ2"))
    assert got.candidate == Arrow(TypeVar(1), Arrow(TypeVar(0), TypeVar(1)))
    assert got.equations == ()
    assert got.next_cursor == 2


def test_constraints_for_self_application():
    got = build_constraint(parse_term("λ(1 1)"))
    assert got.candidate == Arrow(TypeVar(0), TypeVar(2))
    assert got.equations == (
        Equation(TypeVar(0), Arrow(TypeVar(1), TypeVar(2))),
        Equation(TypeVar(0), TypeVar(1)),
    )
    assert got.next_cursor == 3


def test_constraints_reject_open_terms():
    for t in [Index(1), Abs(Index(2)), App(Abs(Index(1)), Index(4))]:
        with pytest.raises(OpenTermError):
            build_constraint(t)


def test_occurs_check_is_strict():
    a, b = TypeVar(0), TypeVar(1)
    assert not occurs_in(a, a)
    assert not occurs_in(a, b)
    assert occurs_in(a, Arrow(a, b))
    assert occurs_in(a, Arrow(b, Arrow(b, a)))
    assert not occurs_in(a, Arrow(b, b))


def test_substitute_replaces_and_preserves_identity():
    a, b, c = TypeVar(0), TypeVar(1), TypeVar(2)
    ty = Arrow(a, Arrow(b, a))
    assert substitute(ty, a, c) == Arrow(c, Arrow(b, c))
    # untouched types come back as the same object, not a copy
    assert substitute(ty, c, Arrow(a, a)) is ty


def test_decompose_cases():
    a, b, c = TypeVar(0), TypeVar(1), TypeVar(2)
    assert decompose(Equation(Arrow(a, b), Arrow(b, c))) == [
        Equation(a, b), Equation(b, c)]
    # an arrow equated to a variable flips so the variable leads
    assert decompose(Equation(Arrow(a, b), c)) == [
        Equation(c, Arrow(a, b))]
    assert decompose(Equation(a, b)) == [Equation(a, b)]


def test_solve_detects_self_application_failure():
    _, ok = solve(build_constraint(parse_term("λ(1 1)")).equations)
    assert not ok


def test_solved_bindings_satisfy_the_original_equations():
    # Apply the solved substitution to both sides of every original
    # equation with an independent little resolver.
    def deep_apply(ty, env):
        if isinstance(ty, Arrow):
            return Arrow(deep_apply(ty.arg, env), deep_apply(ty.res, env))
        seen = set()
        while isinstance(ty, TypeVar) and ty in env and ty not in seen:
            seen.add(ty)
            ty = env[ty]
        if isinstance(ty, Arrow):
            return Arrow(deep_apply(ty.arg, env), deep_apply(ty.res, env))
        return ty

    for n in range(1, 6):
        for t in all_terms(n, 0):
            res = build_constraint(t)
            solved, ok = solve(res.equations)
            if not ok:
                continue
            env = {eq.left: eq.right for eq in solved}
            for eq in res.equations:
                assert (deep_apply(eq.left, env)
                        == deep_apply(eq.right, env)), (t, eq)


def test_typability_of_classic_combinators():
    assert is_typable(parse_term("λ1"))
    assert is_typable(parse_term("λλ2"))
    assert is_typable(parse_term("λλλ(3 1(2 1))"))
    assert is_typable(parse_term("λλ(2(2 1))"))
    assert is_typable(parse_term("(λ1)(λ1)"))
    assert not is_typable(parse_term("λ(1 1)"))
    assert not is_typable(parse_term("(λ(1 1))(λ(1 1))"))
    assert not is_typable(parse_term("λ(1(1 1))"))


def test_principal_types_of_classic_combinators():
    cases = [
        ("λ1", "α→α"),
        ("λλ2", "α→β→α"),
        ("λλ1", "α→β→β"),
        ("λλλ(3 1(2 1))", "(α→β→γ)→(α→β)→α→γ"),
        ("λλ(2(2 1))", "(α→α)→α→α"),
        ("(λ1)(λ1)", "α→α"),
        ("λλλ(3(2 1))", "(α→β)→(γ→α)→γ→β"),
    ]
    for text, expected in cases:
        assert format_type(principal_type(parse_term(text))) == expected


def test_principal_type_errors():
    with pytest.raises(UntypableError):
        principal_type(parse_term("λ(1 1)"))
    with pytest.raises(OpenTermError):
        principal_type(Index(1))
    with pytest.raises(OpenTermError):
        is_typable(Index(1))


def test_worked_example_principal_type():
    t = parse_term("λλ((1 λ1)(λ(3 λ(1 2 3))))")
    want = ("(((α→((β→β)→(α→γ)→δ)→ε)→ε)→γ)→((β→β)→(α→γ)→δ)→δ")
    assert format_type(principal_type(t)) == want


def test_type_variables_preorder_with_repeats():
    a, b, c = TypeVar(5), TypeVar(9), TypeVar(2)
    ty = Arrow(Arrow(a, b), Arrow(a, c))
    assert list(type_variables(ty)) == [a, b, a, c]


def test_canonical_type_renames_by_first_occurrence():
    ty = Arrow(Arrow(TypeVar(7), TypeVar(3)), TypeVar(7))
    want = Arrow(Arrow(TypeVar(0), TypeVar(1)), TypeVar(0))
    assert canonical_type(ty) == want
    assert canonical_type(want) == want


def test_format_type_parenthesizes_argument_arrows():
    a, b, c = TypeVar(0), TypeVar(1), TypeVar(2)
    assert format_type(Arrow(a, Arrow(b, c))) == "α→β→γ"
    assert format_type(Arrow(Arrow(a, b), c)) == "(α→β)→γ"
    assert format_type(Arrow(Arrow(Arrow(a, a), b), c)) == "((α→α)→β)→γ"
    assert format_type(Arrow(a, Arrow(Arrow(b, b), c))) == "α→(β→β)→γ"


def test_format_type_ascii_style():
    ty = Arrow(Arrow(TypeVar(0), TypeVar(1)), TypeVar(2))
    assert format_type(ty, style="ascii") == "(a->b)->c"
    with pytest.raises(ValueError):
        format_type(ty, style="fancy")


def test_format_type_survives_many_variables():
    # more distinct variables than letters in the alphabet: names pick up
    # a numeric suffix and stay pairwise distinct
    ty = TypeVar(29)
    for vid in reversed(range(29)):
        ty = Arrow(TypeVar(vid), ty)
    text = format_type(ty)
    names = text.split("→")
    assert len(names) == 30
    assert len(set(names)) == 30
    assert "ω→α1→β1" in text


def test_agrees_with_independent_unifier_everywhere():
    # One independent reimplementation (eager union-find unification),
    # compared on both the typable verdict and the principal type shape.
    for n in range(0, 7):
        for t in all_terms(n, 0):
            want = hm_principal(t)
            if want is None:
                assert not is_typable(t)
            else:
                assert shape(canonical_type(principal_type(t))) == want


def test_ground_derivation_search_is_sound():
    # A found ground derivation is a typability proof.
    for n in range(0, 6):
        cache = {}
        for t in all_terms(n, 0):
            if ground_typable(t, (), cache):
                assert is_typable(t)


def test_typable_counts_match_published_prefix():
    plain = [sum(is_typable(t) for t in all_terms(n, 0)) for n in range(7)]
    assert plain == [0, 1, 2, 9, 40, 238, 1564]
    nf = [sum(is_typable(t) for t in all_terms(n, 0) if is_nf_oracle(t))
          for n in range(7)]
    assert nf == [0, 1, 2, 6, 23, 108, 618]
