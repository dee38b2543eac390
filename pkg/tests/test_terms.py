import pytest
from hypothesis import given

from conftest import named_terms
from lamlab import parse_named
from lamlab.errors import InvalidPath
from lamlab.terms import (
    App,
    Lam,
    OccurrenceKind,
    Step,
    Strategy,
    Var,
    VarName,
    X,
    Y,
    Z,
    all_vars,
    binder_paths,
    bound_vars,
    choose_redex,
    format_path,
    free_vars,
    fresh_var,
    length,
    occurrences,
    replace_at,
    subterm_at,
    subterms,
    var,
)
from oracles import free_names


def test_variable_order_follows_the_alphabet():
    order = [var(s) for s in ["x", "y", "z", "x'", "y'", "z'", "x''"]]
    assert [v.index for v in order] == list(range(7))
    assert sorted(reversed(order)) == order
    assert VarName.from_index(5) == var("z'")


@pytest.mark.parametrize("bad", ["w", "", "x'y", "X"])
def test_bad_variable_names_are_rejected(bad):
    with pytest.raises(ValueError):
        var(bad)


def test_length_counts_occurrences_and_binders():
    assert length(parse_named(r"\x y. x y")) == 4
    assert length(parse_named("x")) == 1


def test_free_and_bound_variables():
    t = parse_named(r"(\x. x y) x")
    assert free_vars(t) == {X, Y}
    assert bound_vars(t) == {X}
    assert all_vars(t) == {X, Y}


@given(named_terms())
def test_free_vars_matches_oracle(t):
    assert free_vars(t) == free_names(t)


def test_fresh_var_takes_the_first_gap():
    assert fresh_var([]) == X
    assert fresh_var([X, Z]) == Y
    assert fresh_var([X, Y, Z]) == var("x'")


def test_paths_address_subterms():
    t = parse_named(r"(\x. x y) z")
    p = (Step.FUN, Step.BODY, Step.ARG)
    assert subterm_at(t, p) == Var(Y)
    assert replace_at(t, p, Var(Z)) == parse_named(r"(\x. x z) z")
    assert format_path(p) == "fun.body.arg"
    assert format_path(()) == "root"
    with pytest.raises(InvalidPath):
        subterm_at(t, (Step.BODY,))
    with pytest.raises(InvalidPath):
        replace_at(t, (Step.ARG, Step.FUN), Var(X))


def test_hole_filling_may_capture():
    ctx = Lam(X, Var(Y))
    assert replace_at(ctx, (Step.BODY,), Var(X)) == Lam(X, Var(X))


def test_subterms_are_in_preorder():
    t = parse_named(r"(\x. x) y")
    paths = [p for p, _ in subterms(t)]
    assert paths == [(), (Step.FUN,), (Step.FUN, Step.BODY), (Step.ARG,)]
    assert binder_paths(t) == [(Step.FUN,)]


def test_occurrences_are_classified():
    t = parse_named(r"\x. x y")
    kinds = [(str(v), k) for _, v, k in occurrences(t)]
    assert kinds == [("x", OccurrenceKind.BINDING), ("x", OccurrenceKind.BOUND), ("y", OccurrenceKind.FREE)]


def test_strategies_choose_outermost_or_innermost():
    paths = [(), (Step.FUN,), (Step.FUN, Step.BODY), (Step.ARG,)]
    assert choose_redex(paths, Strategy.LEFTMOST_OUTERMOST) == ()
    assert choose_redex(paths, Strategy.LEFTMOST_INNERMOST) == (Step.FUN, Step.BODY)


@given(named_terms())
def test_terms_are_hashable_values(t):
    assert hash(t) == hash(App(t, t).fun)
