import pytest
from hypothesis import given

from conftest import db_terms, es_terms, named_terms
from lamlab import explicit as es
from lamlab import parse_db, parse_es, parse_named, print_db, print_es, print_named
from lamlab import debruijn as db
from lamlab.beta import Relation, explore
from lamlab.errors import ParseError, ZeroIndex
from lamlab.syntax import graph_to_dot
from lamlab.terms import App, Lam, Var, X, Y, Z, var


def test_named_examples():
    assert parse_named(r"\x y. x y") == Lam(X, Lam(Y, App(Var(X), Var(Y))))
    assert parse_named("x y z") == App(App(Var(X), Var(Y)), Var(Z))
    assert parse_named("λx. x") == Lam(X, Var(X))
    assert parse_named("x''") == Var(var("x''"))


@pytest.mark.parametrize(
    "term, text",
    [
        (Lam(X, Lam(Y, App(Var(Y), Var(X)))), r"\x y. y x"),
        (App(Lam(X, Var(X)), Var(Y)), r"(\x. x) y"),
        (App(App(Var(X), Var(Y)), Var(Z)), "x y z"),
        (App(Var(X), App(Var(Y), Var(Z))), "x (y z)"),
        (App(Var(X), Lam(Y, Var(Y))), r"x (\y. y)"),
    ],
)
def test_named_printing(term, text):
    assert print_named(term) == text


@pytest.mark.parametrize("bad", [r"\x.", "(x", "x)", "", "w", r"\. x"])
def test_named_errors(bad):
    with pytest.raises(ParseError):
        parse_named(bad)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_named("x w")
    assert err.value.position == 2
    assert "position 2" in str(err.value)


def test_db_examples():
    assert parse_db(r"\ \ 5 2 1") == db.Lam(db.Lam(db.App(db.App(db.Index(5), db.Index(2)), db.Index(1))))
    assert parse_db(r"\ 1 2") == db.Lam(db.App(db.Index(1), db.Index(2)))
    assert print_db(parse_db(r"(\ 1) (2 3)")) == r"(\ 1) (2 3)"
    with pytest.raises(ZeroIndex):
        parse_db("0")
    with pytest.raises(ParseError):
        parse_db("x")


def test_es_examples():
    assert parse_es(r"(\ X) Y", open_terms=True) == es.App(es.Lam(es.Meta("X")), es.Meta("Y"))
    assert parse_es(r"1[1 := \ 2]") == es.Sigma(1, es.Index(1), es.Lam(es.Index(2)))
    assert parse_es("ph(2,0) 3") == es.Phi(2, 0, es.Index(3))
    with pytest.raises(ParseError):
        parse_es("X")
    with pytest.raises(ParseError):
        parse_es("1[0 := 1]")


def test_closure_binds_tighter_than_application():
    assert parse_es("1 2[1 := 3]") == es.App(es.Index(1), es.Sigma(1, es.Index(2), es.Index(3)))
    assert parse_es("1[1 := 2][2 := 3]") == es.Sigma(2, es.Sigma(1, es.Index(1), es.Index(2)), es.Index(3))


@given(named_terms())
def test_named_round_trip(t):
    assert parse_named(print_named(t)) == t


@given(db_terms())
def test_db_round_trip(t):
    assert parse_db(print_db(t)) == t


@given(es_terms(metas=True))
def test_es_round_trip(t):
    assert parse_es(print_es(t), open_terms=True) == t


def test_dot_export():
    g = explore(parse_named("x"), Relation.BETA_BAR)
    dot = graph_to_dot(g)
    assert dot == 'digraph reductions {\n  n0 [label="x"];\n}\n'
    g = explore(parse_named(r"(\x. \y. y x) ((\z. x') y)"), Relation.BETA_BAR, depth=4)
    dot = graph_to_dot(g)
    assert "label=\"\\\\y. y x'\"" in dot
    assert "label=\"\\\\y'. y' x'\"" in dot
    assert "betabar @ root" in dot
    g = explore(parse_named(r"(\x. x) y"), Relation.BETA_BAR, depth=0)
    assert graph_to_dot(g).count("label=") == 1
