import pytest
from hypothesis import given

from conftest import db_terms, named_terms
from lamlab import debruijn as db
from lamlab import parse_db, parse_named, print_db
from lamlab.beta import Relation, contract, redexes
from lamlab.errors import NotARedex
from lamlab.terms import Strategy, replace_at, subterm_at
from oracles import alpha_equivalent, beta_contract, meta_subst


def test_update_raises_free_indices():
    assert db.update(3, 1, parse_db(r"\ 1 2 3")) == parse_db(r"\ 1 2 5")
    with pytest.raises(ValueError):
        db.update(0, 0, parse_db("1"))


def test_meta_subst_clauses():
    assert db.meta_subst(parse_db("3"), 2, parse_db("1")) == parse_db("2")
    assert db.meta_subst(parse_db("1"), 2, parse_db("1")) == parse_db("1")
    assert db.meta_subst(parse_db("2"), 2, parse_db("1")) == parse_db("2")
    with pytest.raises(ValueError):
        db.meta_subst(parse_db("1"), 0, parse_db("1"))


@given(db_terms(), db_terms(max_leaves=6))
def test_meta_subst_matches_textbook_oracle(a, b):
    for i in (1, 2, 3):
        assert db.meta_subst(a, i, b) == meta_subst(a, i, b)


@given(db_terms())
def test_beta1_matches_textbook_oracle(t):
    for p in db.redexes(t):
        r = db.beta1_step(t, p)
        assert r == replace_at(t, p, beta_contract(subterm_at(t, p)))


def test_beta1_needs_a_redex():
    with pytest.raises(NotARedex):
        db.beta1_step(parse_db("1 2"), ())


def test_translation_examples():
    assert print_db(db.to_db(parse_named(r"\x y. y x"))) == r"\ \ 1 2"
    assert print_db(db.to_db(parse_named("x y z"))) == "1 2 3"
    assert db.from_db(parse_db(r"\ \ 1 2")) == parse_named(r"\x y. y x")


def test_from_db_avoids_free_names():
    assert db.from_db(parse_db(r"\ 1 2")) == parse_named(r"\y. y x")


@given(db_terms())
def test_to_db_inverts_from_db(t):
    assert db.to_db(db.from_db(t)) == t


@given(named_terms())
def test_from_db_inverts_to_db_up_to_alpha(t):
    assert alpha_equivalent(db.from_db(db.to_db(t)), t)


@given(named_terms())
def test_translation_commutes_with_beta(t):
    d = db.to_db(t)
    assert redexes(t) == db.redexes(d)
    for p in redexes(t):
        assert db.to_db(contract(t, p, Relation.BETA)) == db.beta1_step(d, p)


def test_step_with_strategy():
    t = parse_db(r"(\ 1) ((\ 1) 2)")
    assert db.step(t, Strategy.LEFTMOST_OUTERMOST) == parse_db(r"(\ 1) 2")
    path, r = db.step_with_path(t, Strategy.LEFTMOST_INNERMOST)
    assert r == parse_db(r"(\ 1) 2") and path != ()
    assert db.step(parse_db("1"), Strategy.LEFTMOST_OUTERMOST) is None


def test_size():
    assert db.size(parse_db(r"\ \ 5 2 1")) == 5
