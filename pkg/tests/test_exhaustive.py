import pytest
from hypothesis import given

from conftest import named_terms, names
from lamlab.alpha import alphap_successors
from lamlab.exhaustive import (
    Shape,
    _db_images,
    _numba_kernel,
    _terms_of,
    check_alpha_agreement,
    shapes,
    slot_closure,
    slot_successors,
    slots_of,
)
from lamlab.debruijn import to_db
from lamlab.random_terms import POOL6, XYZ, count_named


def test_shape_counts_match_term_counts():
    for n in range(1, 7):
        total = 0
        for tree in shapes(n):
            total += 3 ** Shape.of(tree).size
        assert total == count_named(n, 3)


@given(named_terms(max_leaves=6, var_names=names))
def test_slot_successors_mirror_alphap_steps(t):
    tree, slots = slots_of(t)
    shape = Shape.of(tree)
    assert shape.build(slots) == t
    pool = sorted(set(POOL6) | set(slots))
    expected = {r for _, r in alphap_successors(t, pool)}
    got = {shape.build(s) for s in slot_successors(shape, slots, pool)}
    assert got == expected


def test_slot_closure_of_identity():
    shape = Shape.of(("l", "v"))
    assert len(slot_closure(shape, (0, 0), range(3))) == 3


@pytest.mark.parametrize("length", [1, 2, 3, 4, 5])
def test_agreement_small_lengths_python(length):
    report = check_alpha_agreement(length, XYZ, POOL6, engine="python")
    assert report.terms == count_named(length, 3)
    assert report.disagreements == []


def test_small_pool_is_not_enough():
    # with only one spare name some equivalent terms cannot be connected
    report = check_alpha_agreement(5, XYZ, POOL6[:4], engine="python")
    assert report.disagreements
    # every failure is an equivalent pair that the closure misses
    assert all(d[2:] == (True, False) for d in report.disagreements)


def test_pool_must_extend_names():
    with pytest.raises(ValueError):
        check_alpha_agreement(2, XYZ, POOL6[1:])


@pytest.mark.skipif(_numba_kernel() is None, reason="numba not installed")
@pytest.mark.parametrize("length", [3, 4, 5])
def test_engines_agree(length):
    a = check_alpha_agreement(length, XYZ, POOL6, engine="python")
    b = check_alpha_agreement(length, XYZ, POOL6, engine="numba")
    assert (a.terms, a.classes, a.closure_nodes, a.disagreements) == (b.terms, b.classes, b.closure_nodes, b.disagreements)
    a = check_alpha_agreement(length, XYZ, POOL6[:4], engine="python")
    b = check_alpha_agreement(length, XYZ, POOL6[:4], engine="numba")
    assert (a.terms, a.classes, len(a.disagreements)) == (b.terms, b.classes, len(b.disagreements))


@pytest.mark.parametrize("length", range(1, 6))
def test_batched_translation_matches_to_db(length):
    names = tuple(XYZ)
    for tree in shapes(length):
        assert list(_db_images(tree, names)) == [to_db(t) for t in _terms_of(tree, names)]
