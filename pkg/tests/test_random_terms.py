import random

from lamlab import debruijn as db
from lamlab import explicit as es
from lamlab.random_terms import (
    XYZ,
    count_named,
    enumerate_named,
    random_db,
    random_db_upto,
    random_es,
    random_named,
    random_redex,
)
from lamlab.terms import length


def test_enumeration_matches_count():
    for n in range(1, 6):
        terms = list(enumerate_named(n))
        assert len(terms) == len(set(terms)) == count_named(n)
        assert all(length(t) == n for t in terms)


def test_random_named_has_requested_length():
    rng = random.Random(1)
    assert all(length(random_named(rng, n)) == n for n in range(1, 15))
    assert all(v in XYZ for v in [random_named(rng, 1).name for _ in range(20)])


def _closed(t, depth=0):
    match t:
        case db.Index(n):
            return n <= depth
        case db.App(f, a):
            return _closed(f, depth) and _closed(a, depth)
        case db.Lam(body):
            return _closed(body, depth + 1)


def test_random_db_sizes_and_closedness():
    rng = random.Random(2)
    for _ in range(500):
        n = rng.randint(2, 20)
        t = random_db(rng, n, closed=True)
        assert db.size(t) == n and _closed(t)
        assert db.size(random_db_upto(rng, 10)) <= 10
        r = random_redex(rng, 12, closed=True)
        assert db.is_redex(r) and _closed(r)


def test_closed_random_es_terms_normalize_to_closed_pure_terms():
    rng = random.Random(3)
    for _ in range(1000):
        t = random_es(rng, rng.randint(1, 25), closed=True)
        out = es.s_normalize(t, 10 * es.size(t) ** 2)
        assert isinstance(out, es.NormalForm)
        assert _closed(es.es_to_db(out.term))


def test_random_es_with_metas():
    rng = random.Random(4)
    seen = set()
    for _ in range(200):
        t = random_es(rng, 6, metas=["X", "Y"])
        seen |= {type(s).__name__ for s in _nodes(t)}
    assert {"Meta", "Sigma", "Phi", "Lam", "App", "Index"} <= seen


def _nodes(t):
    yield t
    for field in ("fun", "arg", "body", "target", "payload"):
        if hasattr(t, field):
            yield from _nodes(getattr(t, field))
