"""Random and exhaustive term generation for property tests and experiments."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

from . import debruijn as db
from . import explicit as es
from .terms import App, Lam, NamedTerm, Var, VarName, var

XYZ = (var("x"), var("y"), var("z"))
POOL6 = XYZ + (var("x'"), var("y'"), var("z'"))


@lru_cache(maxsize=None)
def count_named(length: int, n_names: int = 3) -> int:
    """Number of named terms of exactly ``length`` over ``n_names`` names."""
    if length < 1:
        return 0
    if length == 1:
        return n_names
    total = n_names * count_named(length - 1, n_names)
    total += sum(count_named(k, n_names) * count_named(length - k, n_names) for k in range(1, length))
    return total


def enumerate_named(length: int, names: Sequence[VarName] = XYZ) -> Iterator[NamedTerm]:
    """Every named term of exactly ``length`` over ``names``."""
    if length == 1:
        for v in names:
            yield Var(v)
        return
    for v in names:
        for body in enumerate_named(length - 1, names):
            yield Lam(v, body)
    for k in range(1, length):
        rights = list(enumerate_named(length - k, names))
        for f in enumerate_named(k, names):
            for a in rights:
                yield App(f, a)


def random_named(rng: random.Random, length: int, names: Sequence[VarName] = XYZ) -> NamedTerm:
    """A random named term of exactly ``length``, uniform over all such terms."""
    n = len(names)
    if length == 1:
        return Var(rng.choice(names))
    lam = n * count_named(length - 1, n)
    r = rng.randrange(count_named(length, n))
    if r < lam:
        return Lam(rng.choice(names), random_named(rng, length - 1, names))
    r -= lam
    for k in range(1, length):
        weight = count_named(k, n) * count_named(length - k, n)
        if r < weight:
            return App(random_named(rng, k, names), random_named(rng, length - k, names))
        r -= weight
    raise AssertionError("unreachable")


def random_named_upto(rng, max_length, names=XYZ, min_length=1) -> NamedTerm:
    return random_named(rng, rng.randint(min_length, max_length), names)


def random_db(rng: random.Random, size: int, free: int = 3, closed: bool = False, depth: int = 0) -> db.DBTerm:
    """A random de Bruijn term of exactly ``size``.

    Indices range over the enclosing binders plus ``free`` free variables,
    or over the binders alone when ``closed``.
    """
    top = depth + (0 if closed else free)
    if size == 1:
        if top == 0:
            raise ValueError("a closed term of size 1 needs an enclosing binder")
        return db.Index(rng.randint(1, top))
    # a closed term at depth 0 cannot end in a bare index, so it needs a binder
    must_bind = closed and depth == 0 and size == 2
    if must_bind or rng.random() < 0.4:
        return db.Lam(random_db(rng, size - 1, free, closed, depth + 1))
    k = rng.randint(1, size - 1)
    if closed and depth == 0:
        # both halves must be closed at depth 0 and so need size >= 2
        if size < 4:
            return db.Lam(random_db(rng, size - 1, free, closed, depth + 1))
        k = rng.randint(2, size - 2)
    return db.App(random_db(rng, k, free, closed, depth), random_db(rng, size - k, free, closed, depth))


def random_db_upto(rng, max_size, free=3, closed=False, min_size=1) -> db.DBTerm:
    lo = max(min_size, 2 if closed else 1)
    return random_db(rng, rng.randint(lo, max_size), free, closed)


def random_redex(rng: random.Random, max_size: int, free: int = 3, closed: bool = False) -> db.App:
    """A random ``(\\ A) B`` of at most ``max_size``."""
    total = rng.randint(3, max(3, max_size))
    a_size = rng.randint(1, total - 2)
    body = random_db(rng, a_size, free, closed, depth=1)
    b_size = total - 1 - a_size
    if closed and b_size < 2:
        b_size = 2
    return db.App(db.Lam(body), random_db(rng, b_size, free, closed))


def random_es(
    rng: random.Random,
    size: int,
    free: int = 3,
    closed: bool = False,
    metas: Sequence[str] = (),
    depth: int = 0,
    max_level: int = 3,
) -> es.ESTerm:
    """A random explicit-substitution term of roughly ``size`` nodes.

    With ``closed`` every index stays in scope, so the s-normal form is a
    closed pure term.  At ``d`` variables in scope, the target of
    ``A[i := B]`` sees ``d + 1`` of them and the payload ``d + 1 - i``; the
    body of ``ph(i,k) A`` sees ``d + 1 - i``.
    """
    scope = depth + (0 if closed else free)

    def sub(n, d):
        return random_es(rng, n, free, closed, metas, d, max_level)

    if size <= 1:
        if metas and (not scope or rng.random() < 0.5):
            return es.Meta(rng.choice(metas))
        if not scope:
            return es.Lam(es.Index(1))
        return es.Index(rng.randint(1, scope))
    r = rng.random()
    if r < 0.3:
        return es.Lam(sub(size - 1, depth + 1))
    if r >= 0.85:
        i = rng.randint(1, min(max_level, depth + 1) if closed else max_level)
        k = rng.randint(0, max_level)
        return es.Phi(i, k, sub(size - 1, depth - i + 1 if closed else depth))
    if r < 0.65 or size < 3:
        k = rng.randint(1, size - 1)
        return es.App(sub(k, depth), sub(size - k, depth))
    level = rng.randint(1, min(max_level, depth + 1) if closed else max_level)
    k = rng.randint(1, size - 2)
    payload_depth = depth + 1 - level if closed else depth
    return es.Sigma(level, sub(k, depth + 1), sub(size - 1 - k, payload_depth))
