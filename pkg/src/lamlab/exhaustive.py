"""Fast alpha-prime closures for exhaustive checks over fixed term shapes.

A named term is a *shape* (the tree with names erased) plus the sequence of
names in its slots: one slot per variable occurrence and one per binder,
in pre-order.  Alpha-prime steps never change the shape, so a closure can
be computed on name tuples alone.  :func:`slot_successors` mirrors
:func:`lamlab.alpha.alphap_step` exactly and is tested against it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from . import debruijn as db
from .terms import App, Lam, NamedTerm, Var, VarName


@dataclass(frozen=True)
class Shape:
    """Slot layout of a term shape.

    ``tree`` uses ``"v"`` for an occurrence, ``("l", body)`` for an
    abstraction and ``("a", fun, arg)`` for an application.
    """

    tree: object
    size: int
    binders: tuple[int, ...]
    # per binder slot: (inner binder slots, ((occurrence slot, inner ancestor binder slots), ...))
    scopes: dict

    @classmethod
    def of(cls, tree) -> Shape:
        binders = []
        occs = []  # (slot, ancestor binder slots)
        ends = {}

        def walk(node, pos, anc):
            if node == "v":
                occs.append((pos, anc))
                return pos + 1
            if node[0] == "l":
                binders.append(pos)
                end = walk(node[1], pos + 1, anc + (pos,))
                ends[pos] = end
                return end
            return walk(node[2], walk(node[1], pos, anc), anc)

        size = walk(tree, 0, ())
        scopes = {}
        for j in binders:
            end = ends[j]
            inner = tuple(b for b in binders if j < b < end)
            inside = tuple((o, tuple(a for a in anc if a > j)) for o, anc in occs if j < o < end)
            scopes[j] = (inner, inside)
        return cls(tree, size, tuple(binders), scopes)

    def build(self, names: Sequence[VarName]) -> NamedTerm:
        it = iter(names)

        def make(node):
            if node == "v":
                return Var(next(it))
            if node[0] == "l":
                v = next(it)
                return Lam(v, make(node[1]))
            f = make(node[1])
            return App(f, make(node[2]))

        return make(self.tree)


def shapes(length: int) -> Iterator[object]:
    """Every shape of exactly ``length`` (occurrences plus binders)."""
    if length == 1:
        yield "v"
        return
    for body in shapes(length - 1):
        yield ("l", body)
    for k in range(1, length):
        rights = list(shapes(length - k))
        for f in shapes(k):
            for a in rights:
                yield ("a", f, a)


def slots_of(t: NamedTerm) -> tuple[object, tuple[VarName, ...]]:
    """Split a named term into its shape tree and its slot names."""
    names = []

    def walk(s):
        match s:
            case Var(v):
                names.append(v)
                return "v"
            case Lam(v, body):
                names.append(v)
                return ("l", walk(body))
            case App(f, a):
                return ("a", walk(f), walk(a))

    tree = walk(t)
    return tree, tuple(names)


def slot_successors(shape: Shape, s: tuple, pool: Sequence) -> list[tuple]:
    """All alpha-prime steps from the slot tuple ``s`` with new names from ``pool``."""
    out = []
    for j in shape.binders:
        inner, inside = shape.scopes[j]
        v = s[j]
        bound = {s[b] for b in inner}
        if v in bound:
            continue
        free = {s[o] for o, anc in inside if all(s[a] != s[o] for a in anc)}
        for w in pool:
            if w == v or w in free or w in bound:
                continue
            new = list(s)
            new[j] = w
            for o, _ in inside:
                if s[o] == v:
                    new[o] = w
            out.append(tuple(new))
    return out


def slot_closure(shape: Shape, s: tuple, pool: Sequence) -> set[tuple]:
    seen = {s}
    todo = [s]
    while todo:
        cur = todo.pop()
        for nxt in slot_successors(shape, cur, pool):
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


@dataclass
class AgreementReport:
    terms: int = 0
    classes: int = 0
    closure_nodes: int = 0
    # (representative, other term, alpha_eq verdict, reachability verdict)
    disagreements: list = field(default_factory=list)


@lru_cache(maxsize=None)
def _terms_of(tree, names) -> tuple:
    """All terms of a shape, in lexicographic order of their slot names."""
    if tree == "v":
        return tuple(Var(v) for v in names)
    if tree[0] == "l":
        return tuple(Lam(v, b) for v in names for b in _terms_of(tree[1], names))
    rights = _terms_of(tree[2], names)
    return tuple(App(f, a) for f in _terms_of(tree[1], names) for a in rights)


@lru_cache(maxsize=None)
def _db_images(tree, names, stack=()) -> tuple:
    """``to_db`` of every term in ``_terms_of(tree, names)``, same order.

    ``stack`` holds the enclosing binder names, outermost first.  Sharing
    the images of subterms across the whole product is what makes length 7
    affordable; the result is checked against ``to_db`` in the tests.
    """
    if tree == "v":
        out = []
        for v in names:
            for back, b in enumerate(reversed(stack)):
                if b == v:
                    out.append(db.Index(back + 1))
                    break
            else:
                out.append(db.Index(len(stack) + v.index + 1))
        return tuple(out)
    if tree[0] == "l":
        return tuple(db.Lam(b) for v in names for b in _db_images(tree[1], names, stack + (v,)))
    rights = _db_images(tree[2], names, stack)
    return tuple(db.App(f, a) for f in _db_images(tree[1], names, stack) for a in rights)


def check_alpha_agreement(
    length: int,
    names: Sequence[VarName],
    pool: Sequence[VarName],
    report: AgreementReport | None = None,
    engine: str = "auto",
) -> AgreementReport:
    """Compare alpha_eq with alpha-prime reachability on all terms of ``length``.

    Terms over ``names`` are grouped by their de Bruijn translation.  For
    each group the full alpha-prime closure of one member is computed with
    new binders from ``pool``; the group agrees when the closure meets the
    enumerated terms of that shape in exactly the group.  Every reachable
    term gets explored, so a term of another group showing up anywhere in
    the closure counts as a disagreement.

    ``engine`` picks the closure implementation: ``"python"`` uses
    :func:`slot_closure`, ``"numba"`` a compiled equivalent, and ``"auto"``
    the compiled one when numba is installed.
    """
    report = report or AgreementReport()
    pool = tuple(pool)
    names = tuple(names)
    if pool[: len(names)] != names:
        raise ValueError("the pool must start with the enumerated names")
    if engine == "auto":
        engine = "numba" if _numba_kernel() is not None else "python"
    for tree in shapes(length):
        shape = Shape.of(tree)
        images = _db_images(tree, names)
        # group id of each term, terms taken in lexicographic slot order
        ids: dict = {}
        gids = [ids.setdefault(d, len(ids)) for d in images]
        report.terms += len(images)
        report.classes += len(ids)
        if engine == "numba":
            _check_compiled(shape, gids, len(names), pool, report)
        else:
            members = [[] for _ in ids]
            combos = itertools.product(range(len(names)), repeat=shape.size)
            for g, combo in zip(gids, combos):
                members[g].append(combo)
            _check_python(shape, members, pool, report)
    _db_images.cache_clear()
    return report


def _check_python(shape, members, pool, report):
    group_of = {s: g for g, ms in enumerate(members) for s in ms}
    for g, ms in enumerate(members):
        closure = slot_closure(shape, ms[0], range(len(pool)))
        report.closure_nodes += len(closure)
        for s in ms:
            if s not in closure:
                report.disagreements.append((_term(shape, ms[0], pool), _term(shape, s, pool), True, False))
        for s in closure:
            other = group_of.get(s)
            if other is not None and other != g:
                report.disagreements.append((_term(shape, ms[0], pool), _term(shape, s, pool), False, True))


def _term(shape, s, pool):
    return shape.build([pool[i] for i in s])


def _tables(shape: Shape):
    import numpy as np

    nb = len(shape.binders)
    k = shape.size
    inner = np.full((max(nb, 1), k), -1, dtype=np.int64)
    occ = np.full((max(nb, 1), k), -1, dtype=np.int64)
    anc = np.full((max(nb, 1), k, k), -1, dtype=np.int64)
    for r, j in enumerate(shape.binders):
        ib, inside = shape.scopes[j]
        inner[r, : len(ib)] = ib
        for q, (o, a) in enumerate(inside):
            occ[r, q] = o
            anc[r, q, : len(a)] = a
    return np.array(shape.binders, dtype=np.int64), inner, occ, anc


def _decode(code, base, k):
    return tuple((code // base**i) % base for i in range(k))


def _check_compiled(shape, gids, n_names, pool, report):
    import numpy as np

    kernel = _numba_kernel()
    k = shape.size
    base = len(pool)
    gids = np.asarray(gids, dtype=np.int64)
    # term number m spells its slot names as the base-n_names digits of m,
    # most significant first; re-encode them base-len(pool), slot 0 lowest
    m = np.arange(n_names**k, dtype=np.int64)
    codes = np.zeros_like(m)
    for slot in range(k):
        digit = (m // n_names ** (k - 1 - slot)) % n_names
        codes += digit * base**slot
    group_of = np.full(base**k, -1, dtype=np.int64)
    group_of[codes] = gids
    _, first = np.unique(gids, return_index=True)
    reps = codes[first]
    sizes = np.bincount(gids)
    binders, inner, occ, anc = _tables(shape)
    found, foreign, nodes = kernel(k, base, binders, inner, occ, anc, group_of, reps)
    report.closure_nodes += int(nodes.sum())
    for g in np.nonzero((found != sizes) | (foreign >= 0))[0]:
        rep_slots = _decode(int(reps[g]), base, k)
        rep = _term(shape, rep_slots, pool)
        if found[g] != sizes[g]:
            # name the missing members with the python engine
            closure = slot_closure(shape, rep_slots, range(base))
            for c in codes[gids == g]:
                s = _decode(int(c), base, k)
                if s not in closure:
                    report.disagreements.append((rep, _term(shape, s, pool), True, False))
        if foreign[g] >= 0:
            other = _decode(int(foreign[g]), base, k)
            report.disagreements.append((rep, _term(shape, other, pool), False, True))


_KERNEL = []


def _numba_kernel():
    """The compiled closure search, or None without numba."""
    if _KERNEL:
        return _KERNEL[0]
    try:
        import numba
        import numpy as np
    except ImportError:
        _KERNEL.append(None)
        return None

    @numba.njit(cache=False)
    def kernel(k, base, binders, inner, occ, anc, group_of, reps):
        n = reps.shape[0]
        found = np.zeros(n, dtype=np.int64)
        foreign = np.full(n, -1, dtype=np.int64)
        nodes = np.zeros(n, dtype=np.int64)
        stamp = np.full(group_of.shape[0], -1, dtype=np.int64)
        weight = np.empty(k, dtype=np.int64)
        weight[0] = 1
        for i in range(1, k):
            weight[i] = weight[i - 1] * base
        digits = np.empty(k, dtype=np.int64)
        stack = np.empty(group_of.shape[0], dtype=np.int64)
        for g in range(n):
            top = 0
            stack[top] = reps[g]
            top += 1
            stamp[reps[g]] = g
            found[g] = 1
            nodes[g] = 1
            while top > 0:
                top -= 1
                code = stack[top]
                c = code
                for i in range(k):
                    digits[i] = c % base
                    c //= base
                for r in range(binders.shape[0]):
                    j = binders[r]
                    v = digits[j]
                    bound = 0
                    for q in range(k):
                        b = inner[r, q]
                        if b < 0:
                            break
                        bound |= 1 << digits[b]
                    if bound & (1 << v):
                        continue
                    free = 0
                    for q in range(k):
                        o = occ[r, q]
                        if o < 0:
                            break
                        name = digits[o]
                        captured = False
                        for t in range(k):
                            a = anc[r, q, t]
                            if a < 0:
                                break
                            if digits[a] == name:
                                captured = True
                                break
                        if not captured:
                            free |= 1 << name
                    blocked = free | bound | (1 << v)
                    for w in range(base):
                        if blocked & (1 << w):
                            continue
                        nxt = code + (w - v) * weight[j]
                        for q in range(k):
                            o = occ[r, q]
                            if o < 0:
                                break
                            if digits[o] == v:
                                nxt += (w - v) * weight[o]
                        if stamp[nxt] == g:
                            continue
                        stamp[nxt] = g
                        nodes[g] += 1
                        stack[top] = nxt
                        top += 1
                        h = group_of[nxt]
                        if h == g:
                            found[g] += 1
                        elif h >= 0 and foreign[g] < 0:
                            foreign[g] = nxt
        return found, foreign, nodes

    _KERNEL.append(kernel)
    return kernel
