"""Lambda terms with de Bruijn indices.

Free index ``n`` at binder depth ``d`` refers to position ``n - d`` of the
free variable list x, y, z, x', ... (1-based).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import terms as named
from .errors import NotARedex
from .terms import Path, Strategy, VarName, choose_redex, replace_at, subterm_at, subterms


@dataclass(frozen=True, slots=True)
class Index:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("de Bruijn indices start at 1")

    def __str__(self):
        from .syntax import print_db

        return print_db(self)


@dataclass(frozen=True, slots=True)
class App:
    fun: "DBTerm"
    arg: "DBTerm"

    def __str__(self):
        from .syntax import print_db

        return print_db(self)


@dataclass(frozen=True, slots=True)
class Lam:
    body: "DBTerm"

    def __str__(self):
        from .syntax import print_db

        return print_db(self)


DBTerm = Union[Index, App, Lam]


def size(t: DBTerm) -> int:
    match t:
        case Index():
            return 1
        case App(f, a):
            return size(f) + size(a)
        case Lam(body):
            return 1 + size(body)
    raise TypeError(f"not a de Bruijn term: {t!r}")


def update(i: int, k: int, a: DBTerm) -> DBTerm:
    """Raise every index above ``k`` by ``i - 1``."""
    if i < 1 or k < 0:
        raise ValueError("update needs i >= 1 and k >= 0")
    match a:
        case Index(n):
            return Index(n + i - 1) if n > k else a
        case App(f, x):
            return App(update(i, k, f), update(i, k, x))
        case Lam(body):
            return Lam(update(i, k + 1, body))
    raise TypeError(f"not a de Bruijn term: {a!r}")


def meta_subst(a: DBTerm, i: int, b: DBTerm) -> DBTerm:
    """Substitute ``b`` for index ``i`` in ``a`` and close the gap."""
    if i < 1:
        raise ValueError("substitution level starts at 1")
    match a:
        case Index(n):
            if n > i:
                return Index(n - 1)
            if n == i:
                return update(i, 0, b)
            return a
        case App(f, x):
            return App(meta_subst(f, i, b), meta_subst(x, i, b))
        case Lam(body):
            return Lam(meta_subst(body, i + 1, b))
    raise TypeError(f"not a de Bruijn term: {a!r}")


def is_redex(t: DBTerm) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Lam)


def redexes(t: DBTerm) -> list[Path]:
    return [p for p, s in subterms(t) if is_redex(s)]


def beta1_step(t: DBTerm, p: Path) -> DBTerm:
    r = subterm_at(t, p)
    if not is_redex(r):
        raise NotARedex(f"no redex at {named.format_path(p)}")
    return replace_at(t, p, meta_subst(r.fun.body, 1, r.arg))


def to_db(t: named.NamedTerm) -> DBTerm:
    # env maps a bound name to the depth of its innermost binder.  This runs
    # millions of times in the exhaustive checks, hence type dispatch.
    env: dict[VarName, int] = {}

    def walk(s, depth):
        cls = type(s)
        if cls is named.Var:
            d = env.get(s.name)
            return Index(depth - d + 1 if d is not None else depth + s.name.index + 1)
        if cls is named.App:
            return App(walk(s.fun, depth), walk(s.arg, depth))
        if cls is not named.Lam:
            raise TypeError(f"not a named term: {s!r}")
        v = s.binder
        outer = env.get(v)
        env[v] = depth + 1
        result = Lam(walk(s.body, depth + 1))
        if outer is None:
            del env[v]
        else:
            env[v] = outer
        return result

    return walk(t, 0)


def _outer_names(t: DBTerm, depth: int, ctx: tuple) -> set[VarName]:
    # names of indices in t that escape the ``depth`` binders just above it
    out = set()
    stack = [(t, depth)]
    while stack:
        s, d = stack.pop()
        match s:
            case Index(n):
                if n > d:
                    rel = n - d
                    out.add(ctx[-rel] if rel <= len(ctx) else VarName.from_index(rel - len(ctx) - 1))
            case App(f, a):
                stack.append((f, d))
                stack.append((a, d))
            case Lam(body):
                stack.append((body, d + 1))
    return out


def from_db(t: DBTerm) -> named.NamedTerm:
    """Name every binder with the first variable not free in its body."""

    def walk(s, ctx):
        match s:
            case Index(n):
                if n <= len(ctx):
                    return named.Var(ctx[-n])
                return named.Var(VarName.from_index(n - len(ctx) - 1))
            case App(f, a):
                return named.App(walk(f, ctx), walk(a, ctx))
            case Lam(body):
                name = named.fresh_var(_outer_names(body, 1, ctx))
                return named.Lam(name, walk(body, ctx + (name,)))
        raise TypeError(f"not a de Bruijn term: {s!r}")

    return walk(t, ())


def step(t: DBTerm, strategy=Strategy.LEFTMOST_OUTERMOST):
    """One beta1 step at the strategy's redex, or None in normal form."""
    found = step_with_path(t, strategy)
    return None if found is None else found[1]


def step_with_path(t: DBTerm, strategy=Strategy.LEFTMOST_OUTERMOST):
    """Like :func:`step` but also reports where the redex was."""
    paths = redexes(t)
    if not paths:
        return None
    p = choose_redex(paths, strategy)
    return p, beta1_step(t, p)
