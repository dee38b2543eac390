"""Named lambda terms over the ordered alphabet x, y, z, x', y', z', ...

Terms are immutable, hashable trees.  A one-hole context is represented by
a term together with a :data:`Path` to the hole.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Iterator, Union

from .errors import InvalidPath

_BASES = "xyz"
_RANK = {b: i for i, b in enumerate(_BASES)}


@dataclass(frozen=True, slots=True)
class VarName:
    """A variable ``base`` followed by ``primes`` prime marks.

    Ordering follows the alphabet x, y, z, x', y', z', x'', ...
    """

    base: str
    primes: int = 0

    def __post_init__(self):
        if self.base not in _RANK or self.primes < 0:
            raise ValueError(f"bad variable {self.base!r}/{self.primes}")

    @property
    def index(self) -> int:
        return 3 * self.primes + _RANK[self.base]

    def __hash__(self) -> int:
        return 3 * self.primes + _RANK[self.base]

    @classmethod
    def from_index(cls, index: int) -> VarName:
        if index < 0:
            raise ValueError("variable index must be non-negative")
        primes, rank = divmod(index, 3)
        return cls(_BASES[rank], primes)

    @classmethod
    def parse(cls, text: str) -> VarName:
        base, primes = text[:1], text[1:]
        if base not in _RANK or primes.strip("'"):
            raise ValueError(f"not a variable name: {text!r}")
        return cls(base, len(primes))

    def __lt__(self, other: VarName) -> bool:
        return self.index < other.index

    def __le__(self, other: VarName) -> bool:
        return self.index <= other.index

    def __str__(self) -> str:
        return self.base + "'" * self.primes

    def __repr__(self) -> str:
        return f"VarName({str(self)!r})"


def var(text: str) -> VarName:
    return VarName.parse(text)


X, Y, Z = var("x"), var("y"), var("z")


class Step(enum.Enum):
    FUN = "fun"
    ARG = "arg"
    BODY = "body"
    # explicit-substitution closures: A[i := B] has a target and a payload
    TARGET = "target"
    PAYLOAD = "payload"


Path = tuple  # tuple[Step, ...]


class Strategy(str, enum.Enum):
    LEFTMOST_OUTERMOST = "outermost"
    LEFTMOST_INNERMOST = "innermost"


def choose_redex(paths: list[Path], strategy) -> Path:
    """Pick from redex paths listed in pre-order."""
    if Strategy(strategy) is Strategy.LEFTMOST_OUTERMOST:
        return paths[0]
    for p in paths:
        if not any(len(q) > len(p) and q[: len(p)] == p for q in paths):
            return p
    raise ValueError("no redex to choose from")


def format_path(path: Path) -> str:
    return ".".join(step.value for step in path) if path else "root"


@dataclass(frozen=True, slots=True)
class Var:
    name: VarName

    def __str__(self):
        from .syntax import print_named

        return print_named(self)


@dataclass(frozen=True, slots=True)
class App:
    fun: "NamedTerm"
    arg: "NamedTerm"

    def __str__(self):
        from .syntax import print_named

        return print_named(self)


@dataclass(frozen=True, slots=True)
class Lam:
    binder: VarName
    body: "NamedTerm"

    def __str__(self):
        from .syntax import print_named

        return print_named(self)


NamedTerm = Union[Var, App, Lam]


def length(t: NamedTerm) -> int:
    match t:
        case Var():
            return 1
        case App(f, a):
            return length(f) + length(a)
        case Lam(_, body):
            return 1 + length(body)
    raise TypeError(f"not a named term: {t!r}")


def free_vars(t: NamedTerm) -> frozenset[VarName]:
    match t:
        case Var(v):
            return frozenset((v,))
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case Lam(v, body):
            return free_vars(body) - {v}
    raise TypeError(f"not a named term: {t!r}")


def bound_vars(t: NamedTerm) -> frozenset[VarName]:
    """Variables with at least one binding occurrence."""
    match t:
        case Var():
            return frozenset()
        case App(f, a):
            return bound_vars(f) | bound_vars(a)
        case Lam(v, body):
            return bound_vars(body) | {v}
    raise TypeError(f"not a named term: {t!r}")


def all_vars(t: NamedTerm) -> frozenset[VarName]:
    return free_vars(t) | bound_vars(t)


def strict_eq(a: NamedTerm, b: NamedTerm) -> bool:
    return a == b


def children(t) -> list[tuple[Step, object]]:
    """Immediate subterms with the step leading to each.

    Works for named, de Bruijn and explicit-substitution terms alike: every
    node type exposes its children through the same field names.
    """
    if hasattr(t, "fun"):
        return [(Step.FUN, t.fun), (Step.ARG, t.arg)]
    if hasattr(t, "target"):
        return [(Step.TARGET, t.target), (Step.PAYLOAD, t.payload)]
    if hasattr(t, "body"):
        return [(Step.BODY, t.body)]
    return []


_FIELD = {
    Step.FUN: "fun",
    Step.ARG: "arg",
    Step.BODY: "body",
    Step.TARGET: "target",
    Step.PAYLOAD: "payload",
}


def subterm_at(t, path: Iterable[Step]):
    for i, step in enumerate(path):
        field = _FIELD[step]
        if not hasattr(t, field):
            raise InvalidPath(f"step {i} ({step.value}) does not apply to {type(t).__name__}")
        t = getattr(t, field)
    return t


def replace_at(t, path: Iterable[Step], s):
    """Fill the hole at ``path`` with ``s``.  Hole filling may capture."""
    path = tuple(path)
    if not path:
        return s
    step, rest = path[0], path[1:]
    field = _FIELD[step]
    if not hasattr(t, field):
        raise InvalidPath(f"step {step.value} does not apply to {type(t).__name__}")
    return replace(t, **{field: replace_at(getattr(t, field), rest, s)})


def subterms(t) -> Iterator[tuple[Path, object]]:
    """All (path, subterm) pairs in pre-order (left to right, outer first)."""
    stack = [((), t)]
    while stack:
        path, s = stack.pop()
        yield path, s
        for step, child in reversed(children(s)):
            stack.append((path + (step,), child))


def binder_paths(t: NamedTerm) -> list[Path]:
    """Paths of every abstraction, left to right."""
    return [p for p, s in subterms(t) if isinstance(s, Lam)]


class OccurrenceKind(enum.Enum):
    FREE = "free"
    BOUND = "bound"
    BINDING = "binding"


def occurrences(t: NamedTerm) -> list[tuple[Path, VarName, OccurrenceKind]]:
    """Classify every variable occurrence.

    The binding occurrence of ``\\v`` is reported at the abstraction's path.
    """
    out = []

    def walk(s, path, scope):
        match s:
            case Var(v):
                kind = OccurrenceKind.BOUND if v in scope else OccurrenceKind.FREE
                out.append((path, v, kind))
            case App(f, a):
                walk(f, path + (Step.FUN,), scope)
                walk(a, path + (Step.ARG,), scope)
            case Lam(v, body):
                out.append((path, v, OccurrenceKind.BINDING))
                walk(body, path + (Step.BODY,), scope | {v})

    walk(t, (), frozenset())
    return out


def fresh_var(avoid: Iterable[VarName]) -> VarName:
    """The first variable in the alphabet order that is not in ``avoid``."""
    taken = {v.index for v in avoid}
    i = 0
    while i in taken:
        i += 1
    return VarName.from_index(i)
