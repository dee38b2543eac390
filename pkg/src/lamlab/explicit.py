"""The lambda-s calculus of explicit substitutions and its open-term extension.

A closure ``Sigma(i, A, B)`` is the object-level form of substituting ``B``
for index ``i`` in ``A``; ``Phi(i, k, A)`` is the object-level updating.
The extension for open terms adds six interaction rules between closures.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from . import debruijn as db
from .errors import CapExceeded, NotPure, RuleMismatch
from .terms import Path, Step, Strategy, choose_redex, format_path, replace_at, subterm_at


@dataclass(frozen=True, slots=True)
class Index:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("indices start at 1")

    def __str__(self):
        from .syntax import print_es

        return print_es(self)


@dataclass(frozen=True, slots=True)
class App:
    fun: "ESTerm"
    arg: "ESTerm"

    def __str__(self):
        from .syntax import print_es

        return print_es(self)


@dataclass(frozen=True, slots=True)
class Lam:
    body: "ESTerm"

    def __str__(self):
        from .syntax import print_es

        return print_es(self)


@dataclass(frozen=True, slots=True)
class Sigma:
    """``target[level := payload]``"""

    level: int
    target: "ESTerm"
    payload: "ESTerm"

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("substitution level starts at 1")

    def __str__(self):
        from .syntax import print_es

        return print_es(self)


@dataclass(frozen=True, slots=True)
class Phi:
    i: int
    k: int
    body: "ESTerm"

    def __post_init__(self):
        if self.i < 1 or self.k < 0:
            raise ValueError("updating needs i >= 1 and k >= 0")

    def __str__(self):
        from .syntax import print_es

        return print_es(self)


@dataclass(frozen=True, slots=True)
class Meta:
    name: str

    def __str__(self):
        return self.name


ESTerm = Union[Index, App, Lam, Sigma, Phi, Meta]


class Rule(enum.Enum):
    SIGMA_GEN = "sigma-generation"
    SIGMA_LAM = "sigma-lambda-transition"
    SIGMA_APP = "sigma-app-transition"
    SIGMA_DEST = "sigma-destruction"
    PHI_LAM = "phi-lambda-transition"
    PHI_APP = "phi-app-transition"
    PHI_DEST = "phi-destruction"
    SIGMA_SIGMA = "sigma-sigma"
    SIGMA_PHI1 = "sigma-phi-1"
    SIGMA_PHI2 = "sigma-phi-2"
    PHI_SIGMA = "phi-sigma"
    PHI_PHI1 = "phi-phi-1"
    PHI_PHI2 = "phi-phi-2"


class Ruleset(enum.Enum):
    LAMBDA_S = "ls"
    S_ONLY = "s"
    LAMBDA_SE = "lse"


_LAMBDA_S_RULES = frozenset(list(Rule)[:7])
_RULES = {
    Ruleset.LAMBDA_S: _LAMBDA_S_RULES,
    Ruleset.S_ONLY: _LAMBDA_S_RULES - {Rule.SIGMA_GEN},
    Ruleset.LAMBDA_SE: frozenset(Rule),
}


def size(t: ESTerm) -> int:
    match t:
        case Index() | Meta():
            return 1
        case App(f, a):
            return size(f) + size(a)
        case Lam(body) | Phi(_, _, body):
            return 1 + size(body)
        case Sigma(_, a, b):
            return 1 + size(a) + size(b)
    raise TypeError(f"not an explicit-substitution term: {t!r}")


def matching_rules(t: ESTerm) -> list[Rule]:
    """Rules whose left-hand side and side condition match ``t`` at the root."""
    match t:
        case App(Lam(), _):
            return [Rule.SIGMA_GEN]
        case Sigma(_, Lam(), _):
            return [Rule.SIGMA_LAM]
        case Sigma(_, App(), _):
            return [Rule.SIGMA_APP]
        case Sigma(_, Index(), _):
            return [Rule.SIGMA_DEST]
        case Sigma(j, Sigma(i, _, _), _):
            return [Rule.SIGMA_SIGMA] if i <= j else []
        case Sigma(j, Phi(i, k, _), _):
            if k < j < k + i:
                return [Rule.SIGMA_PHI1]
            if k + i <= j:
                return [Rule.SIGMA_PHI2]
            return []
        case Phi(_, _, Lam()):
            return [Rule.PHI_LAM]
        case Phi(_, _, App()):
            return [Rule.PHI_APP]
        case Phi(_, _, Index()):
            return [Rule.PHI_DEST]
        case Phi(_, k, Sigma(j, _, _)):
            return [Rule.PHI_SIGMA] if j <= k + 1 else []
        case Phi(_, k, Phi(j, l, _)):
            if l + j <= k:
                return [Rule.PHI_PHI1]
            if l <= k < l + j:
                return [Rule.PHI_PHI2]
            return []
    return []


def contract(t: ESTerm, rule: Rule) -> ESTerm:
    """Rewrite ``t`` at the root with ``rule``."""
    if rule not in matching_rules(t):
        raise RuleMismatch(f"{rule.value} does not apply to {t}")
    match rule, t:
        case Rule.SIGMA_GEN, App(Lam(a), b):
            return Sigma(1, a, b)
        case Rule.SIGMA_LAM, Sigma(i, Lam(a), b):
            return Lam(Sigma(i + 1, a, b))
        case Rule.SIGMA_APP, Sigma(i, App(a1, a2), b):
            return App(Sigma(i, a1, b), Sigma(i, a2, b))
        case Rule.SIGMA_DEST, Sigma(i, Index(n), b):
            if n > i:
                return Index(n - 1)
            if n == i:
                return Phi(i, 0, b)
            return Index(n)
        case Rule.PHI_LAM, Phi(i, k, Lam(a)):
            return Lam(Phi(i, k + 1, a))
        case Rule.PHI_APP, Phi(i, k, App(a1, a2)):
            return App(Phi(i, k, a1), Phi(i, k, a2))
        case Rule.PHI_DEST, Phi(i, k, Index(n)):
            return Index(n + i - 1) if n > k else Index(n)
        case Rule.SIGMA_SIGMA, Sigma(j, Sigma(i, a, b), c):
            return Sigma(i, Sigma(j + 1, a, c), Sigma(j - i + 1, b, c))
        case Rule.SIGMA_PHI1, Sigma(_, Phi(i, k, a), _):
            return Phi(i - 1, k, a)
        case Rule.SIGMA_PHI2, Sigma(j, Phi(i, k, a), b):
            return Phi(i, k, Sigma(j - i + 1, a, b))
        case Rule.PHI_SIGMA, Phi(i, k, Sigma(j, a, b)):
            return Sigma(j, Phi(i, k + 1, a), Phi(i, k + 1 - j, b))
        case Rule.PHI_PHI1, Phi(i, k, Phi(j, l, a)):
            return Phi(j, l, Phi(i, k + 1 - j, a))
        case Rule.PHI_PHI2, Phi(i, k, Phi(j, l, a)):
            return Phi(j + i - 1, l, a)
    raise AssertionError(f"unhandled rule {rule}")


def _children(t):
    match t:
        case App(f, a):
            return ((Step.FUN, f), (Step.ARG, a))
        case Lam(body) | Phi(_, _, body):
            return ((Step.BODY, body),)
        case Sigma(_, a, b):
            return ((Step.TARGET, a), (Step.PAYLOAD, b))
    return ()


def es_redexes(t: ESTerm, ruleset: Ruleset = Ruleset.LAMBDA_S) -> list[tuple[Path, Rule]]:
    """Every (path, rule) that applies, in pre-order."""
    allowed = _RULES[Ruleset(ruleset)]
    out = []
    stack = [((), t)]
    while stack:
        path, s = stack.pop()
        out.extend((path, r) for r in matching_rules(s) if r in allowed)
        for step, child in reversed(_children(s)):
            stack.append((path + (step,), child))
    return out


def es_apply(t: ESTerm, p: Path, rule: Rule) -> ESTerm:
    try:
        target = subterm_at(t, p)
    except Exception as exc:
        raise RuleMismatch(f"no subterm at {format_path(p)}") from exc
    return replace_at(t, p, contract(target, rule))


def successors(t: ESTerm, ruleset=Ruleset.LAMBDA_S) -> list[ESTerm]:
    return [es_apply(t, p, r) for p, r in es_redexes(t, ruleset)]


@dataclass(frozen=True)
class NormalForm:
    term: ESTerm
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    term: ESTerm
    steps: int


def s_normalize(t: ESTerm, fuel: int) -> NormalForm | FuelExhausted:
    """Apply the substitution rules (no sigma-generation) innermost first."""
    budget = [fuel]

    def norm(s):
        match s:
            case Index() | Meta():
                return s
            case App(f, a):
                s = App(norm(f), norm(a))
            case Lam(body):
                return Lam(norm(body))
            case Sigma(i, a, b):
                s = Sigma(i, norm(a), norm(b))
            case Phi(i, k, body):
                s = Phi(i, k, norm(body))
        for rule in matching_rules(s):
            if rule is not Rule.SIGMA_GEN and rule in _LAMBDA_S_RULES:
                if budget[0] == 0:
                    return s
                budget[0] -= 1
                return norm(contract(s, rule))
        return s

    result = norm(t)
    used = fuel - budget[0]
    if budget[0] == 0 and any(True for _ in es_redexes(result, Ruleset.S_ONLY)):
        return FuelExhausted(result, used)
    return NormalForm(result, used)


def es_step(t: ESTerm, ruleset=Ruleset.LAMBDA_S, strategy=Strategy.LEFTMOST_OUTERMOST):
    found = es_redexes(t, ruleset)
    if not found:
        return None
    paths = [p for p, _ in found]
    chosen = choose_redex(paths, strategy)
    rule = next(r for p, r in found if p == chosen)
    return chosen, rule, es_apply(t, chosen, rule)


def normalize(t: ESTerm, ruleset, fuel: int, strategy=Strategy.LEFTMOST_OUTERMOST, trace=None):
    """Iterate single steps of ``ruleset`` under ``strategy``.

    ``trace``, when a list, receives ``(rule, path, result)`` per step.
    """
    for used in range(fuel):
        nxt = es_step(t, ruleset, strategy)
        if nxt is None:
            return NormalForm(t, used)
        path, rule, t = nxt
        if trace is not None:
            trace.append((rule, path, t))
    if es_step(t, ruleset, strategy) is None:
        return NormalForm(t, fuel)
    return FuelExhausted(t, fuel)


def ls_normalize(t: ESTerm, fuel: int, strategy=Strategy.LEFTMOST_OUTERMOST):
    return normalize(t, Ruleset.LAMBDA_S, fuel, strategy)


def es_joinable(
    a: ESTerm,
    b: ESTerm,
    ruleset=Ruleset.LAMBDA_S,
    depth: int = 6,
    node_cap: int = 500,
) -> Optional[ESTerm]:
    """Search for a common reduct of ``a`` and ``b`` within ``depth`` steps each.

    Both reduction graphs are grown breadth first, one level at a time.
    Returns ``None`` when the depth bound is reached without a witness; this
    says nothing beyond the bounds.  Raises :class:`CapExceeded` when
    ``node_cap`` (per side) stops the search first.
    """
    seen = [{a: 0}, {b: 0}]
    frontiers = [deque([a]), deque([b])]
    if a == b:
        return a
    capped = False
    for _ in range(depth):
        for side in (0, 1):
            mine, other = seen[side], seen[1 - side]
            nxt = deque()
            for s in frontiers[side]:
                for r in successors(s, ruleset):
                    if r in mine:
                        continue
                    if len(mine) >= node_cap:
                        capped = True
                        break
                    mine[r] = mine[s] + 1
                    if r in other:
                        return r
                    nxt.append(r)
            frontiers[side] = nxt
        if not frontiers[0] and not frontiers[1] and not capped:
            return None
    if capped:
        raise CapExceeded(
            f"no common reduct found before the node cap ({node_cap}) was hit",
            partial=seen,
        )
    return None


def db_to_es(t: db.DBTerm) -> ESTerm:
    match t:
        case db.Index(n):
            return Index(n)
        case db.App(f, a):
            return App(db_to_es(f), db_to_es(a))
        case db.Lam(body):
            return Lam(db_to_es(body))
    raise TypeError(f"not a de Bruijn term: {t!r}")


def es_to_db(t: ESTerm) -> db.DBTerm:
    match t:
        case Index(n):
            return db.Index(n)
        case App(f, a):
            return db.App(es_to_db(f), es_to_db(a))
        case Lam(body):
            return db.Lam(es_to_db(body))
    raise NotPure(f"{type(t).__name__} node has no de Bruijn counterpart")


def is_pure(t: ESTerm) -> bool:
    try:
        es_to_db(t)
    except NotPure:
        return False
    return True
