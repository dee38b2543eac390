"""Binder renaming: alpha steps, alpha-prime steps, clean terms and equivalence.

An alpha step renames ``\\v.A`` to ``\\v'.A<<v:=v'>>`` (ordered replacement).
An alpha-prime step renames by plain grafting but only when nothing can go
wrong: ``v'`` is not free in ``vA`` and neither name is bound inside ``A``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import debruijn
from .errors import NotAnAbstraction, SideConditionViolated
from .substitution import graft, replace_ordered
from .terms import (
    Lam,
    NamedTerm,
    Path,
    Var,
    VarName,
    all_vars,
    binder_paths,
    bound_vars,
    format_path,
    free_vars,
    fresh_var,
    replace_at,
    subterm_at,
)


class Flavor(enum.Enum):
    ALPHA = "alpha"
    ALPHA_PRIME = "alpha'"


@dataclass(frozen=True)
class AlphaStep:
    path: Path
    old_binder: VarName
    new_binder: VarName
    flavor: Flavor

    def apply(self, t: NamedTerm) -> NamedTerm:
        lam = _abstraction_at(t, self.path)
        if lam.binder != self.old_binder:
            raise SideConditionViolated(
                f"expected binder {self.old_binder} at {format_path(self.path)}, found {lam.binder}"
            )
        if self.flavor is Flavor.ALPHA:
            return alpha_step(t, self.path, self.new_binder)
        return alphap_step(t, self.path, self.new_binder)


def _abstraction_at(t, p) -> Lam:
    s = subterm_at(t, p)
    if not isinstance(s, Lam):
        raise NotAnAbstraction(f"no abstraction at {format_path(p)}")
    return s


def alpha_step(t: NamedTerm, p: Path, v_new: VarName) -> NamedTerm:
    lam = _abstraction_at(t, p)
    if v_new in free_vars(lam.body):
        raise SideConditionViolated(f"{v_new} is free in the body")
    renamed = Lam(v_new, replace_ordered(lam.body, lam.binder, Var(v_new)))
    return replace_at(t, p, renamed)


def alphap_violation(lam: Lam, v_new: VarName) -> str | None:
    """Why renaming ``lam`` to ``v_new`` is not an alpha-prime step, or None."""
    v, body = lam.binder, lam.body
    if v_new == v or v_new in free_vars(body):
        return f"{v_new} is free in {v} {body}"
    bv = bound_vars(body)
    if v in bv:
        return f"{v} is bound inside the body"
    if v_new in bv:
        return f"{v_new} is bound inside the body"
    return None


def alphap_step(t: NamedTerm, p: Path, v_new: VarName) -> NamedTerm:
    lam = _abstraction_at(t, p)
    problem = alphap_violation(lam, v_new)
    if problem:
        raise SideConditionViolated(problem)
    return replace_at(t, p, Lam(v_new, graft(lam.body, lam.binder, Var(v_new))))


def is_clean(t: NamedTerm) -> bool:
    binders = [subterm_at(t, p).binder for p in binder_paths(t)]
    return len(set(binders)) == len(binders) and not (set(binders) & free_vars(t))


def cleanup(t: NamedTerm) -> tuple[NamedTerm, list[AlphaStep]]:
    """Rename binders with alpha-prime steps until the term is clean.

    Scanning binders left to right, a binder is renamed when its name is free
    in ``t`` or was already used by an earlier binder.  New names are the
    smallest ones avoiding every variable of ``t`` and each other.  The steps
    are applied innermost-last-first (reverse pre-order) so that no renamed
    binder still has a namesake inside its body, which keeps every step legal.
    """
    paths = binder_paths(t)
    free = free_vars(t)
    taken = set(all_vars(t))
    seen: set[VarName] = set()
    plan = []
    for p in paths:
        v = subterm_at(t, p).binder
        if v in free or v in seen:
            new = fresh_var(taken)
            taken.add(new)
            plan.append((p, v, new))
        seen.add(v)
    steps = []
    for p, old, new in reversed(plan):
        t = alphap_step(t, p, new)
        steps.append(AlphaStep(p, old, new, Flavor.ALPHA_PRIME))
    return t, steps


def cleanup_with(t: NamedTerm, names: Iterable[VarName]) -> tuple[NamedTerm, list[AlphaStep]]:
    """Like :func:`cleanup` but taking the new binder names from ``names``.

    Names that are variables of ``t`` or repeat an earlier pick are skipped.
    Raises ``ValueError`` if ``names`` runs out.
    """
    paths = binder_paths(t)
    free = free_vars(t)
    taken = set(all_vars(t))
    supply = iter(names)
    seen: set[VarName] = set()
    plan = []
    for p in paths:
        v = subterm_at(t, p).binder
        if v in free or v in seen:
            for new in supply:
                if new not in taken:
                    break
            else:
                raise ValueError("ran out of names for cleanup")
            taken.add(new)
            plan.append((p, v, new))
        seen.add(v)
    steps = []
    for p, old, new in reversed(plan):
        t = alphap_step(t, p, new)
        steps.append(AlphaStep(p, old, new, Flavor.ALPHA_PRIME))
    return t, steps


def alpha_eq(a: NamedTerm, b: NamedTerm) -> bool:
    return debruijn.to_db(a) == debruijn.to_db(b)


def alpha_successors(t: NamedTerm, names: Iterable[VarName]) -> list[tuple[AlphaStep, NamedTerm]]:
    """Every non-identity alpha step from ``t`` whose new binder is in ``names``."""
    names = sorted(set(names))
    out = []
    for p in binder_paths(t):
        lam = subterm_at(t, p)
        fv = free_vars(lam.body)
        for v in names:
            if v == lam.binder or v in fv:
                continue
            out.append((AlphaStep(p, lam.binder, v, Flavor.ALPHA), alpha_step(t, p, v)))
    return out


def alphap_successors(t: NamedTerm, names: Iterable[VarName]) -> list[tuple[AlphaStep, NamedTerm]]:
    """Every alpha-prime step from ``t`` whose new binder is in ``names``."""
    names = sorted(set(names))
    out = []
    for p in binder_paths(t):
        lam = subterm_at(t, p)
        for v in names:
            if alphap_violation(lam, v) is None:
                step = AlphaStep(p, lam.binder, v, Flavor.ALPHA_PRIME)
                out.append((step, alphap_step(t, p, v)))
    return out


def _reachable(a, b, pool, depth, successors) -> bool:
    names = set(pool) | all_vars(a) | all_vars(b)
    if a == b:
        return True
    seen = {a}
    frontier = [a]
    for _ in range(depth):
        nxt = []
        for s in frontier:
            for _, r in successors(s, names):
                if r == b:
                    return True
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return False


def alpha_reachable(a: NamedTerm, b: NamedTerm, pool: Iterable[VarName], depth: int) -> bool:
    """Whether ``b`` is reachable from ``a`` in at most ``depth`` alpha steps.

    New binders are drawn from ``pool`` and the variables of ``a`` and ``b``.
    """
    return _reachable(a, b, pool, depth, alpha_successors)


def alphap_reachable(a: NamedTerm, b: NamedTerm, pool: Iterable[VarName], depth: int) -> bool:
    return _reachable(a, b, pool, depth, alphap_successors)


def alphap_closure(t: NamedTerm, names: Iterable[VarName], limit: int | None = None) -> set[NamedTerm]:
    """All terms reachable from ``t`` by alpha-prime steps over ``names``.

    ``limit`` bounds the number of steps; None means until saturation.
    """
    names = set(names)
    seen = {t}
    frontier = deque([(t, 0)])
    while frontier:
        s, d = frontier.popleft()
        if limit is not None and d >= limit:
            continue
        for _, r in alphap_successors(s, names):
            if r not in seen:
                seen.add(r)
                frontier.append((r, d + 1))
    return seen


def alpha_path(a: NamedTerm, b: NamedTerm) -> list[AlphaStep]:
    """A sequence of alpha steps leading from ``a`` to the equivalent ``b``.

    Every binder of ``a`` is renamed, outermost first, to its own brand-new
    name; doing the same to ``b`` meets in the same term, so the trace is
    ``a``'s renamings followed by ``b``'s renamings undone.
    """
    if not alpha_eq(a, b):
        raise ValueError(f"{a} and {b} are not alpha-equivalent")
    taken = set(all_vars(a) | all_vars(b))
    fresh = []
    for _ in binder_paths(a):
        v = fresh_var(taken)
        taken.add(v)
        fresh.append(v)

    def to_fresh(t):
        steps = []
        for p, v in zip(binder_paths(t), fresh):
            old = subterm_at(t, p).binder
            t = alpha_step(t, p, v)
            steps.append(AlphaStep(p, old, v, Flavor.ALPHA))
        return t, steps

    mid_a, forward = to_fresh(a)
    mid_b, backward = to_fresh(b)
    assert mid_a == mid_b
    undo = [AlphaStep(s.path, s.new_binder, s.old_binder, Flavor.ALPHA) for s in reversed(backward)]
    return [s for s in forward + undo if s.old_binder != s.new_binder]
