"""Four ways of replacing a variable by a term.

* :func:`graft` is plain textual replacement and may capture.
* :func:`replace_ordered` avoids capture by renaming a binder to the first
  variable that comes after every free variable involved.
* :func:`subst_modulo` is the same construction read modulo bound names; we
  return one representative of the class.
* :func:`subst_vc` assumes the variable convention and never renames.
"""

from __future__ import annotations

from .errors import ConventionViolated
from .terms import App, Lam, NamedTerm, Var, VarName, bound_vars, free_vars, fresh_var


def graft(a: NamedTerm, v: VarName, b: NamedTerm) -> NamedTerm:
    match a:
        case Var(w):
            return b if w == v else a
        case App(f, x):
            return App(graft(f, v, b), graft(x, v, b))
        case Lam(w, body):
            if w == v:
                return a
            return Lam(w, graft(body, v, b))
    raise TypeError(f"not a named term: {a!r}")


def first_after(names) -> VarName:
    """The first variable ordered after every variable in ``names``."""
    return VarName.from_index(max((v.index for v in names), default=-1) + 1)


def _capture_avoiding(a, v, b, fb, pick):
    # fb = free_vars(b), computed once per call chain
    match a:
        case Var(w):
            return b if w == v else a
        case App(f, x):
            return App(
                _capture_avoiding(f, v, b, fb, pick),
                _capture_avoiding(x, v, b, fb, pick),
            )
        case Lam(w, body):
            if w == v:
                return a
            fa = free_vars(body)
            if w not in fb or v not in fa:
                return Lam(w, _capture_avoiding(body, v, b, fb, pick))
            fresh = pick(fa | fb, v, w)
            renamed = _capture_avoiding(body, w, Var(fresh), frozenset((fresh,)), pick)
            return Lam(fresh, _capture_avoiding(renamed, v, b, fb, pick))
    raise TypeError(f"not a named term: {a!r}")


def _after_all_free(free, v, w):
    return first_after(free)


def _minimal_fresh(free, v, w):
    return fresh_var(free | {v, w})


def replace_ordered(a: NamedTerm, v: VarName, b: NamedTerm) -> NamedTerm:
    """Replace free ``v`` in ``a`` by ``b``, renaming binders deterministically.

    When a binder ``w`` would capture a free variable of ``b`` the binder is
    renamed to the first variable that comes after all free variables of the
    body and of ``b``.
    """
    return _capture_avoiding(a, v, b, free_vars(b), _after_all_free)


def subst_modulo(a: NamedTerm, v: VarName, b: NamedTerm) -> NamedTerm:
    """Capture-avoiding substitution; the result matters only up to bound names.

    Renamed binders get the smallest variable avoiding the free variables of
    body and ``b`` as well as ``v`` and the old binder.
    """
    return _capture_avoiding(a, v, b, free_vars(b), _minimal_fresh)


def satisfies_convention(t: NamedTerm) -> bool:
    return not (bound_vars(t) & free_vars(t))


def subst_vc(a: NamedTerm, v: VarName, b: NamedTerm) -> NamedTerm:
    """Substitution for terms written under the variable convention."""
    bv = bound_vars(a)
    if not (satisfies_convention(a) and satisfies_convention(b)):
        raise ConventionViolated("a name is both free and bound in an input term")
    if v in bv:
        raise ConventionViolated(f"{v} is bound in the host term")
    if bv & free_vars(b):
        names = ", ".join(sorted(map(str, bv & free_vars(b))))
        raise ConventionViolated(f"binders of the host term are free in the argument: {names}")
    return _graft_unchecked(a, v, b)


def _graft_unchecked(a, v, b):
    match a:
        case Var(w):
            return b if w == v else a
        case App(f, x):
            return App(_graft_unchecked(f, v, b), _graft_unchecked(x, v, b))
        case Lam(w, body):
            return Lam(w, _graft_unchecked(body, v, b))
    raise TypeError(f"not a named term: {a!r}")
