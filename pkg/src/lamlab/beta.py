"""Beta reduction on named terms, in five flavours, plus graph exploration.

=========  ==========================================================
betaw      contract by grafting (captures; kept as a negative exhibit)
betabar    contract by ordered replacement
betap      same single step as betabar; its closure also allows alpha
betapp     clean the redex with alpha-prime steps, then graft
beta       contract by substitution modulo bound names
=========  ==========================================================
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import alpha
from .debruijn import to_db
from .errors import CapExceeded, InvalidTrace, LamLabError, NotARedex
from .substitution import graft, replace_ordered, subst_modulo
from .terms import (
    App,
    Lam,
    NamedTerm,
    Path,
    Strategy,
    VarName,
    all_vars,
    choose_redex,
    format_path,
    replace_at,
    subterm_at,
    subterms,
)


class Relation(str, enum.Enum):
    BETA_W = "betaw"
    BETA_BAR = "betabar"
    BETA_PRIME = "betap"
    BETA_PP = "betapp"
    BETA = "beta"


class Identity(enum.Enum):
    STRICT_EQ = "strict"
    ALPHA_EQ = "alpha"


ALPHA = "alpha"
ALPHA_PRIME = "alpha'"


@dataclass(frozen=True)
class TraceStep:
    kind: str
    path: Path
    result: NamedTerm


@dataclass
class ReductionTrace:
    start: NamedTerm
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def end(self) -> NamedTerm:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class NormalForm:
    term: NamedTerm
    trace: ReductionTrace


@dataclass(frozen=True)
class FuelExhausted:
    term: NamedTerm
    trace: ReductionTrace


def is_redex(t) -> bool:
    return isinstance(t, App) and isinstance(t.fun, Lam)


def redexes(t: NamedTerm, rel: Relation = Relation.BETA) -> list[Path]:
    """Paths of every redex, outer before inner, left before right.

    All five relations share the same redex shape.
    """
    return [p for p, s in subterms(t) if is_redex(s)]


def _contract_redex(r: App, rel: Relation) -> NamedTerm:
    v, body, arg = r.fun.binder, r.fun.body, r.arg
    match rel:
        case Relation.BETA_W:
            return graft(body, v, arg)
        case Relation.BETA_BAR | Relation.BETA_PRIME:
            return replace_ordered(body, v, arg)
        case Relation.BETA_PP:
            clean, _ = alpha.cleanup(r)
            return graft(clean.fun.body, clean.fun.binder, clean.arg)
        case Relation.BETA:
            return subst_modulo(body, v, arg)
    raise ValueError(f"unknown relation {rel!r}")


def _redex_at(t, p) -> App:
    r = subterm_at(t, p)
    if not is_redex(r):
        raise NotARedex(f"no redex at {format_path(p)}")
    return r


def contract(t: NamedTerm, p: Path, rel: Relation) -> NamedTerm:
    return replace_at(t, p, _contract_redex(_redex_at(t, p), Relation(rel)))


def contract_betapp_renamed(t: NamedTerm, p: Path, names: Iterable[VarName]) -> NamedTerm:
    """A betapp step that cleans the redex with binder names taken from ``names``.

    Different name supplies give different (alpha-equivalent) contracta,
    which is why betapp is a relation rather than a function.
    """
    clean, _ = alpha.cleanup_with(_redex_at(t, p), names)
    return replace_at(t, p, graft(clean.fun.body, clean.fun.binder, clean.arg))


def step(t: NamedTerm, rel: Relation, strategy=Strategy.LEFTMOST_OUTERMOST) -> Optional[NamedTerm]:
    found = step_with_path(t, rel, strategy)
    return None if found is None else found[1]


def step_with_path(t, rel, strategy=Strategy.LEFTMOST_OUTERMOST):
    paths = redexes(t, rel)
    if not paths:
        return None
    p = choose_redex(paths, strategy)
    return p, contract(t, p, rel)


def normalize(
    t: NamedTerm, rel: Relation, strategy=Strategy.LEFTMOST_OUTERMOST, fuel: int = 1000
) -> NormalForm | FuelExhausted:
    if fuel < 0:
        raise ValueError("fuel must be non-negative")
    rel = Relation(rel)
    trace = ReductionTrace(t)
    for _ in range(fuel):
        found = step_with_path(t, rel, strategy)
        if found is None:
            return NormalForm(t, trace)
        p, t = found
        trace.steps.append(TraceStep(rel.value, p, t))
    if not redexes(t, rel):
        return NormalForm(t, trace)
    return FuelExhausted(t, trace)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    kind: str
    path: Path


@dataclass
class ReductionGraph:
    """The part of a reduction graph reachable from ``nodes[0]``.

    ``frontier`` holds nodes that have successors not included because of
    the depth bound or the node cap; the graph is exhausted when it is empty.
    """

    relation: Relation
    identity: Identity
    nodes: list[NamedTerm]
    edges: list[Edge] = field(default_factory=list)
    frontier: set[int] = field(default_factory=set)
    cap_exceeded: bool = False

    @property
    def root(self) -> NamedTerm:
        return self.nodes[0]

    @property
    def exhausted(self) -> bool:
        return not self.frontier

    def successors(self, i: int) -> list[int]:
        return sorted({e.target for e in self.edges if e.source == i})

    def sinks(self) -> list[int]:
        has_out = {e.source for e in self.edges if e.source != e.target}
        return [i for i in range(len(self.nodes)) if i not in has_out and i not in self.frontier]

    def find(self, t: NamedTerm) -> Optional[int]:
        key = _key(self.identity)
        k = key(t)
        for i, s in enumerate(self.nodes):
            if key(s) == k:
                return i
        return None


def _key(identity):
    return to_db if identity is Identity.ALPHA_EQ else (lambda s: s)


def moves(t: NamedTerm, rel: Relation, names: Iterable[VarName] = ()) -> list[tuple[str, Path, NamedTerm]]:
    """Every single step the closure of ``rel`` may take from ``t``."""
    rel = Relation(rel)
    out = [(rel.value, p, contract(t, p, rel)) for p in redexes(t, rel)]
    if rel is Relation.BETA_PRIME:
        out += [(ALPHA, s.path, r) for s, r in alpha.alpha_successors(t, names)]
    elif rel is Relation.BETA_PP:
        out += [(ALPHA_PRIME, s.path, r) for s, r in alpha.alphap_successors(t, names)]
    return out


def explore(
    t: NamedTerm,
    rel: Relation,
    depth: int = 4,
    node_cap: int = 10000,
    alpha_pool: Iterable[VarName] = (),
    strict: bool = False,
) -> ReductionGraph:
    """Breadth-first exploration of everything reachable within ``depth`` steps.

    Nodes are identified up to strict equality, except for ``beta`` whose
    terms only matter up to bound names.  For ``betap`` and ``betapp`` the
    renaming steps use binder names from ``alpha_pool`` and the variables of
    ``t``.  Hitting ``node_cap`` sets ``cap_exceeded``; with ``strict`` it
    raises :class:`CapExceeded` carrying the partial graph instead.
    """
    rel = Relation(rel)
    identity = Identity.ALPHA_EQ if rel is Relation.BETA else Identity.STRICT_EQ
    key = _key(identity)
    names = set(alpha_pool) | all_vars(t)
    g = ReductionGraph(rel, identity, [t])
    index = {key(t): 0}
    level = [0]
    for d in range(depth + 1):
        nxt = []
        for n in level:
            for kind, path, r in moves(g.nodes[n], rel, names):
                k = key(r)
                j = index.get(k)
                if j is None:
                    if d == depth:
                        g.frontier.add(n)
                        continue
                    if len(g.nodes) >= node_cap:
                        g.cap_exceeded = True
                        g.frontier.add(n)
                        continue
                    j = len(g.nodes)
                    g.nodes.append(r)
                    index[k] = j
                    nxt.append(j)
                g.edges.append(Edge(n, j, kind, path))
        level = nxt
    if strict and g.cap_exceeded:
        raise CapExceeded(f"exploration stopped at {node_cap} nodes", partial=g)
    return g


def _sccs(n: int, succ: list[list[int]]) -> list[int]:
    """Tarjan's algorithm, iterative; returns the component id of each node."""
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


@dataclass(frozen=True)
class CRReport:
    joinable_all_pairs: bool
    witness_failures: list[tuple[NamedTerm, NamedTerm]]
    bounded: bool
    nodes: int


def check_cr(g: ReductionGraph) -> CRReport:
    """Decide whether any two reducts of the root have a common reduct in ``g``.

    In a finite graph every node reaches some bottom strongly connected
    component (one with no edges leaving it).  All pairs are joinable exactly
    when there is a single bottom component; otherwise the first-found
    members of two different bottom components are a failing pair.  When
    ``g`` is not exhausted the verdict only speaks for the explored part and
    the report says so.
    """
    n = len(g.nodes)
    targets = [set() for _ in range(n)]
    for e in g.edges:
        targets[e.source].add(e.target)
    succ = [sorted(ts) for ts in targets]
    comp = _sccs(n, succ)
    leaves = {comp[e.source] for e in g.edges if comp[e.source] != comp[e.target]}
    bottoms: dict[int, int] = {}
    for i in range(n):
        c = comp[i]
        if c not in leaves and c not in bottoms:
            bottoms[c] = i
    reps = sorted(bottoms.values())
    failures = [(g.nodes[a], g.nodes[b]) for k, a in enumerate(reps) for b in reps[k + 1 :]]
    return CRReport(len(reps) == 1, failures, not g.exhausted, n)


def reaches(
    a: NamedTerm, b: NamedTerm, rel: Relation, depth: int, alpha_pool: Iterable[VarName] = ()
) -> bool:
    """Whether ``b`` shows up within ``depth`` steps of ``a`` under ``rel``."""
    g = explore(a, rel, depth, node_cap=10**6, alpha_pool=set(alpha_pool) | all_vars(b))
    return g.find(b) is not None


def postpone_alpha(tr: ReductionTrace) -> tuple[ReductionTrace, ReductionTrace]:
    """Split a betap trace into betabar steps followed by alpha steps.

    Renaming never changes the shape of a term, so a betabar step taken
    after some renamings can be replayed at the same path on the term
    before them.  We keep that un-renamed term alongside the trace; it stays
    alpha-equivalent to the trace's current term because contracting
    equivalent redexes gives equivalent results.  The alpha tail then goes
    from the last un-renamed term to the trace's end.
    """
    current = tr.start
    plain = tr.start
    beta_steps = []
    for i, s in enumerate(tr.steps):
        match s.kind:
            case "alpha":
                try:
                    new = subterm_at(s.result, s.path).binder
                    expected = alpha.alpha_step(current, s.path, new)
                except (LamLabError, AttributeError) as exc:
                    raise InvalidTrace(f"step {i}: not an alpha step at {format_path(s.path)}") from exc
            case Relation.BETA_BAR.value | Relation.BETA_PRIME.value:
                try:
                    expected = contract(current, s.path, Relation.BETA_BAR)
                except LamLabError as exc:
                    raise InvalidTrace(f"step {i}: {exc}") from exc
                plain = contract(plain, s.path, Relation.BETA_BAR)
                beta_steps.append(TraceStep(Relation.BETA_BAR.value, s.path, plain))
            case _:
                raise InvalidTrace(f"step {i}: {s.kind} steps do not belong in a betap trace")
        if expected != s.result:
            raise InvalidTrace(f"step {i}: recorded result does not follow from the rule")
        current = s.result
    tail = ReductionTrace(plain)
    for a in alpha.alpha_path(plain, current):
        tail.steps.append(TraceStep(ALPHA, a.path, a.apply(tail.end)))
    return ReductionTrace(tr.start, beta_steps), tail

