r"""Concrete syntax for the three term languages, plus DOT export.

Named terms::

    term := '\' var+ '.' term | atom+
    atom := var | '(' term ')'
    var  := [xyz] "'"*

De Bruijn terms use ``\`` followed directly by the body and whitespace
separated indices.  Explicit-substitution terms add ``A[i := B]`` for a
substitution closure, ``ph(i,k) A`` for an updating and uppercase
metavariables.  ``λ`` is accepted as an alias for ``\``.
"""

from __future__ import annotations

import re

from . import debruijn as db
from . import explicit as es
from .errors import ParseError, ZeroIndex
from .terms import App, Lam, NamedTerm, Var, VarName

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<lam>\\|λ)
  | (?P<ph>ph\()
  | (?P<var>[xyz]'*)
  | (?P<meta>[A-Z][A-Za-z0-9_]*)
  | (?P<nat>\d+)
  | (?P<assign>:=)
  | (?P<punct>[.()\[\],])
    """,
    re.VERBOSE,
)

_ALLOWED = {
    "named": {"lam", "var", "punct"},
    "db": {"lam", "nat", "punct"},
    "es": {"lam", "nat", "meta", "ph", "assign", "punct"},
}


def _tokenize(text: str, lang: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or (m.lastgroup != "ws" and m.lastgroup not in _ALLOWED[lang]):
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "punct":
            tokens.append((m.group(), m.group(), pos))
        elif m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, lang):
        self.tokens = _tokenize(text, lang)
        self.i = 0

    @property
    def kind(self):
        return self.tokens[self.i][0]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {found}", tok[2])
        self.i += 1
        return tok

    def fail(self, what):
        tok = self.tokens[self.i]
        found = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise ParseError(f"expected {what}, found {found}", tok[2])

    def finish(self, result):
        if self.kind != "eof":
            self.fail("end of input")
        return result


class _NamedParser(_Parser):
    def term(self):
        if self.kind == "lam":
            self.advance()
            binders = [VarName.parse(self.expect("var")[1])]
            while self.kind == "var":
                binders.append(VarName.parse(self.advance()[1]))
            self.expect(".")
            body = self.term()
            for v in reversed(binders):
                body = Lam(v, body)
            return body
        t = self.atom()
        while self.kind in ("var", "("):
            t = App(t, self.atom())
        return t

    def atom(self):
        if self.kind == "var":
            return Var(VarName.parse(self.advance()[1]))
        if self.kind == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        self.fail("a variable or '('")


def parse_named(text: str) -> NamedTerm:
    p = _NamedParser(text, "named")
    return p.finish(p.term())


def print_named(t: NamedTerm) -> str:
    match t:
        case Var(v):
            return str(v)
        case Lam():
            binders = []
            while isinstance(t, Lam):
                binders.append(str(t.binder))
                t = t.body
            return "\\" + " ".join(binders) + ". " + print_named(t)
        case App():
            args = []
            while isinstance(t, App):
                args.append(t.arg)
                t = t.fun
            head = print_named(t)
            parts = [f"({head})" if isinstance(t, Lam) else head]
            for a in reversed(args):
                s = print_named(a)
                parts.append(s if isinstance(a, Var) else f"({s})")
            return " ".join(parts)
    raise TypeError(f"not a named term: {t!r}")


def _nat(tok) -> int:
    n = int(tok[1])
    if n == 0:
        raise ZeroIndex("de Bruijn indices start at 1", tok[2])
    return n


class _DBParser(_Parser):
    def term(self):
        if self.kind == "lam":
            self.advance()
            return db.Lam(self.term())
        t = self.atom()
        while self.kind in ("nat", "("):
            t = db.App(t, self.atom())
        return t

    def atom(self):
        if self.kind == "nat":
            return db.Index(_nat(self.advance()))
        if self.kind == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        self.fail("an index or '('")


def parse_db(text: str) -> db.DBTerm:
    p = _DBParser(text, "db")
    return p.finish(p.term())


def print_db(t: db.DBTerm) -> str:
    match t:
        case db.Index(n):
            return str(n)
        case db.Lam(body):
            return "\\ " + print_db(body)
        case db.App():
            args = []
            while isinstance(t, db.App):
                args.append(t.arg)
                t = t.fun
            head = print_db(t)
            parts = [f"({head})" if isinstance(t, db.Lam) else head]
            for a in reversed(args):
                s = print_db(a)
                parts.append(s if isinstance(a, db.Index) else f"({s})")
            return " ".join(parts)
    raise TypeError(f"not a de Bruijn term: {t!r}")


_ES_ATOM_START = ("nat", "meta", "(", "ph")


class _ESParser(_Parser):
    def __init__(self, text, open_terms):
        super().__init__(text, "es")
        self.open_terms = open_terms

    def term(self):
        if self.kind == "lam":
            self.advance()
            return es.Lam(self.term())
        t = self.atom()
        while self.kind in _ES_ATOM_START:
            t = es.App(t, self.atom())
        return t

    def atom(self):
        t = self.primary()
        while self.kind == "[":
            self.advance()
            level = _nat(self.expect("nat"))
            self.expect("assign")
            payload = self.term()
            self.expect("]")
            t = es.Sigma(level, t, payload)
        return t

    def primary(self):
        if self.kind == "nat":
            return es.Index(_nat(self.advance()))
        if self.kind == "meta":
            tok = self.advance()
            if not self.open_terms:
                raise ParseError(f"metavariable {tok[1]} needs open terms enabled", tok[2])
            return es.Meta(tok[1])
        if self.kind == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        if self.kind == "ph":
            self.advance()
            i = _nat(self.expect("nat"))
            self.expect(",")
            k = int(self.expect("nat")[1])
            self.expect(")")
            return es.Phi(i, k, self.atom())
        self.fail("an index, metavariable, 'ph(' or '('")


def parse_es(text: str, open_terms: bool = False) -> es.ESTerm:
    p = _ESParser(text, open_terms)
    return p.finish(p.term())


def _es_atom(t) -> str:
    match t:
        case es.Index(n):
            return str(n)
        case es.Meta(name):
            return name
        case es.Sigma(i, target, payload):
            inner = _es_atom(target)
            if isinstance(target, es.Phi):
                # the updating would otherwise swallow the closure
                inner = f"({inner})"
            return f"{inner}[{i} := {print_es(payload)}]"
        case es.Phi(i, k, body):
            return f"ph({i},{k}) {_es_atom(body)}"
    return f"({print_es(t)})"


def print_es(t: es.ESTerm) -> str:
    match t:
        case es.Lam(body):
            return "\\ " + print_es(body)
        case es.App():
            args = []
            while isinstance(t, es.App):
                args.append(t.arg)
                t = t.fun
            parts = [_es_atom(t)]
            parts.extend(_es_atom(a) for a in reversed(args))
            return " ".join(parts)
    return _es_atom(t)


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def graph_to_dot(graph, name: str = "reductions") -> str:
    """Render a reduction graph as a Graphviz digraph.

    Nodes appear in discovery order; edge labels carry the step kind and
    the path of the contracted redex.
    """
    from .terms import format_path

    lines = [f"digraph {name} {{"]
    for i, term in enumerate(graph.nodes):
        lines.append(f'  n{i} [label="{_dot_escape(str(term))}"];')
    for edge in graph.edges:
        label = f"{edge.kind} @ {format_path(edge.path)}"
        lines.append(f'  n{edge.source} -> n{edge.target} [label="{_dot_escape(label)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
