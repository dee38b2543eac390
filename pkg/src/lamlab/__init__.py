"""A laboratory for substitution in the lambda calculus.

Named terms with several substitution operators and beta relations, de
Bruijn terms, and the lambda-s family of explicit-substitution calculi.
"""

from .terms import App, Lam, Var, VarName, var
from .syntax import parse_db, parse_es, parse_named, print_db, print_es, print_named

__all__ = [
    "App",
    "Lam",
    "Var",
    "VarName",
    "var",
    "parse_db",
    "parse_es",
    "parse_named",
    "print_db",
    "print_es",
    "print_named",
]
