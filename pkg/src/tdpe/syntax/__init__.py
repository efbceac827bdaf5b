"""Object-language syntax: formulas, named and de Bruijn terms, parsing, printing."""

from . import debruijn, surface
from .convert import ScopeError, alpha_key, from_debruijn, to_debruijn
from .debruijn import Context, DbTerm, NfClass, classify, push_weakenings, weaken
from .formula import BOT, Arrow, Atom, Bot, Formula, Sum, arrows, is_atomic, show_formula
from .parser import ParseError, parse_context, parse_formula, parse_term
from .printer import print_term

__all__ = [
    "BOT",
    "Arrow",
    "Atom",
    "Bot",
    "Context",
    "DbTerm",
    "Formula",
    "NfClass",
    "ParseError",
    "ScopeError",
    "Sum",
    "alpha_key",
    "arrows",
    "classify",
    "debruijn",
    "from_debruijn",
    "is_atomic",
    "parse_context",
    "parse_formula",
    "parse_term",
    "print_term",
    "push_weakenings",
    "show_formula",
    "surface",
    "to_debruijn",
    "weaken",
]
