"""Canonical text for de Bruijn and surface terms.

De Bruijn terms are printed with generated names ``x<n>``, where ``n`` is the
number of binders textually enclosing the binding site (free variables of an
open term take ``x0 .. x<k-1>``, outermost first).  ``Wkn`` is invisible in
the text: it only hides the innermost name.  Parentheses are minimal for the
grammar accepted by :mod:`tdpe.syntax.parser`.
"""

from __future__ import annotations

from . import debruijn as db
from . import surface as s
from .formula import show_formula

# Precedence levels: 0 = open (binders and prefix forms extend rightwards),
# 1 = application, 2 = atomic.
OPEN, APP, ATOM = 0, 1, 2


def _paren(text: str, needed: bool) -> str:
    return f"({text})" if needed else text


def context_size(t: db.DbTerm) -> int:
    """How many context entries ``t`` needs to be well-scoped."""
    match t:
        case db.Hyp():
            return 1
        case db.Wkn(u):
            return context_size(u) + 1
        case db.Lam(_, body) | db.Shift(body):
            return max(context_size(body) - 1, 0)
        case db.App(f, a):
            return max(context_size(f), context_size(a))
        case db.Inl(u) | db.Inr(u) | db.Reset(u) | db.Ascribe(u, _):
            return context_size(u)
        case db.Case(sc, l, r):
            return max(context_size(sc), context_size(l) - 1, context_size(r) - 1, 0)
    raise TypeError(f"not a term: {t!r}")


def default_names(n: int) -> tuple[str, ...]:
    """Names for a context of size ``n``, head first."""
    return tuple(f"x{i}" for i in reversed(range(n)))


def print_term(t: db.DbTerm, names: tuple[str, ...] | None = None) -> str:
    """Print ``t``; ``names`` lists free-variable names head (index 0) first."""
    if names is None:
        names = default_names(context_size(t))
    return _show_db(t, tuple(names), len(names), OPEN)


def _show_db(t: db.DbTerm, names: tuple[str, ...], depth: int, prec: int) -> str:
    match t:
        case db.Hyp():
            if not names:
                raise ValueError("unbound de Bruijn index while printing")
            return names[0]
        case db.Wkn(u):
            return _show_db(u, names[1:], depth, prec)
        case db.Lam(ann, body):
            x = f"x{depth}"
            inner = _show_db(body, (x,) + names, depth + 1, OPEN)
            return _paren(f"\\{x}:{show_formula(ann)}. {inner}", prec > OPEN)
        case db.App(f, a):
            text = f"{_show_db(f, names, depth, APP)} {_show_db(a, names, depth, ATOM)}"
            return _paren(text, prec > APP)
        case db.Inl(u):
            return _paren(f"inl {_show_db(u, names, depth, OPEN)}", prec > OPEN)
        case db.Inr(u):
            return _paren(f"inr {_show_db(u, names, depth, OPEN)}", prec > OPEN)
        case db.Case(sc, l, r):
            x = f"x{depth}"
            scrut = _show_db(sc, names, depth, OPEN)
            left = _show_db(l, (x,) + names, depth + 1, OPEN)
            right = _show_db(r, (x,) + names, depth + 1, OPEN)
            return _paren(f"case {scrut} of inl {x}. {left} | inr {x}. {right}", prec > OPEN)
        case db.Shift(body):
            k = f"x{depth}"
            return _paren(f"S {k}. {_show_db(body, (k,) + names, depth + 1, OPEN)}", prec > OPEN)
        case db.Reset(u):
            return f"<{_show_db(u, names, depth, OPEN)}>"
        case db.Ascribe(u, ty):
            return f"({_show_db(u, names, depth, OPEN)} : {show_formula(ty)})"
    raise TypeError(f"not a term: {t!r}")


def show_surface(t: s.Term, prec: int = OPEN) -> str:
    match t:
        case s.Var(name):
            return name
        case s.Lam(x, ann, body):
            return _paren(f"\\{x}:{show_formula(ann)}. {show_surface(body)}", prec > OPEN)
        case s.App(f, a):
            return _paren(f"{show_surface(f, APP)} {show_surface(a, ATOM)}", prec > APP)
        case s.KApp(k, a):
            return _paren(f"{k} ↩ {show_surface(a, ATOM)}", prec > APP)
        case s.Inl(u):
            return _paren(f"inl {show_surface(u)}", prec > OPEN)
        case s.Inr(u):
            return _paren(f"inr {show_surface(u)}", prec > OPEN)
        case s.Case(sc, ln, lb, rn, rb):
            text = f"case {show_surface(sc)} of inl {ln}. {show_surface(lb)} | inr {rn}. {show_surface(rb)}"
            return _paren(text, prec > OPEN)
        case s.Shift(k, body):
            return _paren(f"S {k}. {show_surface(body)}", prec > OPEN)
        case s.Reset(u):
            return f"<{show_surface(u)}>"
        case s.Ascribe(u, ty):
            return f"({show_surface(u)} : {show_formula(ty)})"
    raise TypeError(f"not a term: {t!r}")
