"""Conversion between named surface terms and de Bruijn terms."""

from __future__ import annotations

from collections.abc import Sequence

from . import debruijn as db
from . import surface as s


class ScopeError(ValueError):
    def __init__(self, name: str, span: s.Span | None = None) -> None:
        where = f"{span[0]}:{span[1]}: " if span else ""
        super().__init__(f"{where}unbound variable {name!r}")
        self.name = name


def to_debruijn(t: s.Term, ctx: Sequence[str] = ()) -> db.DbTerm:
    """Elaborate ``t`` with free variables ``ctx`` (head, i.e. innermost, first).

    Continuation applications ``k ↩ p`` become ordinary applications.
    """
    return _elab(t, tuple(ctx))


def _elab(t: s.Term, ctx: tuple[str, ...]) -> db.DbTerm:
    match t:
        case s.Var(name):
            if name not in ctx:
                raise ScopeError(name, t.span)
            return db.var(ctx.index(name))
        case s.Lam(x, ann, body):
            return db.Lam(ann, _elab(body, (x,) + ctx))
        case s.App(f, a):
            return db.App(_elab(f, ctx), _elab(a, ctx))
        case s.KApp(k, a):
            return db.App(_elab(s.Var(k), ctx), _elab(a, ctx))
        case s.Inl(u):
            return db.Inl(_elab(u, ctx))
        case s.Inr(u):
            return db.Inr(_elab(u, ctx))
        case s.Case(sc, ln, lb, rn, rb):
            return db.Case(_elab(sc, ctx), _elab(lb, (ln,) + ctx), _elab(rb, (rn,) + ctx))
        case s.Shift(k, body):
            return db.Shift(_elab(body, (k,) + ctx))
        case s.Reset(u):
            return db.Reset(_elab(u, ctx))
        case s.Ascribe(u, ty):
            return db.Ascribe(_elab(u, ctx), ty)
    raise TypeError(f"not a term: {t!r}")


def from_debruijn(t: db.DbTerm, names: Sequence[str] = ()) -> s.Term:
    """Name a de Bruijn term; binders get ``x<depth>`` as in canonical printing."""
    return _name(t, tuple(names), len(names))


def _name(t: db.DbTerm, names: tuple[str, ...], depth: int) -> s.Term:
    match t:
        case db.Hyp():
            return s.Var(names[0])
        case db.Wkn(u):
            return _name(u, names[1:], depth)
        case db.Lam(ann, body):
            x = f"x{depth}"
            return s.Lam(x, ann, _name(body, (x,) + names, depth + 1))
        case db.App(f, a):
            return s.App(_name(f, names, depth), _name(a, names, depth))
        case db.Inl(u):
            return s.Inl(_name(u, names, depth))
        case db.Inr(u):
            return s.Inr(_name(u, names, depth))
        case db.Case(sc, l, r):
            x = f"x{depth}"
            return s.Case(
                _name(sc, names, depth),
                x,
                _name(l, (x,) + names, depth + 1),
                x,
                _name(r, (x,) + names, depth + 1),
            )
        case db.Shift(body):
            k = f"x{depth}"
            return s.Shift(k, _name(body, (k,) + names, depth + 1))
        case db.Reset(u):
            return s.Reset(_name(u, names, depth))
        case db.Ascribe(u, ty):
            return s.Ascribe(_name(u, names, depth), ty)
    raise TypeError(f"not a term: {t!r}")


def alpha_key(t: s.Term, ctx: Sequence[str] = ()) -> db.DbTerm:
    """A key equal for exactly the alpha-equivalent terms (free names kept apart)."""
    free = tuple(sorted(s.free_vars(t) - set(ctx)))
    return to_debruijn(t, tuple(ctx) + free)
