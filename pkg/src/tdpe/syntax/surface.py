"""Named surface terms, as written by users and by the equational rewriter."""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import Formula

Span = tuple[int, int]


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        from .printer import show_surface

        return show_surface(self)


@dataclass(frozen=True)
class Var(Term):
    name: str
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Lam(Term):
    name: str
    ann: Formula
    body: Term
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Inl(Term):
    term: Term
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Inr(Term):
    term: Term
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Case(Term):
    scrutinee: Term
    lname: str
    lbranch: Term
    rname: str
    rbranch: Term
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Shift(Term):
    """``S k. body``.

    ``ann`` is the type of the whole shift expression (so ``k : ann -> bot``).
    It is never written by users; the equational rewriter fills it in from a
    typing derivation so that new binders it introduces can be annotated.
    """

    kname: str
    body: Term
    ann: Formula | None = field(default=None, compare=False, kw_only=True)
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Reset(Term):
    body: Term
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Ascribe(Term):
    term: Term
    ty: Formula
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class KApp(Term):
    """Application to a continuation variable, ``k ↩ arg`` (call-by-name theory only)."""

    k: str
    arg: Term
    span: Span | None = field(default=None, compare=False, repr=False, kw_only=True)


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset({name})
        case Lam(name, _, body):
            return free_vars(body) - {name}
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case Inl(u) | Inr(u) | Reset(u) | Ascribe(u, _):
            return free_vars(u)
        case Case(s, ln, lb, rn, rb):
            return free_vars(s) | (free_vars(lb) - {ln}) | (free_vars(rb) - {rn})
        case Shift(k, body):
            return free_vars(body) - {k}
        case KApp(k, a):
            return free_vars(a) | {k}
    raise TypeError(f"not a term: {t!r}")


def all_names(t: Term) -> set[str]:
    """Every identifier occurring in ``t``, bound or free."""
    match t:
        case Var(name):
            return {name}
        case Lam(name, _, body):
            return {name} | all_names(body)
        case App(f, a):
            return all_names(f) | all_names(a)
        case Inl(u) | Inr(u) | Reset(u) | Ascribe(u, _):
            return all_names(u)
        case Case(s, ln, lb, rn, rb):
            return all_names(s) | all_names(lb) | all_names(rb) | {ln, rn}
        case Shift(k, body):
            return {k} | all_names(body)
        case KApp(k, a):
            return {k} | all_names(a)
    raise TypeError(f"not a term: {t!r}")
