"""De Bruijn terms, weakening, and the normal/neutral classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .formula import Formula


class DbTerm:
    __slots__ = ()

    def __str__(self) -> str:
        from .printer import print_term

        return print_term(self)


@dataclass(frozen=True)
class Hyp(DbTerm):
    pass


@dataclass(frozen=True)
class Wkn(DbTerm):
    term: DbTerm


@dataclass(frozen=True)
class Lam(DbTerm):
    ann: Formula
    body: DbTerm


@dataclass(frozen=True)
class App(DbTerm):
    fun: DbTerm
    arg: DbTerm


@dataclass(frozen=True)
class Inl(DbTerm):
    term: DbTerm


@dataclass(frozen=True)
class Inr(DbTerm):
    term: DbTerm


@dataclass(frozen=True)
class Case(DbTerm):
    scrutinee: DbTerm
    left: DbTerm
    right: DbTerm


@dataclass(frozen=True)
class Shift(DbTerm):
    body: DbTerm


@dataclass(frozen=True)
class Reset(DbTerm):
    body: DbTerm


@dataclass(frozen=True)
class Ascribe(DbTerm):
    """Type ascription carried over from the surface; semantically the identity."""

    term: DbTerm
    ty: Formula


HYP = Hyp()

# A context is a tuple of formulas, head (index 0) is the most recent binding.
Context = tuple[Formula, ...]


def var(index: int) -> DbTerm:
    return weaken(HYP, index)


def weaken(t: DbTerm, n: int) -> DbTerm:
    if n < 0:
        raise ValueError("negative weakening")
    for _ in range(n):
        t = Wkn(t)
    return t


def is_extension(small: Context, big: Context) -> bool:
    """``small <= big``: ``big`` is ``small`` with extra bindings at the front."""
    return len(small) <= len(big) and big[len(big) - len(small):] == small


class NfClass(enum.Enum):
    NORMAL = "normal"
    NEUTRAL = "neutral"
    NOT_IN_GRAMMAR = "not-in-grammar"


def is_neutral(t: DbTerm) -> bool:
    match t:
        case Hyp():
            return True
        case Wkn(r):
            return is_normal(r)
        case App(e, r):
            return is_neutral(e) and is_normal(r)
        case Case(e, r1, r2):
            return is_neutral(e) and is_normal(r1) and is_normal(r2)
        case Reset(e):
            return is_neutral(e)
    return False


def is_normal(t: DbTerm) -> bool:
    match t:
        case Lam(_, r) | Inl(r) | Inr(r) | Shift(r):
            return is_normal(r)
    return is_neutral(t)


def classify(t: DbTerm) -> NfClass:
    if is_neutral(t):
        return NfClass.NEUTRAL
    if is_normal(t):
        return NfClass.NORMAL
    return NfClass.NOT_IN_GRAMMAR


def push_weakenings(t: DbTerm) -> DbTerm:
    """Push every ``Wkn`` down to the variables.

    The result uses ``Wkn`` only in chains over ``Hyp``, which is the shape
    produced by elaborating named terms.  Printing is unaffected.
    """
    # Renaming = (mapping, offset): local index i goes to mapping[i] when
    # i < len(mapping), else to i - len(mapping) + offset.

    def lookup(ren: tuple[tuple[int, ...], int], i: int) -> int:
        mapping, offset = ren
        return mapping[i] if i < len(mapping) else i - len(mapping) + offset

    def under(ren: tuple[tuple[int, ...], int]) -> tuple[tuple[int, ...], int]:
        mapping, offset = ren
        return (0,) + tuple(m + 1 for m in mapping), offset + 1

    def drop(ren: tuple[tuple[int, ...], int]) -> tuple[tuple[int, ...], int]:
        mapping, offset = ren
        return (mapping[1:], offset) if mapping else ((), offset + 1)

    def go(t: DbTerm, ren: tuple[tuple[int, ...], int]) -> DbTerm:
        match t:
            case Hyp():
                return var(lookup(ren, 0))
            case Wkn(u):
                return go(u, drop(ren))
            case Lam(a, body):
                return Lam(a, go(body, under(ren)))
            case App(f, a):
                return App(go(f, ren), go(a, ren))
            case Inl(u):
                return Inl(go(u, ren))
            case Inr(u):
                return Inr(go(u, ren))
            case Case(s, l, r):
                return Case(go(s, ren), go(l, under(ren)), go(r, under(ren)))
            case Shift(body):
                return Shift(go(body, under(ren)))
            case Reset(u):
                return Reset(go(u, ren))
            case Ascribe(u, ty):
                return Ascribe(go(u, ren), ty)
        raise TypeError(f"not a term: {t!r}")

    return go(t, ((), 0))


def collapse_resets(t: DbTerm) -> DbTerm:
    """Replace every run of directly nested resets by a single reset."""
    match t:
        case Hyp():
            return t
        case Reset(u):
            inner = collapse_resets(u)
            return inner if isinstance(inner, Reset) else Reset(inner)
        case Wkn(u):
            return Wkn(collapse_resets(u))
        case Lam(ann, body):
            return Lam(ann, collapse_resets(body))
        case App(f, a):
            return App(collapse_resets(f), collapse_resets(a))
        case Inl(u):
            return Inl(collapse_resets(u))
        case Inr(u):
            return Inr(collapse_resets(u))
        case Case(sc, left, right):
            return Case(collapse_resets(sc), collapse_resets(left), collapse_resets(right))
        case Shift(body):
            return Shift(collapse_resets(body))
        case Ascribe(u, ty):
            return Ascribe(collapse_resets(u), ty)
    raise TypeError(f"not a term: {t!r}")
