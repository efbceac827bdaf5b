"""Continuation-passing semantic domain over the universal (syntactic) model.

Worlds are contexts; a larger world has extra bindings at the front, so the
distance between two comparable worlds is a length difference and moving a
syntactic answer to a larger world wraps it in ``Wkn``.

A *forcing value* is a callable ``fv(w1, k)`` that may be invoked at any world
``w1`` above its creation world and returns an answer term valid at ``w1``.
The continuation ``k(w2, sv)`` is invoked at worlds ``w2 >= w1`` with a strong
value living at ``w2``.  Answer terms are bare :class:`DbTerm` values; the
answer formula and annotation are erased.

Strong values are tagged by strategy: call-by-value sums and functions carry
strong values, call-by-name ones carry forcing values.  Function values and
forcing values are world-polymorphic closures, so only ``AtomV`` (and
call-by-value injections around it) records the world it lives at.  Function
values also take the annotation they are called at: an arrow cannot be moved
from annotation 0 to 1 pointwise (its domain is contravariant), so a
function built at 0 re-runs its body at 1 when called below a reset.
"""

from __future__ import annotations

import enum
from collections.abc import Callable
from dataclasses import dataclass

from .syntax import debruijn as db
from .syntax.debruijn import Context, DbTerm


class Strategy(enum.Enum):
    CBV = "cbv"
    CBN = "cbn"


class StrongValue:
    __slots__ = ()


Continuation = Callable[[Context, StrongValue], DbTerm]
ForcingValue = Callable[[Context, Continuation], DbTerm]


@dataclass(frozen=True)
class AtomV(StrongValue):
    """Strong value at an atomic type: a neutral term at ``world``."""

    term: DbTerm
    world: Context


@dataclass(frozen=True)
class InlV(StrongValue):
    value: StrongValue


@dataclass(frozen=True)
class InrV(StrongValue):
    value: StrongValue


@dataclass(frozen=True)
class FunV(StrongValue):
    """``fn(w, annot, arg)``: callable at any larger world and any annotation
    at or above the one it was built at."""

    fn: Callable[[Context, int, StrongValue], ForcingValue]


@dataclass(frozen=True)
class InlN(StrongValue):
    value: ForcingValue


@dataclass(frozen=True)
class InrN(StrongValue):
    value: ForcingValue


@dataclass(frozen=True)
class FunN(StrongValue):
    """``fn(w, annot, arg)``, as for :class:`FunV`."""

    fn: Callable[[Context, int, ForcingValue], ForcingValue]


# Environments are tuples aligned with the typing context (index 0 is the
# head); the empty tuple is the unit environment.
Environment = tuple


def weaken_sv(sv: StrongValue, world: Context) -> StrongValue:
    """Move ``sv`` up to ``world``."""
    match sv:
        case AtomV(term, w0):
            assert db.is_extension(w0, world), "weakening to a smaller world"
            if len(w0) == len(world):
                return sv
            return AtomV(db.weaken(term, len(world) - len(w0)), world)
        case InlV(v):
            return InlV(weaken_sv(v, world))
        case InrV(v):
            return InrV(weaken_sv(v, world))
    return sv


def weaken_sem(x, world: Context):
    """Weaken a strong value, forcing value or environment to ``world``.

    Forcing values and function values already accept every larger world.
    """
    if isinstance(x, tuple):
        return tuple(weaken_sem(entry, world) for entry in x)
    if isinstance(x, StrongValue):
        return weaken_sv(x, world)
    return x


def ret(sv: StrongValue) -> ForcingValue:
    def forcing(w1: Context, k: Continuation) -> DbTerm:
        return k(w1, weaken_sv(sv, w1))

    return forcing


def bind(f: Callable[[Context, StrongValue], ForcingValue], v: ForcingValue) -> ForcingValue:
    def forcing(w1: Context, k: Continuation) -> DbTerm:
        return v(w1, lambda w2, sv: f(w2, sv)(w2, k))

    return forcing


def _identity(w: Context, chi: StrongValue) -> DbTerm:
    assert isinstance(chi, AtomV), "run at a non-atomic type"
    return chi.term


def run(v: ForcingValue, world: Context) -> DbTerm:
    """Apply ``v`` at ``world`` to the identity continuation (type ``bot``)."""
    return v(world, _identity)


def meta_reset(answer: DbTerm) -> DbTerm:
    return db.Reset(answer)


def coerce01_cbn(v: ForcingValue) -> ForcingValue:
    """Move a call-by-name forcing value from annotation 0 to annotation 1.

    The answer formula of ``v`` is instantiated at ``bot`` and every answer
    produced by the annotation-1 continuation is delimited by a reset, so
    this coercion is where call-by-name normal forms pick up their extra
    resets.
    """

    def forcing(w1: Context, k: Continuation) -> DbTerm:
        return v(w1, lambda w2, sv: meta_reset(k(w2, coerce01_sv_cbn(sv))))

    return forcing


def coerce01_sv_cbn(sv: StrongValue) -> StrongValue:
    match sv:
        case InlN(v):
            return InlN(coerce01_cbn(v))
        case InrN(v):
            return InrN(coerce01_cbn(v))
    # Atoms keep their term; functions already accept annotation 1.
    return sv


def coerce_env(strategy: Strategy, env: Environment, src: int, dst: int) -> Environment:
    """Move an environment from annotation ``src`` up to ``dst``."""
    if src == dst or strategy is Strategy.CBV:
        return env
    return tuple(coerce01_cbn(v) for v in env)
