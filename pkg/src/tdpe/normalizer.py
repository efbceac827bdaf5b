"""Reification and reflection, and type-directed partial evaluation.

``reify`` reads a forcing value back as a normal term and ``reflect`` turns a
neutral term into a forcing value; both recurse on the type.  The two
strategies differ only in whether function arguments and injection payloads
are strong values (call-by-value) or forcing values (call-by-name).
"""

from __future__ import annotations

from dataclasses import dataclass

from .evaluator import eval_cbn, eval_cbv
from .semantics import (
    AtomV,
    Environment,
    ForcingValue,
    FunN,
    FunV,
    InlN,
    InlV,
    InrN,
    InrV,
    Strategy,
    StrongValue,
    ret,
    run,
    weaken_sv,
)
from .syntax import debruijn as db
from .syntax.debruijn import HYP, Context, DbTerm, NfClass, classify
from .syntax.formula import BOT, Arrow, Bot, Formula, Sum, is_atomic, show_formula
from .typecheck import Judgment, TypeCheckError, check


class NormalizationError(RuntimeError):
    """The pipeline produced something outside its contract (an internal bug)."""


def _hyp_at(binder_world: Context, world: Context) -> DbTerm:
    """The variable bound at the head of ``binder_world``, seen from ``world``."""
    return db.weaken(HYP, len(world) - len(binder_world))


def reify(strategy: Strategy, ctx: Context, annot: int, ty: Formula, v: ForcingValue) -> DbTerm:
    ctx = tuple(ctx)
    cbv = strategy is Strategy.CBV
    match ty:
        case Bot():
            return run(v, ctx)
        case _ if is_atomic(ty):
            if annot == 0:
                return run(v, ctx)
            w1 = (Arrow(ty, BOT),) + ctx
            return db.Shift(v(w1, lambda w2, chi: db.App(_hyp_at(w1, w2), chi.term)))
        case Arrow(dom, cod):
            inner = (dom,) + ctx
            var = reflect(strategy, inner, annot, dom, HYP)

            def body(w1: Context, k) -> DbTerm:
                def with_arg(w2: Context, arg: StrongValue) -> DbTerm:
                    def apply(w3: Context, phi: StrongValue) -> DbTerm:
                        if cbv:
                            return phi.fn(w3, annot, weaken_sv(arg, w3))(w3, k)
                        return phi.fn(w3, annot, ret(arg))(w3, k)

                    return v(w2, apply)

                return var(w1, with_arg)

            return db.Lam(dom, reify(strategy, inner, annot, cod, body))
        case Sum(left, right):

            def payload(side: Formula, w2: Context, value) -> DbTerm:
                return reify(strategy, w2, annot, side, ret(value) if cbv else value)

            def split(w2: Context, gamma: StrongValue) -> DbTerm:
                if isinstance(gamma, (InlV, InlN)):
                    return db.Inl(payload(left, w2, gamma.value))
                assert isinstance(gamma, (InrV, InrN))
                return db.Inr(payload(right, w2, gamma.value))

            if annot == 0:
                return v(ctx, split)
            w1 = (Arrow(ty, BOT),) + ctx
            return db.Shift(v(w1, lambda w2, gamma: db.App(_hyp_at(w1, w2), split(w2, gamma))))
    raise TypeError(f"not a formula: {ty!r}")


def reflect(strategy: Strategy, ctx: Context, annot: int, ty: Formula, e: DbTerm) -> ForcingValue:
    ctx = tuple(ctx)
    cbv = strategy is Strategy.CBV
    match ty:
        case _ if is_atomic(ty):
            return ret(AtomV(e, ctx))
        case Arrow(dom, cod):

            def apply(w: Context, b: int, arg) -> ForcingValue:
                reified = reify(strategy, w, b, dom, ret(arg) if cbv else arg)
                head = db.weaken(e, len(w) - len(ctx))
                return reflect(strategy, w, b, cod, db.App(head, reified))

            return ret(FunV(apply) if cbv else FunN(apply))
        case Sum(left, right):

            def forcing(w1: Context, k) -> DbTerm:
                lw, rw = (left,) + w1, (right,) + w1

                def inj_l(w2: Context, a: StrongValue) -> DbTerm:
                    return k(w2, InlV(a) if cbv else InlN(ret(a)))

                def inj_r(w2: Context, a: StrongValue) -> DbTerm:
                    return k(w2, InrV(a) if cbv else InrN(ret(a)))

                return db.Case(
                    db.weaken(e, len(w1) - len(ctx)),
                    reflect(strategy, lw, annot, left, HYP)(lw, inj_l),
                    reflect(strategy, rw, annot, right, HYP)(rw, inj_r),
                )

            return forcing
    raise TypeError(f"not a formula: {ty!r}")


def gamma_reflect(strategy: Strategy, ctx: Context, annot: int) -> Environment:
    """Reflect every variable of ``ctx``, giving an environment of forcing values."""
    ctx = tuple(ctx)
    return tuple(reflect(strategy, ctx, annot, a, db.var(i)) for i, a in enumerate(ctx))


@dataclass(frozen=True)
class TdpeResult:
    term: DbTerm
    judgment: Judgment
    strategy: Strategy

    def __str__(self) -> str:
        from .syntax.printer import default_names, print_term

        return print_term(self.term, default_names(len(self.judgment.ctx)))


def _finish(strategy: Strategy, judgment: Judgment, term: DbTerm, verify: bool) -> TdpeResult:
    if verify:
        if classify(term) is NfClass.NOT_IN_GRAMMAR:
            raise NormalizationError(f"result is not in normal form: {term!r}")
        try:
            check(judgment.ctx, judgment.annot, term, judgment.type)
        except TypeCheckError as exc:
            raise NormalizationError(f"result does not re-check at {judgment}: {exc}") from exc
    return TdpeResult(term, judgment, strategy)


def tdpe_cbn(ctx: Context, annot: int, t: DbTerm, ty: Formula, *, verify: bool = True) -> TdpeResult:
    ctx = tuple(ctx)
    d = check(ctx, annot, t, ty)
    value = eval_cbn(d, gamma_reflect(Strategy.CBN, ctx, annot), annot)
    term = reify(Strategy.CBN, ctx, annot, ty, value)
    return _finish(Strategy.CBN, d.judgment, term, verify)


class OpenTermError(ValueError):
    pass


def tdpe_cbv(t: DbTerm, annot: int, ty: Formula, *, ctx: Context = (), verify: bool = True) -> TdpeResult:
    """Call-by-value TDPE of a closed term (``ctx`` must be empty)."""
    if ctx:
        raise OpenTermError("call-by-value TDPE needs a closed term")
    d = check((), annot, t, ty)
    value = eval_cbv(d, (), annot)
    term = reify(Strategy.CBV, (), annot, ty, value)
    return _finish(Strategy.CBV, d.judgment, term, verify)


def tdpe(strategy: Strategy, ctx: Context, annot: int, t: DbTerm, ty: Formula) -> TdpeResult:
    if strategy is Strategy.CBV:
        return tdpe_cbv(t, annot, ty, ctx=tuple(ctx))
    return tdpe_cbn(ctx, annot, t, ty)


@dataclass(frozen=True)
class Left:
    term: DbTerm


@dataclass(frozen=True)
class Right:
    term: DbTerm


def extract_disjunct(
    t: DbTerm, left: Formula, right: Formula, strategy: Strategy = Strategy.CBV
) -> Left | Right:
    """Normalize a closed ``|-0 left + right`` proof and return its injection."""
    ty = Sum(left, right)
    result = tdpe(strategy, (), 0, t, ty)
    match result.term:
        case db.Inl(r):
            out: Left | Right = Left(r)
            side = left
        case db.Inr(r):
            out = Right(r)
            side = right
        case other:
            raise NormalizationError(
                f"closed normal form of {show_formula(ty)} is not an injection: {other!r}"
            )
    try:
        check((), 0, out.term, side)
    except TypeCheckError as exc:
        raise NormalizationError(f"extracted component does not check: {exc}") from exc
    return out


@dataclass(frozen=True)
class IdempotenceReport:
    """How often normalizing a normal form gives it back (printed forms compared)."""

    strategy: Strategy
    checked: int
    stable: int
    unstable: tuple[tuple[str, str], ...]

    def __str__(self) -> str:
        return f"{self.strategy.value}: {self.stable}/{self.checked} normal forms are fixed points"


def idempotence_report(strategy: Strategy, samples) -> IdempotenceReport:
    """Run TDPE twice on each ``(ctx, annot, term, type)`` sample.

    Idempotence is not guaranteed (call-by-name reads back extra resets), so
    this only counts; ``unstable`` keeps the first and second normal forms
    of each sample that moved.
    """
    checked = stable = 0
    unstable = []
    for ctx, annot, t, ty in samples:
        first = tdpe(strategy, ctx, annot, t, ty)
        second = tdpe(strategy, ctx, annot, first.term, ty)
        checked += 1
        if str(first) == str(second):
            stable += 1
        else:
            unstable.append((str(first), str(second)))
    return IdempotenceReport(strategy, checked, stable, tuple(unstable))
