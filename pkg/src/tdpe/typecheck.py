"""Bidirectional checker for ``t : ctx |-_b A``.

``Hyp``, ``Wkn``, ``App``, annotated ``Lam``, ``Reset`` and ascriptions
synthesize; ``Inl``, ``Inr`` and ``Shift`` only check.  ``Case`` synthesizes
when its scrutinee and one branch do.  An application whose function cannot
synthesize is checked by synthesizing the argument instead.

The annotation ``b`` is 1 exactly below a reset: ``Shift`` demands it, and
``Reset`` sets it for its body whatever the outer value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import debruijn as db
from .syntax.debruijn import Context, DbTerm
from .syntax.formula import BOT, Arrow, Formula, Sum, show_formula


class TypeCheckError(ValueError):
    """``kind`` is one of ``mismatch``, ``shift-outside-delimiter``,
    ``reset-type``, ``unbound`` or ``cannot-synthesize``."""

    def __init__(self, kind: str, message: str) -> None:
        super().__init__(message)
        self.kind = kind


class CannotSynthesize(TypeCheckError):
    def __init__(self, t: DbTerm) -> None:
        super().__init__(
            "cannot-synthesize",
            f"cannot synthesize a type for {type(t).__name__}; add an ascription",
        )


@dataclass(frozen=True)
class Judgment:
    ctx: Context
    annot: int
    type: Formula

    def __str__(self) -> str:
        ctx = ", ".join(show_formula(a) for a in reversed(self.ctx))
        return f"{ctx} |-{self.annot} {show_formula(self.type)}"


@dataclass(frozen=True)
class Derivation:
    rule: str
    term: DbTerm
    judgment: Judgment
    premises: tuple[Derivation, ...] = ()

    @property
    def type(self) -> Formula:
        return self.judgment.type

    @property
    def annot(self) -> int:
        return self.judgment.annot

    def nodes(self):
        yield self
        for p in self.premises:
            yield from p.nodes()


def _check_annot(b: int) -> None:
    if b not in (0, 1):
        raise ValueError(f"annotation must be 0 or 1, got {b!r}")


def _mismatch(expected: Formula, found: Formula, t: DbTerm) -> TypeCheckError:
    return TypeCheckError(
        "mismatch",
        f"expected {show_formula(expected)}, found {show_formula(found)} for {type(t).__name__}",
    )


def synth(ctx: Context, b: int, t: DbTerm) -> Derivation:
    _check_annot(b)
    ctx = tuple(ctx)
    match t:
        case db.Hyp():
            if not ctx:
                raise TypeCheckError("unbound", "variable refers past the end of the context")
            return Derivation("hyp", t, Judgment(ctx, b, ctx[0]))
        case db.Wkn(u):
            if not ctx:
                raise TypeCheckError("unbound", "weakening of an empty context")
            d = synth(ctx[1:], b, u)
            return Derivation("wkn", t, Judgment(ctx, b, d.type), (d,))
        case db.Lam(ann, body):
            d = synth((ann,) + ctx, b, body)
            return Derivation("lam", t, Judgment(ctx, b, Arrow(ann, d.type)), (d,))
        case db.App(f, a):
            df = synth(ctx, b, f)
            if not isinstance(df.type, Arrow):
                raise TypeCheckError(
                    "mismatch", f"applying a term of non-function type {show_formula(df.type)}"
                )
            da = check(ctx, b, a, df.type.dom)
            return Derivation("app", t, Judgment(ctx, b, df.type.cod), (df, da))
        case db.Case(sc, left, right):
            ds = _synth_sum(ctx, b, sc)
            lctx = (ds.type.left,) + ctx
            rctx = (ds.type.right,) + ctx
            try:
                dl = synth(lctx, b, left)
                dr = check(rctx, b, right, dl.type)
            except CannotSynthesize:
                dr = synth(rctx, b, right)
                dl = check(lctx, b, left, dr.type)
            return Derivation("case", t, Judgment(ctx, b, dl.type), (ds, dl, dr))
        case db.Reset(body):
            d = check(ctx, 1, body, BOT)
            return Derivation("reset", t, Judgment(ctx, b, BOT), (d,))
        case db.Ascribe(u, ty):
            d = check(ctx, b, u, ty)
            return Derivation("ascribe", t, Judgment(ctx, b, ty), (d,))
    if isinstance(t, (db.Inl, db.Inr, db.Shift)):
        raise CannotSynthesize(t)
    raise TypeError(f"not a term: {t!r}")


def _synth_sum(ctx: Context, b: int, sc: DbTerm) -> Derivation:
    ds = synth(ctx, b, sc)
    if not isinstance(ds.type, Sum):
        raise TypeCheckError("mismatch", f"case on non-sum type {show_formula(ds.type)}")
    return ds


def check(ctx: Context, b: int, t: DbTerm, ty: Formula) -> Derivation:
    """Return the derivation of ``t : ctx |-_b ty`` or raise :class:`TypeCheckError`."""
    _check_annot(b)
    ctx = tuple(ctx)
    match t:
        case db.Lam(ann, body):
            if not isinstance(ty, Arrow) or ty.dom != ann:
                raise _mismatch(ty, Arrow(ann, ty.cod if isinstance(ty, Arrow) else ty), t)
            d = check((ann,) + ctx, b, body, ty.cod)
            return Derivation("lam", t, Judgment(ctx, b, ty), (d,))
        case db.Inl(u) | db.Inr(u):
            if not isinstance(ty, Sum):
                raise TypeCheckError("mismatch", f"injection checked against {show_formula(ty)}")
            left = isinstance(t, db.Inl)
            d = check(ctx, b, u, ty.left if left else ty.right)
            return Derivation("inl" if left else "inr", t, Judgment(ctx, b, ty), (d,))
        case db.Case(sc, left, right):
            ds = _synth_sum(ctx, b, sc)
            dl = check((ds.type.left,) + ctx, b, left, ty)
            dr = check((ds.type.right,) + ctx, b, right, ty)
            return Derivation("case", t, Judgment(ctx, b, ty), (ds, dl, dr))
        case db.Shift(body):
            if b != 1:
                raise TypeCheckError(
                    "shift-outside-delimiter", "shift used where no reset encloses it"
                )
            d = check((Arrow(ty, BOT),) + ctx, 1, body, BOT)
            return Derivation("shift", t, Judgment(ctx, 1, ty), (d,))
        case db.Reset(body):
            if ty != BOT:
                raise TypeCheckError(
                    "reset-type", f"reset has type bot, checked against {show_formula(ty)}"
                )
            d = check(ctx, 1, body, BOT)
            return Derivation("reset", t, Judgment(ctx, b, BOT), (d,))
        case db.Wkn(u):
            if not ctx:
                raise TypeCheckError("unbound", "weakening of an empty context")
            d = check(ctx[1:], b, u, ty)
            return Derivation("wkn", t, Judgment(ctx, b, ty), (d,))
        case db.App(f, a):
            try:
                df = synth(ctx, b, f)
            except CannotSynthesize:
                da = synth(ctx, b, a)
                df = check(ctx, b, f, Arrow(da.type, ty))
                return Derivation("app", t, Judgment(ctx, b, ty), (df, da))
            if not isinstance(df.type, Arrow):
                raise TypeCheckError(
                    "mismatch", f"applying a term of non-function type {show_formula(df.type)}"
                )
            if df.type.cod != ty:
                raise _mismatch(ty, df.type.cod, t)
            da = check(ctx, b, a, df.type.dom)
            return Derivation("app", t, Judgment(ctx, b, ty), (df, da))
    d = synth(ctx, b, t)
    if d.type != ty:
        raise _mismatch(ty, d.type, t)
    return d


def annot_weaken(d: Derivation) -> Derivation:
    """Re-derive the conclusion of ``d`` at annotation 1."""
    j = d.judgment
    return check(j.ctx, 1, d.term, j.type)


def type_checks(ctx: Context, b: int, t: DbTerm, ty: Formula) -> bool:
    try:
        check(ctx, b, t, ty)
    except TypeCheckError:
        return False
    return True
