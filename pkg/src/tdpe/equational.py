"""Oriented rewriting with the call-by-value and call-by-name equational
theories of shift and reset, used as an independent oracle for TDPE.

Rules are numbered 1-9 (call-by-value) and 10-15 (call-by-name):

    1  (\\x.p) V            -> p{V/x}
    2  \\x. V x             -> V                   x not free in V
    3  (\\x. F[x]) p        -> F[p]                x not free in F
    4  <V>                 -> V
    5  <(\\x.p) <q>>        -> (\\x.<p>) <q>
    6  S k. <p>            -> S k. p
    7  S k. k <p>          -> <p>                 k not free in p
    8  S k. k p            -> p                   k not free in p
    9  <F[S k.p]>          -> <p{(\\x.<F[x]>)/k}>  x fresh
    10 (\\x.p) q            -> p{q/x}
    11 <U>                 -> U
    12 k' <- E[S k.p]      -> <p{k => k' <- E}>
    13 S k. <p>            -> S k. p
    14 S k. k <- p         -> p                   k not free in p
    15 <E[S k.p]>          -> <p{k => E}>

with values ``V ::= x | \\x.p`` and ``U ::= \\x.p``, and pure evaluation
contexts ``F ::= [] | F p | V F`` and ``E ::= [] | E p``.  Ascriptions are
type information only: they are looked through when classifying values and
may appear as frames of a pure context.

Rule 9 introduces a binder whose annotation is the type of the captured
shift, so call-by-value rewriting needs terms whose shifts carry ``ann``
(see :func:`annotate`).  Call-by-name rewriting needs continuation
applications written as ``KApp`` nodes (see :func:`mark_continuations`).
"""

from __future__ import annotations

import dataclasses
import enum
from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .syntax import surface as s
from .syntax.convert import alpha_key, to_debruijn
from .syntax.formula import Arrow, Formula
from .typecheck import Derivation, check


class Theory(enum.Enum):
    CBV = "cbv"
    CBN = "cbn"


CBV_RULES = range(1, 10)
CBN_RULES = range(10, 16)


class RewriteError(ValueError):
    pass


# -- values, fresh names, substitution ---------------------------------------

def _peel(t: s.Term) -> s.Term:
    while isinstance(t, s.Ascribe):
        t = t.term
    return t


def classify_value(theory: Theory, t: s.Term) -> bool:
    t = _peel(t)
    if theory is Theory.CBV:
        return isinstance(t, (s.Var, s.Lam))
    return isinstance(t, s.Lam)


def fresh(base: str, avoid) -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def substitute(t: s.Term, x: str, v: s.Term) -> s.Term:
    """Capture-avoiding ``t{v/x}``."""
    return _subst(t, x, v, s.free_vars(v))


def _rebind(name: str, body_terms: Sequence[s.Term], x: str, fv: frozenset, extra) -> tuple:
    """Rename binder ``name`` if it would capture a free variable of the substituend."""
    if name in fv and any(x in s.free_vars(b) for b in body_terms):
        new = fresh(name, fv | set(extra) | {x}.union(*(s.all_names(b) for b in body_terms)))
        return new, [_subst(b, name, s.Var(new), frozenset({new})) for b in body_terms]
    return name, list(body_terms)


def _subst(t: s.Term, x: str, v: s.Term, fv: frozenset) -> s.Term:
    match t:
        case s.Var(name):
            return v if name == x else t
        case s.Lam(name, ann, body):
            if name == x:
                return t
            name, (body,) = _rebind(name, [body], x, fv, ())
            return s.Lam(name, ann, _subst(body, x, v, fv))
        case s.App(f, a):
            return s.App(_subst(f, x, v, fv), _subst(a, x, v, fv))
        case s.Inl(u):
            return s.Inl(_subst(u, x, v, fv))
        case s.Inr(u):
            return s.Inr(_subst(u, x, v, fv))
        case s.Reset(u):
            return s.Reset(_subst(u, x, v, fv))
        case s.Ascribe(u, ty):
            return s.Ascribe(_subst(u, x, v, fv), ty)
        case s.Case(sc, ln, lb, rn, rb):
            sc = _subst(sc, x, v, fv)
            if ln != x:
                ln, (lb,) = _rebind(ln, [lb], x, fv, ())
                lb = _subst(lb, x, v, fv)
            if rn != x:
                rn, (rb,) = _rebind(rn, [rb], x, fv, ())
                rb = _subst(rb, x, v, fv)
            return s.Case(sc, ln, lb, rn, rb)
        case s.Shift(k, body):
            if k == x:
                return t
            k, (body,) = _rebind(k, [body], x, fv, ())
            return s.Shift(k, _subst(body, x, v, fv), ann=t.ann)
        case s.KApp(k, a):
            a = _subst(a, x, v, fv)
            if k != x:
                return s.KApp(k, a)
            if isinstance(v, s.Var):
                return s.KApp(v.name, a)
            return s.App(v, a)
    raise TypeError(f"not a term: {t!r}")


# -- pure evaluation contexts ------------------------------------------------

@dataclass(frozen=True)
class Frame:
    """One layer of a pure context, outermost first in a :class:`PureContext`.

    ``fun``: ``[] arg``; ``arg``: ``value []``; ``kapp``: ``k <- []``;
    ``ascribe``: ``([] : ty)``.
    """

    kind: str
    term: s.Term | None = None
    name: str | None = None
    ty: Formula | None = None


PureContext = tuple[Frame, ...]


def plug(ctx: PureContext, t: s.Term) -> s.Term:
    for frame in reversed(ctx):
        match frame.kind:
            case "fun":
                t = s.App(t, frame.term)
            case "arg":
                t = s.App(frame.term, t)
            case "kapp":
                t = s.KApp(frame.name, t)
            case "ascribe":
                t = s.Ascribe(t, frame.ty)
            case _:
                raise ValueError(frame.kind)
    return t


def context_free_vars(ctx: PureContext) -> frozenset[str]:
    out: set[str] = set()
    for frame in ctx:
        if frame.term is not None:
            out |= s.free_vars(frame.term)
        if frame.name is not None:
            out.add(frame.name)
    return frozenset(out)


def context_names(ctx: PureContext) -> set[str]:
    out: set[str] = set()
    for frame in ctx:
        if frame.term is not None:
            out |= s.all_names(frame.term)
        if frame.name is not None:
            out.add(frame.name)
    return out


def decompose(theory: Theory, t: s.Term) -> Iterator[tuple[PureContext, s.Term]]:
    """Every way of writing ``t`` as ``C[u]`` with ``C`` a pure context, shallowest hole first."""
    yield (), t
    match t:
        case s.App(f, a):
            for ctx, u in decompose(theory, f):
                yield (Frame("fun", term=a),) + ctx, u
            if theory is Theory.CBV and classify_value(theory, f):
                for ctx, u in decompose(theory, a):
                    yield (Frame("arg", term=f),) + ctx, u
        case s.Ascribe(u0, ty):
            for ctx, u in decompose(theory, u0):
                yield (Frame("ascribe", ty=ty),) + ctx, u


def ksubstitute(t: s.Term, k: str, ctx: PureContext, hole_type: Formula | None = None) -> s.Term:
    """``t{k => ctx}``: replace each ``k <- p`` by ``<ctx[p{k => ctx}]>``.

    ``hole_type``, when known, is used to ascribe arguments that land in a
    position where their type must be inferred.
    """
    return _ksubst(t, k, ctx, context_free_vars(ctx), hole_type)


def _kbind(name: str, bodies: list[s.Term], k: str, fv: frozenset, ctx: PureContext):
    if name in fv and any(k in s.free_vars(b) for b in bodies):
        avoid = set(fv) | context_names(ctx) | {k}
        for b in bodies:
            avoid |= s.all_names(b)
        new = fresh(name, avoid)
        return new, [substitute(b, name, s.Var(new)) for b in bodies]
    return name, bodies


def _ksubst(t: s.Term, k: str, ctx: PureContext, fv: frozenset, ty: Formula | None) -> s.Term:
    match t:
        case s.Var(_):
            return t
        case s.KApp(k2, a):
            a = _ksubst(a, k, ctx, fv, ty)
            if k2 == k:
                return s.Reset(plug(ctx, _guard(a, ty) if ctx else a))
            return s.KApp(k2, a)
        case s.Lam(name, ann, body):
            if name == k:
                return t
            name, (body,) = _kbind(name, [body], k, fv, ctx)
            return s.Lam(name, ann, _ksubst(body, k, ctx, fv, ty))
        case s.App(f, a):
            return s.App(_ksubst(f, k, ctx, fv, ty), _ksubst(a, k, ctx, fv, ty))
        case s.Inl(u):
            return s.Inl(_ksubst(u, k, ctx, fv, ty))
        case s.Inr(u):
            return s.Inr(_ksubst(u, k, ctx, fv, ty))
        case s.Reset(u):
            return s.Reset(_ksubst(u, k, ctx, fv, ty))
        case s.Ascribe(u, asc):
            return s.Ascribe(_ksubst(u, k, ctx, fv, ty), asc)
        case s.Case(sc, ln, lb, rn, rb):
            sc = _ksubst(sc, k, ctx, fv, ty)
            if ln != k:
                ln, (lb,) = _kbind(ln, [lb], k, fv, ctx)
                lb = _ksubst(lb, k, ctx, fv, ty)
            if rn != k:
                rn, (rb,) = _kbind(rn, [rb], k, fv, ctx)
                rb = _ksubst(rb, k, ctx, fv, ty)
            return s.Case(sc, ln, lb, rn, rb)
        case s.Shift(k2, body):
            if k2 == k:
                return t
            k2, (body,) = _kbind(k2, [body], k, fv, ctx)
            return s.Shift(k2, _ksubst(body, k, ctx, fv, ty), ann=t.ann)
    raise TypeError(f"not a term: {t!r}")


def only_kapp_uses(t: s.Term, k: str) -> bool:
    """Whether every free occurrence of ``k`` in ``t`` is the head of a ``KApp``."""
    match t:
        case s.Var(name):
            return name != k
        case s.KApp(_, a):
            return only_kapp_uses(a, k)
        case s.Lam(name, _, body):
            return name == k or only_kapp_uses(body, k)
        case s.Shift(name, body):
            return name == k or only_kapp_uses(body, k)
        case s.App(f, a):
            return only_kapp_uses(f, k) and only_kapp_uses(a, k)
        case s.Inl(u) | s.Inr(u) | s.Reset(u) | s.Ascribe(u, _):
            return only_kapp_uses(u, k)
        case s.Case(sc, ln, lb, rn, rb):
            return (
                only_kapp_uses(sc, k)
                and (ln == k or only_kapp_uses(lb, k))
                and (rn == k or only_kapp_uses(rb, k))
            )
    raise TypeError(f"not a term: {t!r}")


# -- rules -------------------------------------------------------------------

def _is_kapp_of(t: s.Term, k: str) -> bool:
    return isinstance(t, s.KApp) and t.k == k


def _is_app_of(t: s.Term, k: str) -> bool:
    return isinstance(t, s.App) and isinstance(t.fun, s.Var) and t.fun.name == k


def synthesizes(t: s.Term) -> bool:
    """Whether the checker can infer a type for ``t`` without an expected one."""
    match t:
        case s.Var(_) | s.App(_, _) | s.KApp(_, _) | s.Reset(_) | s.Ascribe(_, _):
            return True
        case s.Lam(_, _, body):
            return synthesizes(body)
        case s.Case(sc, _, lb, _, rb):
            return synthesizes(sc) and (synthesizes(lb) or synthesizes(rb))
    return False


def _guard(t: s.Term, ty: Formula | None) -> s.Term:
    """Ascribe a term that moves into a position where its type must be inferred."""
    if ty is None or synthesizes(t):
        return t
    return s.Ascribe(t, ty)


def _beta(t: s.Term, by_value: bool) -> s.Term | None:
    if not isinstance(t, s.App):
        return None
    f = _peel(t.fun)
    if not isinstance(f, s.Lam):
        return None
    if by_value and not classify_value(Theory.CBV, t.arg):
        return None
    return _guard(substitute(f.body, f.name, _guard(t.arg, f.ann)), _result_type(t.fun))


def _result_type(fun: s.Term) -> Formula | None:
    """The codomain of an ascribed function, needed when its redex is contracted."""
    if isinstance(fun, s.Ascribe) and isinstance(fun.ty, Arrow):
        return fun.ty.cod
    return None


def _shift_type(shift: s.Shift, ctx: PureContext) -> Formula:
    if ctx and ctx[-1].kind == "ascribe":
        return ctx[-1].ty
    if shift.ann is None:
        raise RewriteError("the type of a captured shift is unknown; annotate the term first")
    return shift.ann


def _apply_rule(rule: int, t: s.Term) -> list[s.Term]:
    theory = Theory.CBV if rule < 10 else Theory.CBN
    match rule:
        case 1 | 10:
            out = _beta(t, by_value=rule == 1)
            return [] if out is None else [out]
        case 2:
            if isinstance(t, s.Lam) and isinstance(t.body, s.App):
                v, x = t.body.fun, t.body.arg
                if (
                    isinstance(x, s.Var)
                    and x.name == t.name
                    and classify_value(theory, v)
                    and t.name not in s.free_vars(v)
                ):
                    return [v]
            return []
        case 3:
            if not isinstance(t, s.App):
                return []
            f = _peel(t.fun)
            if not isinstance(f, s.Lam):
                return []
            out = []
            for ctx, hole in decompose(theory, f.body):
                if (
                    isinstance(hole, s.Var)
                    and hole.name == f.name
                    and f.name not in context_free_vars(ctx)
                ):
                    out.append(_guard(plug(ctx, _guard(t.arg, f.ann)), _result_type(t.fun)))
            return out
        case 4 | 11:
            if isinstance(t, s.Reset) and classify_value(theory, t.body):
                return [t.body]
            return []
        case 5:
            if isinstance(t, s.Reset) and isinstance(t.body, s.App):
                f = _peel(t.body.fun)
                if isinstance(f, s.Lam) and isinstance(t.body.arg, s.Reset):
                    lam = s.Lam(f.name, f.ann, s.Reset(f.body))
                    return [s.App(lam, t.body.arg)]
            return []
        case 6 | 13:
            if isinstance(t, s.Shift) and isinstance(t.body, s.Reset):
                return [s.Shift(t.kname, t.body.body, ann=t.ann)]
            return []
        case 7 | 8:
            if isinstance(t, s.Shift) and _is_app_of(t.body, t.kname):
                p = t.body.arg
                if t.kname in s.free_vars(p):
                    return []
                if rule == 8:
                    return [_guard(p, t.ann)]
                if isinstance(p, s.Reset):
                    return [p]
            return []
        case 14:
            if isinstance(t, s.Shift) and _is_kapp_of(t.body, t.kname):
                p = t.body.arg
                if t.kname not in s.free_vars(p):
                    return [_guard(p, t.ann)]
            return []
        case 9:
            if not isinstance(t, s.Reset):
                return []
            out = []
            for ctx, hole in decompose(theory, t.body):
                if not isinstance(hole, s.Shift):
                    continue
                avoid = context_names(ctx) | s.all_names(hole.body) | {hole.kname}
                x = fresh("a", avoid)
                k_val = s.Lam(x, _shift_type(hole, ctx), s.Reset(plug(ctx, s.Var(x))))
                out.append(s.Reset(substitute(hole.body, hole.kname, k_val)))
            return out
        case 12 | 15:
            if rule == 12:
                if not isinstance(t, s.KApp):
                    return []
                outer: PureContext = (Frame("kapp", name=t.k),)
                inner = t.arg
            else:
                if not isinstance(t, s.Reset):
                    return []
                outer = ()
                inner = t.body
            out = []
            for ctx, hole in decompose(theory, inner):
                if not isinstance(hole, s.Shift) or not only_kapp_uses(hole.body, hole.kname):
                    continue
                out.append(s.Reset(ksubstitute(hole.body, hole.kname, outer + ctx, hole.ann)))
            return out
    raise ValueError(f"no rule {rule}")


# -- positions ---------------------------------------------------------------

_CHILD_FIELDS = {
    s.Lam: ("body",),
    s.App: ("fun", "arg"),
    s.Inl: ("term",),
    s.Inr: ("term",),
    s.Case: ("scrutinee", "lbranch", "rbranch"),
    s.Shift: ("body",),
    s.Reset: ("body",),
    s.Ascribe: ("term",),
    s.KApp: ("arg",),
    s.Var: (),
}


def subterm(t: s.Term, path: Sequence[int]) -> s.Term:
    for i in path:
        t = getattr(t, _CHILD_FIELDS[type(t)][i])
    return t


def replace_at(t: s.Term, path: Sequence[int], new: s.Term) -> s.Term:
    if not path:
        return new
    name = _CHILD_FIELDS[type(t)][path[0]]
    return dataclasses.replace(t, **{name: replace_at(getattr(t, name), path[1:], new)})


def positions(t: s.Term, prefix: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], s.Term]]:
    """Subterm positions in pre-order (outermost, then left to right)."""
    yield prefix, t
    for i, name in enumerate(_CHILD_FIELDS[type(t)]):
        yield from positions(getattr(t, name), prefix + (i,))


@dataclass(frozen=True)
class Step:
    rule: int
    path: tuple[int, ...]
    term: s.Term


def rewrites(theory: Theory, t: s.Term) -> list[Step]:
    rules = CBV_RULES if theory is Theory.CBV else CBN_RULES
    out = []
    for path, sub in positions(t):
        for rule in rules:
            for new in _apply_rule(rule, sub):
                out.append(Step(rule, path, replace_at(t, path, new)))
    return out


def rewrite_step(theory: Theory, t: s.Term) -> list[tuple[int, s.Term]]:
    """All one-step rewrites of ``t``, leftmost-outermost first, then by rule number."""
    return [(step.rule, step.term) for step in rewrites(theory, t)]


# -- bounded search ----------------------------------------------------------

@dataclass(frozen=True)
class RewriteTrace:
    source: s.Term
    steps: tuple[Step, ...] = ()

    @property
    def term(self) -> s.Term:
        return self.steps[-1].term if self.steps else self.source

    def extend(self, step: Step) -> RewriteTrace:
        return RewriteTrace(self.source, self.steps + (step,))


@dataclass(frozen=True)
class SearchResult:
    traces: tuple[RewriteTrace, ...]
    budget_exhausted: bool
    normal_forms: tuple[s.Term, ...]

    @property
    def terms(self) -> list[s.Term]:
        return [tr.term for tr in self.traces]

    @property
    def reached_normal_form(self) -> bool:
        return bool(self.normal_forms)


def rewrite_search(
    theory: Theory, t: s.Term, max_steps: int, *, max_terms: int = 5000
) -> SearchResult:
    """Breadth-first closure of :func:`rewrite_step`, up to ``max_steps`` steps.

    Terms are deduplicated up to alpha-equivalence; each reachable term keeps
    one shortest trace.  ``budget_exhausted`` is set when some term at the
    step limit still has redexes, or when ``max_terms`` terms were found.
    """
    if max_steps < 0:
        raise ValueError("max_steps must be non-negative")
    seen = {alpha_key(t)}
    traces = [RewriteTrace(t)]
    frontier = deque([(traces[0], 0)])
    exhausted = False
    normal = []
    while frontier:
        trace, depth = frontier.popleft()
        steps = rewrites(theory, trace.term)
        if not steps:
            normal.append(trace.term)
            continue
        if depth == max_steps:
            exhausted = True
            continue
        for step in steps:
            key = alpha_key(step.term)
            if key in seen:
                continue
            if len(traces) >= max_terms:
                exhausted = True
                break
            seen.add(key)
            new = trace.extend(step)
            traces.append(new)
            frontier.append((new, depth + 1))
    return SearchResult(tuple(traces), exhausted, tuple(normal))


def replay(theory: Theory, trace: RewriteTrace) -> bool:
    """Check that every step of ``trace`` is a rewrite of its predecessor."""
    current = trace.source
    for step in trace.steps:
        if step not in rewrites(theory, current):
            return False
        current = step.term
    return True


# -- typing bridges ----------------------------------------------------------

# Premise index of each child in the derivation; a continuation application
# elaborates to an application whose function premise is the variable.
_PREMISE_OF = {s.KApp: (1,)}


def annotate(t: s.Term, ctx: Sequence[tuple[str, Formula]], annot: int, ty: Formula) -> s.Term:
    """Type-check ``t`` (``ctx`` outermost first) and record every shift's type in ``ann``.

    Ascriptions directly around a shift are dropped once their type is
    recorded.  Raises :class:`~tdpe.typecheck.TypeCheckError` if ``t`` does
    not check.
    """
    names = tuple(name for name, _ in reversed(ctx))
    types = tuple(a for _, a in reversed(ctx))
    d = check(types, annot, to_debruijn(t, names), ty)
    return _annotate(t, d)


def _annotate(t: s.Term, d: Derivation) -> s.Term:
    if isinstance(t, s.Var):
        return t
    fields = _CHILD_FIELDS[type(t)]
    premises = _PREMISE_OF.get(type(t), range(len(fields)))
    kids = {name: _annotate(getattr(t, name), d.premises[i]) for name, i in zip(fields, premises)}
    new = dataclasses.replace(t, **kids)
    if isinstance(new, s.Shift):
        new = dataclasses.replace(new, ann=d.type)
    if isinstance(new, s.Ascribe) and isinstance(new.term, s.Shift):
        return new.term
    return new


def mark_continuations(t: s.Term, bound: frozenset[str] = frozenset()) -> s.Term:
    """Turn applications of shift-bound variables into ``KApp`` nodes."""
    match t:
        case s.App(s.Var(k), a) if k in bound:
            return s.KApp(k, mark_continuations(a, bound))
        case s.Shift(k, body):
            return s.Shift(k, mark_continuations(body, bound | {k}), ann=t.ann)
        case s.Lam(x, ann, body):
            return s.Lam(x, ann, mark_continuations(body, bound - {x}))
        case s.Case(sc, ln, lb, rn, rb):
            return s.Case(
                mark_continuations(sc, bound),
                ln,
                mark_continuations(lb, bound - {ln}),
                rn,
                mark_continuations(rb, bound - {rn}),
            )
        case s.Var(_):
            return t
    kids = {name: mark_continuations(getattr(t, name), bound) for name in _CHILD_FIELDS[type(t)]}
    return dataclasses.replace(t, **kids)


def erase(t: s.Term) -> s.Term:
    """An ordinary term for TDPE: continuation applications become applications
    and annotated shifts are wrapped in an ascription of their type."""
    match t:
        case s.Var(_):
            return t
        case s.KApp(k, a):
            return s.App(s.Var(k), erase(a))
        case s.Shift(k, body):
            shift = s.Shift(k, erase(body), ann=t.ann)
            return shift if t.ann is None else s.Ascribe(shift, t.ann)
    kids = {name: erase(getattr(t, name)) for name in _CHILD_FIELDS[type(t)]}
    return dataclasses.replace(t, **kids)


def has_kapp(t: s.Term) -> bool:
    return any(isinstance(sub, s.KApp) for _, sub in positions(t))


def prepare(theory: Theory, t: s.Term, ctx: Sequence[tuple[str, Formula]], annot: int, ty: Formula) -> s.Term:
    """Annotate ``t`` at the given judgment and put it in the theory's syntax."""
    t = annotate(t, ctx, annot, ty)
    return mark_continuations(t) if theory is Theory.CBN else t
