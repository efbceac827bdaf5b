"""Random, type-directed generation of well-typed terms for property testing.

Generation is guided by an inhabitation oracle for the control-free fragment
(``bot`` is an ordinary atom there, with no elimination rule).  Every choice
the generator makes leaves it with goals the oracle can prove, so it never
backtracks, and when the depth runs out it falls back to the oracle's own
witness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .syntax import debruijn as db
from .syntax.debruijn import Context, DbTerm
from .syntax.formula import BOT, Arrow, Atom, Bot, Formula, Sum, is_atomic
from .typecheck import TypeCheckError, check, synth


class GenerationFailed(Exception):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int
    max_depth: int
    target_type: Formula
    allow_control: bool = False
    annot: int = 0
    allow_sums: bool = True


# -- inhabitation ------------------------------------------------------------
#
# Proofs are searched over hypothesis *sets* with a loop check on the current
# path.  A sum hypothesis, or a sum obtained by applying a hypothesis, is only
# split when both of its components are new.

@dataclass(frozen=True)
class _Proof:
    kind: str  # lam, inl, inr, head, case
    hyp: Formula | None = None
    nargs: int = 0
    subs: tuple[_Proof, ...] = ()
    ann: Formula | None = None


def _prefixes(h: Formula):
    """``(n, argument types, result)`` for each way of applying ``h`` to n arguments."""
    args: list[Formula] = []
    yield 0, (), h
    while isinstance(h, Arrow):
        args.append(h.dom)
        h = h.cod
        yield len(args), tuple(args), h


class _Prover:
    def __init__(self) -> None:
        self.memo: dict[tuple[frozenset, Formula], _Proof] = {}

    def prove(self, hyps: frozenset, goal: Formula, path: frozenset = frozenset()) -> _Proof | None:
        key = (hyps, goal)
        if key in self.memo:
            return self.memo[key]
        if key in path:
            return None
        proof = self._search(hyps, goal, path | {key})
        if proof is not None:
            self.memo[key] = proof
        return proof

    def _args(self, hyps, args, path):
        subs = []
        for a in args:
            p = self.prove(hyps, a, path)
            if p is None:
                return None
            subs.append(p)
        return tuple(subs)

    def _search(self, hyps: frozenset, goal: Formula, path: frozenset) -> _Proof | None:
        if isinstance(goal, Arrow):
            body = self.prove(hyps | {goal.dom}, goal.cod, path)
            return None if body is None else _Proof("lam", subs=(body,), ann=goal.dom)
        ordered = sorted(hyps, key=repr)
        for h in ordered:
            for n, args, res in _prefixes(h):
                if res == goal:
                    subs = self._args(hyps, args, path)
                    if subs is not None:
                        return _Proof("head", h, n, subs)
        if isinstance(goal, Sum):
            for kind, side in (("inl", goal.left), ("inr", goal.right)):
                p = self.prove(hyps, side, path)
                if p is not None:
                    return _Proof(kind, subs=(p,))
        for h in ordered:
            for n, args, res in _prefixes(h):
                if isinstance(res, Sum) and res.left not in hyps and res.right not in hyps:
                    subs = self._args(hyps, args, path)
                    if subs is None:
                        continue
                    left = self.prove(hyps | {res.left}, goal, path)
                    if left is None:
                        continue
                    right = self.prove(hyps | {res.right}, goal, path)
                    if right is not None:
                        return _Proof("case", h, n, subs + (left, right))
        return None


_PROVER = _Prover()


def inhabited(ctx: Context, ty: Formula) -> bool:
    """Whether some control-free term has type ``ty`` in ``ctx``."""
    return _PROVER.prove(frozenset(ctx), ty) is not None


def _realize(p: _Proof, ctx: Context) -> DbTerm:
    match p.kind:
        case "lam":
            return db.Lam(p.ann, _realize(p.subs[0], (p.ann,) + ctx))
        case "inl":
            return db.Inl(_realize(p.subs[0], ctx))
        case "inr":
            return db.Inr(_realize(p.subs[0], ctx))
    t = db.var(ctx.index(p.hyp))
    for sub in p.subs[: p.nargs]:
        t = db.App(t, _realize(sub, ctx))
    if p.kind == "head":
        return t
    res = p.hyp
    for _ in range(p.nargs):
        res = res.cod
    left, right = p.subs[p.nargs :]
    return db.Case(t, _realize(left, (res.left,) + ctx), _realize(right, (res.right,) + ctx))


def witness(ctx: Context, ty: Formula) -> DbTerm | None:
    """A control-free term of type ``ty`` in ``ctx``, or None if there is none."""
    ctx = tuple(ctx)
    p = _PROVER.prove(frozenset(ctx), ty)
    return None if p is None else _realize(p, ctx)


# -- generation --------------------------------------------------------------

_ATOMS = (BOT, Atom("a"), Atom("b"))


def gen_formula(rng: random.Random, depth: int, *, sums: bool = True) -> Formula:
    if depth <= 0 or rng.random() < 0.4:
        return rng.choice(_ATOMS)
    if sums and rng.random() < 0.3:
        return Sum(gen_formula(rng, depth - 1, sums=sums), gen_formula(rng, depth - 1, sums=sums))
    return Arrow(gen_formula(rng, depth - 1, sums=sums), gen_formula(rng, depth - 1, sums=sums))


class _Generator:
    def __init__(self, cfg: GenConfig, rng: random.Random) -> None:
        self.cfg = cfg
        self.rng = rng

    def ok(self, ctx: Context, ty: Formula) -> bool:
        return _PROVER.prove(frozenset(ctx), ty) is not None

    def small_type(self, ctx: Context) -> Formula:
        pool = list(_ATOMS) + [a for a in ctx if is_atomic(a)]
        roll = self.rng.random()
        if roll < 0.3:
            return Arrow(self.rng.choice(pool), self.rng.choice(pool))
        if self.cfg.allow_sums and roll < 0.45:
            return Sum(self.rng.choice(pool), self.rng.choice(pool))
        return self.rng.choice(pool)

    def inhabited_small_type(self, ctx: Context) -> Formula | None:
        for _ in range(4):
            x = self.small_type(ctx)
            if self.ok(ctx, x):
                return x
        return None

    def options(self, ctx: Context, b: int, ty: Formula) -> list:
        cfg = self.cfg
        found: list = []
        for i, h in enumerate(ctx):
            for n, args, res in _prefixes(h):
                usable = res == ty or (cfg.allow_sums and isinstance(res, Sum))
                if usable and all(self.ok(ctx, a) for a in args):
                    found.append(("head" if res == ty else "case", i, args))
        if isinstance(ty, Arrow):
            found += [("lam", None, None)] * 3
        if isinstance(ty, Sum):
            for kind, side in (("inl", ty.left), ("inr", ty.right)):
                if self.ok(ctx, side):
                    found += [(kind, None, None)] * 2
        found.append(("redex", None, None))
        if cfg.allow_sums:
            found.append(("case-inj", None, None))
        if cfg.allow_control:
            if isinstance(ty, Bot) and self.ok(ctx, BOT):
                found += [("reset", None, None)] * 2
            if b == 1:
                found += [("shift", None, None)] * 2
        return found

    def gen(self, ctx: Context, b: int, ty: Formula, depth: int) -> DbTerm:
        if depth <= 0:
            t = witness(ctx, ty)
            if t is None:
                raise GenerationFailed("goal has no control-free inhabitant")
            return t
        kind, i, args = self.rng.choice(self.options(ctx, b, ty))
        d = depth - 1
        match kind:
            case "head" | "case":
                t = db.var(i)
                res = ctx[i]
                for a in args:
                    t = db.App(t, self.gen(ctx, b, a, d))
                    res = res.cod
                if kind == "head":
                    return t
                return db.Case(
                    t,
                    self.gen((res.left,) + ctx, b, ty, d),
                    self.gen((res.right,) + ctx, b, ty, d),
                )
            case "lam":
                return db.Lam(ty.dom, self.gen((ty.dom,) + ctx, b, ty.cod, d))
            case "inl":
                return db.Inl(self.gen(ctx, b, ty.left, d))
            case "inr":
                return db.Inr(self.gen(ctx, b, ty.right, d))
            case "redex":
                x = self.inhabited_small_type(ctx)
                if x is None:
                    return self.gen(ctx, b, ty, 0)
                fun = db.Lam(x, self.gen((x,) + ctx, b, ty, d))
                fun = self.synthesizable(ctx, b, fun, Arrow(x, ty))
                return db.App(fun, self.gen(ctx, b, x, d))
            case "case-inj":
                s = Sum(self.small_type(ctx), self.small_type(ctx))
                sides = [side for side in (s.left, s.right) if self.ok(ctx, side)]
                if not sides:
                    return self.gen(ctx, b, ty, 0)
                side = self.rng.choice(sides)
                inj = db.Inl if side is s.left else db.Inr
                return db.Case(
                    db.Ascribe(inj(self.gen(ctx, b, side, d)), s),
                    self.gen((s.left,) + ctx, b, ty, d),
                    self.gen((s.right,) + ctx, b, ty, d),
                )
            case "reset":
                return db.Reset(self.gen(ctx, 1, BOT, d))
            case "shift":
                return db.Shift(self.gen((Arrow(ty, BOT),) + ctx, 1, BOT, d))
        raise ValueError(kind)

    def synthesizable(self, ctx: Context, b: int, t: DbTerm, ty: Formula) -> DbTerm:
        try:
            synth(ctx, b, t)
        except TypeCheckError:
            return db.Ascribe(t, ty)
        return t


def gen_typed_term(cfg: GenConfig, ctx: Context = ()) -> DbTerm:
    """A term ``t`` with ``check(ctx, cfg.annot, t, cfg.target_type)``; same seed, same term.

    Raises :class:`GenerationFailed` when the target has no control-free
    inhabitant in ``ctx``.
    """
    ctx = tuple(ctx)
    if not inhabited(ctx, cfg.target_type):
        raise GenerationFailed("target type has no control-free inhabitant")
    gen = _Generator(cfg, random.Random(cfg.seed))
    t = gen.gen(ctx, cfg.annot, cfg.target_type, cfg.max_depth)
    check(ctx, cfg.annot, t, cfg.target_type)
    return t


def sample_terms(
    seed: int,
    count: int,
    *,
    max_depth: int = 5,
    annot: int = 0,
    allow_control: bool = False,
    allow_sums: bool = True,
    ctx: Context = (),
    target: Formula | None = None,
):
    """Yield ``(target_type, term)`` pairs, skipping uninhabited target types."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        ty = target if target is not None else gen_formula(rng, 3, sums=allow_sums)
        if not inhabited(ctx, ty):
            if target is not None:
                raise GenerationFailed("target type has no control-free inhabitant")
            continue
        cfg = GenConfig(
            seed=rng.randrange(2**32),
            max_depth=max_depth,
            target_type=ty,
            allow_control=allow_control,
            annot=annot,
            allow_sums=allow_sums,
        )
        produced += 1
        yield ty, gen_typed_term(cfg, ctx)
