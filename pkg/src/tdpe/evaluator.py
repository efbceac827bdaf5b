"""Evaluation of typing derivations into the semantic domain.

Both evaluators are structurally recursive on the derivation and return a
forcing value.  ``annot`` is the annotation the result is wanted at; it may
exceed the derivation's own annotation, and a reset always evaluates its body
at annotation 1.
"""

from __future__ import annotations

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
    StrongValue,
    Strategy,
    bind,
    coerce_env,
    meta_reset,
    ret,
    run,
)
from .syntax.debruijn import Context, DbTerm
from .typecheck import Derivation


def _check_entry(d: Derivation, annot: int) -> None:
    if annot not in (0, 1) or d.annot > annot:
        raise ValueError(f"cannot evaluate a |-{d.annot} derivation at annotation {annot}")


def _reset(inner: ForcingValue, annot: int) -> ForcingValue:
    def forcing(w1: Context, k) -> DbTerm:
        answer = run(inner, w1)
        if annot == 0:
            answer = meta_reset(answer)
        return k(w1, AtomV(answer, w1))

    return forcing


def eval_cbn(d: Derivation, env: Environment, annot: int) -> ForcingValue:
    """Call-by-name evaluation; ``env`` holds one forcing value per context entry."""
    _check_entry(d, annot)
    return _cbn(d, tuple(env), annot)


def _cbn(d: Derivation, env: Environment, annot: int) -> ForcingValue:
    match d.rule:
        case "hyp":
            return env[0]
        case "wkn":
            return _cbn(d.premises[0], env[1:], annot)
        case "ascribe":
            return _cbn(d.premises[0], env, annot)
        case "lam":
            body = d.premises[0]
            return ret(FunN(lambda w, b, arg: _cbn(body, (arg,) + coerce_env(Strategy.CBN, env, annot, b), b)))
        case "app":
            fun = _cbn(d.premises[0], env, annot)
            arg = _cbn(d.premises[1], env, annot)
            return bind(lambda w, phi: phi.fn(w, annot, arg), fun)
        case "inl":
            return ret(InlN(_cbn(d.premises[0], env, annot)))
        case "inr":
            return ret(InrN(_cbn(d.premises[0], env, annot)))
        case "case":
            scrut, left, right = d.premises

            def branch(w: Context, gamma: StrongValue) -> ForcingValue:
                if isinstance(gamma, InlN):
                    return _cbn(left, (gamma.value,) + env, annot)
                assert isinstance(gamma, InrN)
                return _cbn(right, (gamma.value,) + env, annot)

            return bind(branch, _cbn(scrut, env, annot))
        case "shift":
            body = d.premises[0]

            def forcing(w1: Context, k) -> DbTerm:
                cont = FunN(lambda w2, b, alpha: ret(AtomV(alpha(w2, k), w2)))
                return run(_cbn(body, (ret(cont),) + env, annot), w1)

            return forcing
        case "reset":
            inner_env = coerce_env(Strategy.CBN, env, annot, 1)
            return _reset(_cbn(d.premises[0], inner_env, 1), annot)
    raise ValueError(f"unknown rule {d.rule!r}")


def eval_cbv(d: Derivation, env: Environment, annot: int) -> ForcingValue:
    """Call-by-value evaluation; ``env`` holds one strong value per context entry."""
    _check_entry(d, annot)
    return _cbv(d, tuple(env), annot)


def _cbv(d: Derivation, env: Environment, annot: int) -> ForcingValue:
    match d.rule:
        case "hyp":
            return ret(env[0])
        case "wkn":
            return _cbv(d.premises[0], env[1:], annot)
        case "ascribe":
            return _cbv(d.premises[0], env, annot)
        case "lam":
            body = d.premises[0]
            return ret(FunV(lambda w, b, arg: _cbv(body, (arg,) + env, b)))
        case "app":
            fun = _cbv(d.premises[0], env, annot)
            arg = _cbv(d.premises[1], env, annot)
            return bind(lambda w, phi: bind(lambda w2, a: phi.fn(w2, annot, a), arg), fun)
        case "inl":
            return bind(lambda w, a: ret(InlV(a)), _cbv(d.premises[0], env, annot))
        case "inr":
            return bind(lambda w, a: ret(InrV(a)), _cbv(d.premises[0], env, annot))
        case "case":
            scrut, left, right = d.premises

            def branch(w: Context, gamma: StrongValue) -> ForcingValue:
                if isinstance(gamma, InlV):
                    return _cbv(left, (gamma.value,) + env, annot)
                assert isinstance(gamma, InrV)
                return _cbv(right, (gamma.value,) + env, annot)

            return bind(branch, _cbv(scrut, env, annot))
        case "shift":
            body = d.premises[0]

            def forcing(w1: Context, k) -> DbTerm:
                cont = FunV(lambda w2, b, alpha: ret(AtomV(k(w2, alpha), w2)))
                return run(_cbv(body, (cont,) + env, annot), w1)

            return forcing
        case "reset":
            # Moving strong values from annotation 0 to 1 changes nothing.
            return _reset(_cbv(d.premises[0], env, 1), annot)
    raise ValueError(f"unknown rule {d.rule!r}")
