from __future__ import annotations

import pytest
from conftest import CORPUS, db
from hypothesis import given, settings
from hypothesis import strategies as st

from tdpe import Strategy, tdpe
from tdpe import semantics as sem
from tdpe.evaluator import eval_cbn
from tdpe.generate import sample_terms
from tdpe.normalizer import gamma_reflect, reflect, reify
from tdpe.semantics import AtomV, InlN, InlV, bind, coerce01_cbn, meta_reset, ret, run, weaken_sem
from tdpe.syntax import debruijn as d
from tdpe.syntax.debruijn import HYP
from tdpe.syntax.formula import BOT, Atom, Sum
from tdpe.typecheck import check

A = Atom("a")
W1 = (BOT,)


class TestRetRunBind:
    def test_run_ret_is_identity(self):
        assert run(ret(AtomV(HYP, W1)), W1) == HYP

    def test_run_ret_weakens_to_the_running_world(self):
        assert run(ret(AtomV(HYP, W1)), (A, BOT)) == d.Wkn(HYP)

    def test_ret_feeds_injection_to_continuation(self):
        def k(w, sv):
            assert isinstance(sv, InlV)
            return d.Inl(sv.value.term)

        assert ret(InlV(AtomV(HYP, W1)))(W1, k) == d.Inl(HYP)

    def test_bind_left_identity_on_atom(self):
        f = lambda w, sv: ret(AtomV(d.App(d.var(1), sv.term), w))  # noqa: E731
        world = (BOT, Atom("b"))
        sv = AtomV(HYP, world)
        assert run(bind(f, ret(sv)), world) == run(f(world, sv), world)

    def test_bind_right_identity_on_atom(self):
        v = ret(AtomV(HYP, W1))
        assert run(bind(lambda w, sv: ret(sv), v), W1) == run(v, W1)


class TestMetaReset:
    def test_wraps(self):
        assert meta_reset(HYP) == d.Reset(HYP)

    def test_nests(self):
        assert meta_reset(d.Reset(HYP)) == d.Reset(d.Reset(HYP))


class TestCoercion:
    def test_run_of_coerced_atom_is_delimited(self):
        assert run(coerce01_cbn(ret(AtomV(HYP, W1))), W1) == d.Reset(HYP)

    def test_coerced_injection_payload_is_coerced(self):
        v = coerce01_cbn(ret(InlN(ret(AtomV(HYP, W1)))))

        def k(w, sv):
            assert isinstance(sv, InlN)
            return run(sv.value, w)

        assert v(W1, k) == d.Reset(d.Reset(HYP))

    def test_empty_environment(self):
        assert sem.coerce_env(Strategy.CBN, (), 0, 1) == ()

    def test_same_annotation_is_untouched(self):
        env = (ret(AtomV(HYP, W1)),)
        assert sem.coerce_env(Strategy.CBN, env, 1, 1) is env

    def test_call_by_value_never_coerces(self, monkeypatch):
        def boom(v):
            raise AssertionError("call-by-value pipeline used the 0->1 coercion")

        monkeypatch.setattr(sem, "coerce01_cbn", boom)
        for entry in CORPUS.values():
            tdpe(Strategy.CBV, (), 0, db(entry.input), entry.formula)
        with pytest.raises(AssertionError):
            tdpe(Strategy.CBN, (), 0, db(CORPUS["ex1"].input), CORPUS["ex1"].formula)

    @given(st.integers(0, 3))
    def test_coercion_inserts_a_reset_around_neutral_answers(self, i):
        world = (BOT,) * 4
        e = d.var(i)
        assert run(coerce01_cbn(ret(AtomV(e, world))), world) == d.Reset(e)


class TestWeakenSem:
    def test_atom(self):
        assert weaken_sem(AtomV(HYP, W1), (A, BOT)) == AtomV(d.Wkn(HYP), (A, BOT))

    def test_empty_extension(self):
        env = (AtomV(HYP, W1), AtomV(d.Wkn(HYP), W1))
        assert weaken_sem(env, W1) == env

    @given(st.lists(st.sampled_from([BOT, A]), max_size=3), st.lists(st.sampled_from([BOT, A]), max_size=3))
    def test_weakenings_compose(self, ext1, ext2):
        w1 = tuple(ext1) + W1
        w2 = tuple(ext2) + w1
        sv = InlV(AtomV(HYP, W1))
        assert weaken_sem(weaken_sem(sv, w1), w2) == weaken_sem(sv, w2)

    def test_weakened_forcing_value_runs_identically(self):
        world = (A, BOT)
        v = ret(AtomV(HYP, W1))
        assert run(weaken_sem(v, world), world) == run(v, world)


# Monad laws over values produced by evaluating generated terms.  Answers are
# compared under several continuations that read the strong value back.

CTX = (Sum(A, BOT), BOT, A)


def _continuations(strategy, ty):
    def readback(w, sv):
        return reify(strategy, w, 0, ty, ret(sv))

    def delimited(w, sv):
        return d.Reset(readback(w, sv))

    def tagged(w, sv):
        return d.Inr(d.App(d.var(len(w) - 1), readback(w, sv)))

    return readback, delimited, tagged


def _values(seed):
    for ty, t in sample_terms(seed, 2, max_depth=3, ctx=CTX):
        der = check(CTX, 0, t, ty)
        yield ty, eval_cbn(der, gamma_reflect(Strategy.CBN, CTX, 0), 0)
    yield Sum(A, BOT), reflect(Strategy.CBN, CTX, 0, Sum(A, BOT), HYP)


class TestMonadLaws:
    @settings(max_examples=30)
    @given(st.integers(0, 10**6))
    def test_right_identity(self, seed):
        for ty, v in _values(seed):
            for k in _continuations(Strategy.CBN, ty):
                assert bind(lambda w, sv: ret(sv), v)(CTX, k) == v(CTX, k)

    @settings(max_examples=30)
    @given(st.integers(0, 10**6))
    def test_left_identity(self, seed):
        def f(w, sv):
            return ret(InlN(ret(sv)))

        for ty, v in _values(seed):
            for w, sv in _delivered(v):
                for k in _continuations(Strategy.CBN, Sum(ty, BOT)):
                    assert bind(f, ret(sv))(w, k) == f(w, sv)(w, k)


def _delivered(v):
    """The (world, strong value) pairs ``v`` hands to its continuation."""
    seen = []
    v(CTX, lambda w, sv: seen.append((w, sv)) or HYP)
    return seen
