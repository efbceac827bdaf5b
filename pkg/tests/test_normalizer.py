from __future__ import annotations

import pytest
from conftest import CORPUS, db, ty
from hypothesis import given, settings
from hypothesis import strategies as st

from tdpe import (
    Left,
    OpenTermError,
    Right,
    Strategy,
    TypeCheckError,
    check,
    extract_disjunct,
    reflect,
    reify,
    tdpe,
    tdpe_cbn,
    tdpe_cbv,
)
from tdpe.generate import sample_terms
from tdpe.normalizer import gamma_reflect, idempotence_report
from tdpe.semantics import AtomV, FunN, FunV, ret
from tdpe.syntax import debruijn as d
from tdpe.syntax.debruijn import HYP, NfClass, classify
from tdpe.syntax.formula import BOT, Arrow, Atom, Sum
from tdpe.syntax.printer import print_term

A, B = Atom("a"), Atom("b")


class TestReify:
    def test_bot_runs(self):
        assert reify(Strategy.CBN, (BOT,), 0, BOT, ret(AtomV(HYP, (BOT,)))) == HYP

    def test_atom_at_one_shifts(self):
        out = reify(Strategy.CBN, (A,), 1, A, ret(AtomV(HYP, (A,))))
        assert out == d.Shift(d.App(HYP, d.Wkn(HYP)))

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_identity(self, strategy):
        t = db(r"\x:a. x")
        assert tdpe(strategy, (), 0, t, Arrow(A, A)).term == d.Lam(A, HYP)

    def test_sum_example(self):
        e = CORPUS["ex8"]
        out = str(tdpe_cbv(db(e.input), 0, e.formula))
        assert out == r"\x0:bot + bot. \x1:a. case x0 of inl x2. <x2> | inr x2. <x2>"

    def test_sum_at_one_shifts_and_applies_continuation(self):
        s = Sum(BOT, BOT)
        out = reify(Strategy.CBV, (s,), 1, s, reflect(Strategy.CBV, (s,), 1, s, HYP))
        assert print_term(out, ("x0",)) == "S x1. case x0 of inl x2. x1 (inl x2) | inr x2. x1 (inr x2)"

    def test_atomic_payload_at_one_is_shifted(self):
        s = Sum(A, B)
        out = reify(Strategy.CBV, (s,), 1, s, reflect(Strategy.CBV, (s,), 1, s, HYP))
        assert print_term(out, ("x0",)) == (
            "S x1. case x0 of inl x2. x1 (inl S x3. x3 x2) | inr x2. x1 (inr S x3. x3 x2)"
        )


class TestReflect:
    def test_atom(self):
        v = reflect(Strategy.CBN, (A,), 0, A, HYP)
        assert v((A,), lambda w, sv: sv.term) == HYP

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_arrow_eta_expands(self, strategy):
        ctx = (Arrow(A, A),)
        out = reify(strategy, ctx, 0, Arrow(A, A), reflect(strategy, ctx, 0, Arrow(A, A), HYP))
        assert print_term(out, ("x0",)) == r"\x1:a. x0 x1"

    @pytest.mark.parametrize("strategy, tag", [(Strategy.CBV, FunV), (Strategy.CBN, FunN)])
    def test_arrow_value_shape(self, strategy, tag):
        v = reflect(strategy, (Arrow(A, A),), 0, Arrow(A, A), HYP)
        assert v((Arrow(A, A),), lambda w, sv: isinstance(sv, tag) and HYP) == HYP

    def test_sum_case_splits(self):
        ctx = (Sum(A, B),)
        out = reify(Strategy.CBN, ctx, 0, Sum(A, B), reflect(Strategy.CBN, ctx, 0, Sum(A, B), HYP))
        assert print_term(out, ("x0",)) == "case x0 of inl x1. inl x1 | inr x1. inr x1"


class TestGammaReflect:
    def test_empty(self):
        assert gamma_reflect(Strategy.CBN, (), 0) == ()

    def test_one_entry_per_hypothesis(self):
        ctx = (A, B, BOT)
        env = gamma_reflect(Strategy.CBN, ctx, 0)
        assert len(env) == 3
        read = [v(ctx, lambda w, sv: sv.term) for v in env]
        assert read == [d.var(0), d.var(1), d.var(2)]

    def test_entries_eta_expand_their_variable(self):
        ctx = (Arrow(A, A), Arrow(B, B))
        env = gamma_reflect(Strategy.CBN, ctx, 0)
        outs = [print_term(reify(Strategy.CBN, ctx, 0, a, v), ("x0", "x1")[::-1]) for a, v in zip(ctx, env)]
        assert outs == [r"\x2:a. x1 x2", r"\x2:b. x0 x2"]


class TestTdpe:
    @pytest.mark.parametrize(
        "ident, expected",
        [
            ("ex1", r"\x0:bot. <<x0>>"),
            ("ex2", r"\x0:bot. <<x0>>"),
            ("ex3", r"\x0:bot -> bot. \x1:bot. <<x0 <x1>>>"),
        ],
    )
    def test_cbn(self, ident, expected):
        e = CORPUS[ident]
        assert str(tdpe_cbn((), 0, db(e.input), e.formula)) == expected

    @pytest.mark.parametrize(
        "ident, expected",
        [
            ("ex1", r"\x0:bot. <x0>"),
            ("ex5", r"\x0:bot -> bot. \x1:bot. <x0 (x0 (x0 x1))>"),
            ("ex6", r"\x0:bot. \x1:bot -> bot. <x1 x0>"),
        ],
    )
    def test_cbv(self, ident, expected):
        e = CORPUS[ident]
        assert str(tdpe_cbv(db(e.input), 0, e.formula)) == expected

    def test_cbn_open_term(self):
        ctx = (Arrow(A, A), A)
        out = tdpe_cbn(ctx, 0, db(r"(\y:a. f y) x", ["f", "x"]), A)
        assert out.term == d.App(HYP, d.Wkn(HYP))

    def test_cbv_rejects_open_terms(self):
        with pytest.raises(OpenTermError):
            tdpe_cbv(HYP, 0, A, ctx=(A,))

    def test_type_errors_propagate(self):
        with pytest.raises(TypeCheckError):
            tdpe_cbn((), 0, db(r"\x:a. x"), Arrow(A, B))

    def test_result_records_its_judgment(self):
        out = tdpe_cbn((A,), 1, HYP, A)
        assert out.judgment.ctx == (A,) and out.judgment.annot == 1
        assert out.strategy is Strategy.CBN


class TestDisjunct:
    def test_left(self):
        t = db(r"(inl (\x:a. x) : (a -> a) + b)")
        assert extract_disjunct(t, Arrow(A, A), B) == Left(d.Lam(A, HYP))

    def test_right(self):
        t = db(r"(inr (\x:a. x) : b + (a -> a))")
        assert extract_disjunct(t, B, Arrow(A, A), Strategy.CBN) == Right(d.Lam(A, HYP))

    def test_through_a_redex(self):
        t = db(r"(\p:bot -> bot. (inr p : a + (bot -> bot))) (\q:bot. <q>)")
        assert extract_disjunct(t, A, ty("bot -> bot")) == Right(d.Lam(BOT, d.Reset(HYP)))

    def test_open_term_is_rejected(self):
        with pytest.raises(TypeCheckError):
            extract_disjunct(d.Inl(HYP), A, B)


def _sound(strategy, ctx, b, t, a):
    out = tdpe(strategy, ctx, b, t, a).term
    check(ctx, b, out, a)
    assert classify(out) is not NfClass.NOT_IN_GRAMMAR
    if b == 0:
        assert not any(isinstance(n, d.Shift) for n in _outside_resets(out))
    return out


def _outside_resets(t):
    yield t
    match t:
        case d.Reset():
            return
        case d.Lam(_, body) | d.Wkn(body) | d.Inl(body) | d.Inr(body) | d.Shift(body) | d.Ascribe(body, _):
            yield from _outside_resets(body)
        case d.App(f, x):
            yield from _outside_resets(f)
            yield from _outside_resets(x)
        case d.Case(s, l, r):
            for u in (s, l, r):
                yield from _outside_resets(u)


class TestProperties:
    @settings(max_examples=60)
    @given(st.integers(0, 10**6), st.booleans(), st.sampled_from([0, 1]))
    def test_closed_results_recheck_and_are_normal(self, seed, control, annot):
        for a, t in sample_terms(seed, 3, max_depth=4, annot=annot, allow_control=control):
            for strategy in Strategy:
                _sound(strategy, (), annot, t, a)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6), st.booleans())
    def test_open_cbn_results_recheck(self, seed, control):
        ctx = (Sum(A, BOT), Arrow(A, BOT), BOT)
        for a, t in sample_terms(seed, 3, max_depth=4, allow_control=control, ctx=ctx):
            _sound(Strategy.CBN, ctx, 0, t, a)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6), st.sampled_from(list(Strategy)))
    def test_disjunction_property(self, seed, strategy):
        for target in (Sum(A, Arrow(A, A)), Sum(Arrow(BOT, BOT), B)):
            for a, t in sample_terms(seed, 2, max_depth=4, target=target, allow_control=True):
                out = extract_disjunct(t, a.left, a.right, strategy)
                assert isinstance(out, (Left, Right))


class TestIdempotence:
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_control_free_normal_forms_are_fixed_points(self, strategy):
        samples = [((), 0, t, a) for a, t in sample_terms(21, 300, max_depth=5)]
        report = idempotence_report(strategy, samples)
        assert report.stable == report.checked, report.unstable[:3]

    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_report_with_control(self, strategy):
        samples = [((), b, t, a) for b in (0, 1) for a, t in sample_terms(22 + b, 200, max_depth=5, annot=b, allow_control=True)]
        report = idempotence_report(strategy, samples)
        print(report)
        for first, second in report.unstable[:3]:
            print(f"    {first}  ~>  {second}")
        assert report.checked == 400
