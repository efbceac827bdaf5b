from __future__ import annotations

import pytest
from conftest import CORPUS, db, ty
from hypothesis import given, settings
from hypothesis import strategies as st

from tdpe import TypeCheckError, check, synth
from tdpe.generate import sample_terms
from tdpe.syntax import debruijn as d
from tdpe.syntax.debruijn import HYP
from tdpe.syntax.formula import BOT, Arrow, Atom, Sum
from tdpe.typecheck import annot_weaken, type_checks

A = Atom("a")


class TestCheck:
    def test_hypothesis(self):
        der = check([A], 0, HYP, A)
        assert der.rule == "hyp"
        assert der.type == A and der.annot == 0

    def test_shift_outside_delimiter(self):
        with pytest.raises(TypeCheckError) as info:
            check([], 0, d.Shift(HYP), A)
        assert info.value.kind == "shift-outside-delimiter"

    def test_shift_under_reset_is_accepted(self):
        der = check([], 0, db(r"\x:bot. <(\y:bot. y) (S k. x)>"), ty("bot -> bot"))
        shifts = [n for n in der.nodes() if n.rule == "shift"]
        assert len(shifts) == 1 and shifts[0].annot == 1

    def test_shift_body_sees_continuation(self):
        der = check([A], 1, d.Shift(d.App(HYP, d.Wkn(HYP))), A)
        body = der.premises[0]
        assert body.judgment.ctx == (Arrow(A, BOT), A)
        assert body.annot == 1 and body.type == BOT

    def test_reset_must_be_bot(self):
        with pytest.raises(TypeCheckError) as info:
            check([A], 0, d.Reset(HYP), A)
        assert info.value.kind == "reset-type"

    def test_reset_body_is_checked_at_one(self):
        der = check([BOT], 0, d.Reset(HYP), BOT)
        assert der.annot == 0 and der.premises[0].annot == 1

    def test_unbound(self):
        with pytest.raises(TypeCheckError) as info:
            check([], 0, HYP, A)
        assert info.value.kind == "unbound"

    def test_mismatch(self):
        with pytest.raises(TypeCheckError) as info:
            check([A], 0, HYP, BOT)
        assert info.value.kind == "mismatch"

    def test_injection_cannot_synthesize(self):
        with pytest.raises(TypeCheckError) as info:
            synth([A], 0, d.Inl(HYP))
        assert info.value.kind == "cannot-synthesize"

    def test_ascription_switches_modes(self):
        der = synth([A], 0, d.Ascribe(d.Inl(HYP), Sum(A, BOT)))
        assert der.type == Sum(A, BOT)

    def test_case_branches_bind_scrutinee_components(self):
        der = check([Sum(A, BOT)], 0, db("case x of inl y. inr y | inr z. inl z", ["x"]), Sum(BOT, A))
        _, left, right = der.premises
        assert left.judgment.ctx[0] == A and right.judgment.ctx[0] == BOT

    def test_bad_annotation(self):
        with pytest.raises(ValueError):
            check([A], 2, HYP, A)

    def test_type_checks(self):
        assert type_checks([A], 0, HYP, A)
        assert not type_checks([A], 0, HYP, BOT)

    @pytest.mark.parametrize("ident", sorted(CORPUS))
    def test_corpus_inputs_check(self, ident):
        entry = CORPUS[ident]
        check([], 0, db(entry.input), entry.formula)


class TestAnnotWeaken:
    def test_hypothesis(self):
        der = annot_weaken(check([A], 0, HYP, A))
        assert der.annot == 1 and der.type == A

    def test_corpus_entry(self):
        t = db(CORPUS["ex1"].input)
        der = annot_weaken(check([], 0, t, ty("bot -> bot")))
        assert der.annot == 1 and der.term == t

    def test_reset_reannotated_premise_unchanged(self):
        before = check([BOT], 0, d.Reset(HYP), BOT)
        after = annot_weaken(before)
        assert after.annot == 1
        assert after.premises == before.premises


def _samples(seed, control):
    return list(sample_terms(seed, 3, max_depth=4, annot=0, allow_control=control))


class TestProperties:
    @settings(max_examples=40)
    @given(st.integers(0, 10**6), st.booleans())
    def test_annotation_monotone(self, seed, control):
        for a, t in _samples(seed, control):
            check([], 1, t, a)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6), st.booleans(), st.sampled_from([BOT, A, Sum(A, BOT)]))
    def test_context_monotone(self, seed, control, extra):
        for a, t in _samples(seed, control):
            check([extra], 0, d.Wkn(t), a)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6), st.booleans())
    def test_derivations_are_unique(self, seed, control):
        for a, t in _samples(seed, control):
            assert check([], 0, t, a) == check([], 0, t, a)
            # synthesis, when it succeeds, agrees with checking
            try:
                s = synth([], 0, t)
            except TypeCheckError:
                continue
            assert s.type == a

    @settings(max_examples=40)
    @given(st.integers(0, 10**6))
    def test_shift_nodes_have_annotation_one(self, seed):
        for a, t in _samples(seed, True):
            for node in check([], 0, t, a).nodes():
                if node.rule == "shift":
                    assert node.annot == 1
                if node.rule == "reset":
                    assert node.type == BOT and node.premises[0].annot == 1
