from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tdpe.corpus import builtin_corpus
from tdpe.syntax import debruijn as d
from tdpe.syntax import parse_formula, parse_term, to_debruijn
from tdpe.syntax.formula import BOT, Arrow, Atom, Sum

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

CORPUS = {entry.id: entry for entry in builtin_corpus()}


def db(src: str, names=()) -> d.DbTerm:
    return to_debruijn(parse_term(src), names)


def ty(src: str):
    return parse_formula(src)


@pytest.fixture
def corpus():
    return CORPUS


atoms = st.sampled_from([BOT, Atom("a"), Atom("b")])

formulas = st.recursive(
    atoms,
    lambda inner: st.one_of(st.builds(Arrow, inner, inner), st.builds(Sum, inner, inner)),
    max_leaves=6,
)


def db_terms(max_leaves: int = 12):
    """Untyped de Bruijn terms, possibly with free variables and explicit weakenings."""
    leaf = st.builds(d.var, st.integers(0, 3))

    def extend(inner):
        return st.one_of(
            st.builds(d.Wkn, inner),
            st.builds(d.Lam, formulas, inner),
            st.builds(d.App, inner, inner),
            st.builds(d.Inl, inner),
            st.builds(d.Inr, inner),
            st.builds(d.Case, inner, inner, inner),
            st.builds(d.Shift, inner),
            st.builds(d.Reset, inner),
            st.builds(d.Ascribe, inner, formulas),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


seeds = st.integers(0, 2**32 - 1)


# One line per acceptance criterion, shown in the terminal summary.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
