from __future__ import annotations

import pytest

from tdpe.corpus import (
    CorpusError,
    canonical,
    load_corpus,
    builtin_corpus,
    parse_corpus,
    parse_entry,
    run_corpus,
    run_entries,
)
from tdpe.semantics import Strategy


def test_shipped_corpus_passes_everywhere():
    report = run_entries(builtin_corpus())
    assert report.entries == 8
    assert report.passed(Strategy.CBV) == report.total(Strategy.CBV) == 8
    assert report.passed(Strategy.CBN) == report.total(Strategy.CBN) == 8
    assert report.ok


def test_ex2_expects_single_reset_under_cbv():
    (entry,) = [e for e in builtin_corpus() if e.id == "ex2"]
    assert entry.input.count("<") == 3
    assert canonical(entry.expected_cbv) == r"\x0:bot. <x0>"


def test_empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n\n")
    report = run_corpus(path)
    assert report.ok and report.entries == 0
    assert report.lines()[-1] == "0 entries: cbv 0/0, cbn 0/0"


def test_case_bars_are_not_field_separators():
    line = (
        r"s | a + b -> b + a | \x:a + b. case x of inl y. (inr y : b + a) | inr z. (inl z : b + a)"
        r" | \x:a + b. case x of inl y. inr y | inr z. inl z"
        r" | \x:a + b. case x of inl y. inr y | inr z. inl z"
    )
    entry = parse_entry(line)
    assert entry.input.startswith(r"\x:a + b. case x of inl y.")
    assert entry.expected_cbv == entry.expected_cbn
    assert run_entries([entry]).ok


def test_malformed_lines():
    with pytest.raises(CorpusError):
        parse_entry("only | two")
    with pytest.raises(CorpusError, match="bad type"):
        parse_entry("e | a -> | x | x | x")
    with pytest.raises(CorpusError, match="could not split"):
        parse_entry("e | a | x | ( | x")


def test_mismatch_is_reported(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text(r"id | a -> a | \x:a. x | \x0:a. x0 | \y:a. <y>" + "\n")
    (entry,) = load_corpus(path)
    assert entry.line == 1
    report = run_corpus(path)
    assert not report.ok
    assert report.passed(Strategy.CBV) == 1 and report.passed(Strategy.CBN) == 0
    assert any("expected: \\x0:a. <x0>" in line for line in report.lines())


def test_errors_are_reported_per_entry():
    (entry,) = parse_corpus(r"bad | a -> b | \x:a. x | \x:a. x | \x:a. x")
    report = run_entries([entry])
    assert not report.ok
    assert all(r.error for r in report.results)
