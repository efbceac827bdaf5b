"""Golden corpus files and the runner that checks TDPE against them.

A corpus file has one entry per line, ``id | type | input | cbv | cbn``,
with ``#`` starting a comment line.  Since ``|`` also separates case
branches, the three term fields are found by trying every split and keeping
the one where each field parses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .normalizer import tdpe
from .semantics import Strategy
from .syntax import ParseError, parse_formula, parse_term, print_term, to_debruijn
from .syntax.formula import Formula


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    type: str
    input: str
    expected_cbv: str
    expected_cbn: str
    line: int = field(default=0, compare=False)

    @property
    def formula(self) -> Formula:
        return parse_formula(self.type)

    def expected(self, strategy: Strategy) -> str:
        return self.expected_cbv if strategy is Strategy.CBV else self.expected_cbn


def canonical(text: str) -> str:
    """Canonical print of a closed term given as text."""
    return print_term(to_debruijn(parse_term(text)))


def _parses(text: str) -> bool:
    try:
        parse_term(text)
    except (ParseError, ValueError):
        return False
    return True


def parse_entry(line: str, lineno: int = 0) -> CorpusEntry:
    head = line.split("|", 2)
    if len(head) < 3:
        raise CorpusError(f"line {lineno}: expected 'id | type | input | cbv | cbn'")
    ident, ty, rest = (part.strip() for part in head)
    try:
        parse_formula(ty)
    except ParseError as exc:
        raise CorpusError(f"line {lineno}: bad type: {exc}") from exc
    cuts = [i for i, ch in enumerate(rest) if ch == "|"]
    found = []
    for a in range(len(cuts)):
        for b in range(a + 1, len(cuts)):
            i, j = cuts[a], cuts[b]
            fields = (rest[:i].strip(), rest[i + 1 : j].strip(), rest[j + 1 :].strip())
            if all(fields) and all(_parses(f) for f in fields):
                found.append(fields)
    if not found:
        raise CorpusError(f"line {lineno}: could not split into input | cbv | cbn")
    if len(found) > 1:
        raise CorpusError(f"line {lineno}: ambiguous split of the term fields")
    term, cbv, cbn = found[0]
    return CorpusEntry(ident, ty, term, cbv, cbn, line=lineno)


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    text = Path(path).read_text(encoding="utf-8")
    return parse_corpus(text)


def parse_corpus(text: str) -> list[CorpusEntry]:
    entries = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        entries.append(parse_entry(stripped, lineno))
    return entries


def builtin_corpus_text() -> str:
    return resources.files("tdpe").joinpath("data/golden_corpus.txt").read_text(encoding="utf-8")


def builtin_corpus() -> list[CorpusEntry]:
    return parse_corpus(builtin_corpus_text())


@dataclass(frozen=True)
class CaseResult:
    id: str
    strategy: Strategy
    expected: str
    actual: str | None
    seconds: float
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.actual == self.expected


@dataclass(frozen=True)
class CorpusReport:
    results: tuple[CaseResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def entries(self) -> int:
        return len({r.id for r in self.results})

    def passed(self, strategy: Strategy) -> int:
        return sum(r.ok for r in self.results if r.strategy is strategy)

    def total(self, strategy: Strategy) -> int:
        return sum(1 for r in self.results if r.strategy is strategy)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.ok else "FAIL"
            line = f"{r.id} {r.strategy.value} {status} ({r.seconds * 1000:.1f} ms): {r.actual or ''}"
            if not r.ok:
                line += f"\n    expected: {r.expected}"
                if r.error:
                    line += f"\n    error: {r.error}"
            out.append(line)
        summary = ", ".join(
            f"{s.value} {self.passed(s)}/{self.total(s)}" for s in (Strategy.CBV, Strategy.CBN)
        )
        out.append(f"{self.entries} entries: {summary}")
        return out


def run_entry(entry: CorpusEntry, strategy: Strategy) -> CaseResult:
    expected = canonical(entry.expected(strategy))
    start = time.perf_counter()
    try:
        term = to_debruijn(parse_term(entry.input))
        actual = str(tdpe(strategy, (), 0, term, entry.formula))
    except Exception as exc:  # reported per entry, not raised
        return CaseResult(entry.id, strategy, expected, None, time.perf_counter() - start, str(exc))
    return CaseResult(entry.id, strategy, expected, actual, time.perf_counter() - start)


def run_entries(entries: list[CorpusEntry]) -> CorpusReport:
    results = [run_entry(e, s) for e in entries for s in (Strategy.CBV, Strategy.CBN)]
    return CorpusReport(tuple(results))


def run_corpus(path: str | Path) -> CorpusReport:
    return run_entries(load_corpus(path))
