"""Recursive-descent parser for formulas, surface terms and contexts.

Formulas::

    formula := sum ("->" formula)?          arrows associate to the right
    sum     := atom ("+" sum)?              binds tighter than "->"
    atom    := "bot" | ident | "(" formula ")"

Terms::

    term := "\\" ident ":" formula "." term
          | "inl" term | "inr" term
          | "case" term "of" "inl" ident "." term "|" "inr" ident "." term
          | "S" ident "." term
          | atom+ [term-starting-with-a-keyword-or-lambda]
    atom := ident | "<" term ">" | "(" term ")" | "(" term ":" formula ")"
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import surface as s
from .formula import BOT, BOT_NAME, Arrow, Atom, Formula, Sum

KEYWORDS = frozenset({"inl", "inr", "case", "of", "S"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>--[^\n]*)
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[\\λ:.()<>|+,])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "sym" or "eof"
    text: str
    line: int
    col: int


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "ident":
            tokens.append(Token("ident", text, line, pos - line_start + 1))
        elif kind in ("arrow", "punct"):
            sym = "\\" if text == "λ" else text
            tokens.append(Token("sym", sym, line, pos - line_start + 1))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, src: str) -> None:
        self.tokens = tokenize(src)
        self.pos = 0

    # -- token helpers -------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    def at_sym(self, sym: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text == sym

    def at_keyword(self, kw: str) -> bool:
        return self.tok.kind == "ident" and self.tok.text == kw

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def expect_sym(self, sym: str) -> Token:
        if not self.at_sym(sym):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {sym!r}, found {found!r}")
        return self.advance()

    def expect_keyword(self, kw: str) -> Token:
        if not self.at_keyword(kw):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {kw!r}, found {found!r}")
        return self.advance()

    def expect_ident(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            raise self.error(f"expected identifier, found {tok.text or 'end of input'!r}")
        self.advance()
        return tok.text

    def expect_eof(self) -> None:
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")

    # -- formulas ------------------------------------------------------

    def formula(self) -> Formula:
        left = self.sum_formula()
        if self.at_sym("->"):
            self.advance()
            return Arrow(left, self.formula())
        return left

    def sum_formula(self) -> Formula:
        left = self.atomic_formula()
        if self.at_sym("+"):
            self.advance()
            return Sum(left, self.sum_formula())
        return left

    def atomic_formula(self) -> Formula:
        if self.at_sym("("):
            self.advance()
            inner = self.formula()
            self.expect_sym(")")
            return inner
        name = self.expect_ident()
        return BOT if name == BOT_NAME else Atom(name)

    # -- terms ---------------------------------------------------------

    def starts_open(self) -> bool:
        return self.at_sym("\\") or any(self.at_keyword(k) for k in ("inl", "inr", "case", "S"))

    def starts_atom(self) -> bool:
        tok = self.tok
        if tok.kind == "ident":
            return tok.text not in KEYWORDS
        return tok.kind == "sym" and tok.text in ("(", "<")

    def term(self) -> s.Term:
        if self.starts_open():
            return self.open_term()
        if not self.starts_atom():
            raise self.error(f"expected a term, found {self.tok.text or 'end of input'!r}")
        start = self.tok
        result = self.atom()
        while self.starts_atom():
            result = s.App(result, self.atom(), span=(start.line, start.col))
        if self.starts_open():
            result = s.App(result, self.open_term(), span=(start.line, start.col))
        return result

    def open_term(self) -> s.Term:
        start = self.tok
        span = (start.line, start.col)
        if self.at_sym("\\"):
            self.advance()
            name = self.expect_ident()
            if not self.at_sym(":"):
                raise self.error(f"missing binder annotation for {name!r}")
            self.advance()
            ann = self.formula()
            self.expect_sym(".")
            return s.Lam(name, ann, self.term(), span=span)
        if self.at_keyword("inl"):
            self.advance()
            return s.Inl(self.term(), span=span)
        if self.at_keyword("inr"):
            self.advance()
            return s.Inr(self.term(), span=span)
        if self.at_keyword("case"):
            self.advance()
            scrutinee = self.term()
            self.expect_keyword("of")
            self.expect_keyword("inl")
            lname = self.expect_ident()
            self.expect_sym(".")
            lbranch = self.term()
            self.expect_sym("|")
            self.expect_keyword("inr")
            rname = self.expect_ident()
            self.expect_sym(".")
            rbranch = self.term()
            return s.Case(scrutinee, lname, lbranch, rname, rbranch, span=span)
        self.expect_keyword("S")
        kname = self.expect_ident()
        self.expect_sym(".")
        return s.Shift(kname, self.term(), span=span)

    def atom(self) -> s.Term:
        start = self.tok
        span = (start.line, start.col)
        if self.at_sym("<"):
            self.advance()
            body = self.term()
            self.expect_sym(">")
            return s.Reset(body, span=span)
        if self.at_sym("("):
            self.advance()
            inner = self.term()
            if self.at_sym(":"):
                self.advance()
                ty = self.formula()
                self.expect_sym(")")
                return s.Ascribe(inner, ty, span=span)
            self.expect_sym(")")
            return inner
        return s.Var(self.expect_ident(), span=span)

    def context(self) -> list[tuple[str | None, Formula]]:
        entries: list[tuple[str | None, Formula]] = []
        if self.tok.kind == "eof":
            return entries
        while True:
            name = None
            nxt = self.tokens[self.pos + 1]
            if self.tok.kind == "ident" and nxt.kind == "sym" and nxt.text == ":":
                name = self.expect_ident()
                self.advance()
            entries.append((name, self.formula()))
            if not self.at_sym(","):
                return entries
            self.advance()


def parse_term(src: str) -> s.Term:
    p = Parser(src)
    t = p.term()
    p.expect_eof()
    return t


def parse_formula(src: str) -> Formula:
    p = Parser(src)
    a = p.formula()
    p.expect_eof()
    return a


def parse_context(src: str) -> list[tuple[str | None, Formula]]:
    """Parse ``"x:a, y:b -> bot"`` (outermost binding first; names optional)."""
    p = Parser(src)
    entries = p.context()
    p.expect_eof()
    return entries
