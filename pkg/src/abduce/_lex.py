"""Tiny tokenizer shared by the formula, sentence and concept parsers."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<num>[0-9]+)"
    r"|(?P<op>->|\[=|\[\]|<>|[()~&|,.!]))"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "num", "op" or "end"
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), start))
        pos = m.end()
    tokens.append(Token("end", "", n))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def next(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def accept(self, value: str) -> bool:
        tok = self.peek
        if tok.kind in ("op", "ident") and tok.value == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> Token:
        tok = self.peek
        if tok.kind in ("op", "ident") and tok.value == value:
            self.i += 1
            return tok
        self.error(f"expected {value!r}")

    def expect_ident(self, what: str = "identifier") -> Token:
        tok = self.peek
        if tok.kind != "ident":
            self.error(f"expected {what}")
        self.i += 1
        return tok

    def error(self, message: str):
        tok = self.peek
        found = "end of input" if tok.kind == "end" else repr(tok.value)
        raise ParseError(f"{message}, found {found}", tok.pos, self.text)

    def finish(self):
        if self.peek.kind != "end":
            self.error("unexpected trailing input")
