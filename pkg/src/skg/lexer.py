"""Lexer for the `.skg` knowledge-graph language.

Token kinds: keyword, identifier, number, punctuation, arrow ("->") and
tuple-delimiter ("(" / ")"). `#` starts a comment running to end of line.
Identifiers match [A-Za-z_][A-Za-z0-9_]*; numbers are decimal with optional
sign, fraction and exponent. Keywords double as identifiers where the
grammar expects a name, so e.g. a field may be called `kind`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import Diagnostic, LexError

KEYWORDS = frozenset(
    {
        "entity",
        "action",
        "signal",
        "emission",
        "kind",
        "classifier",
        "sensor",
        "place",
        "wall",
        "profile",
        "curve",
        "confusion",
        "false_alarm",
        "set",
    }
)

DECLARATION_KINDS = (
    "entity",
    "action",
    "signal",
    "emission",
    "kind",
    "classifier",
    "sensor",
    "place",
    "wall",
    "profile",
)

KIND_KEYWORD = "keyword"
KIND_IDENT = "identifier"
KIND_NUMBER = "number"
KIND_PUNCT = "punctuation"
KIND_ARROW = "arrow"
KIND_TUPLE_DELIM = "tuple-delimiter"

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_PUNCT = frozenset("{}[],:.")


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    line: int  # 1-based
    column: int  # 1-based


def tokenize(source: str) -> list[Token]:
    """Tokenize `.skg` source; raises LexError at the first bad character."""
    tokens: list[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch == "-" and i + 1 < n and source[i + 1] == ">":
            tokens.append(Token(KIND_ARROW, "->", line, col))
            i += 2
            col += 2
            continue
        if ch in "()":
            tokens.append(Token(KIND_TUPLE_DELIM, ch, line, col))
            i += 1
            col += 1
            continue
        m = _IDENT_RE.match(source, i)
        if m:
            lexeme = m.group()
            kind = KIND_KEYWORD if lexeme in KEYWORDS else KIND_IDENT
            tokens.append(Token(kind, lexeme, line, col))
            i = m.end()
            col += len(lexeme)
            continue
        # Numbers before punctuation, so ".5" is one token while the "."
        # of a dotted path still lexes alone.
        m = _NUMBER_RE.match(source, i)
        if m:
            lexeme = m.group()
            tokens.append(Token(KIND_NUMBER, lexeme, line, col))
            i = m.end()
            col += len(lexeme)
            continue
        if ch in _PUNCT:
            tokens.append(Token(KIND_PUNCT, ch, line, col))
            i += 1
            col += 1
            continue
        raise LexError(
            Diagnostic("error", f"unexpected character {ch!r}", line, col)
        )
    return tokens
