"""Recursive-descent parser for the `.skg` language.

Grammar:

    document   = { statement } ;
    statement  = kindkw ident [ "->" ident ] "{" { field | substmt } "}" ;
    kindkw     = "entity"|"action"|"signal"|"emission"|"kind"|"classifier"
               | "sensor"|"place"|"wall"|"profile" ;
    substmt    = ("curve" ident | "confusion" ident "->" ident
               | "false_alarm" ident | "set" dottedpath)
                 ( "{" { field } "}" | ":" value ) ;
    field      = ident ":" value [","] ;
    value      = number | ident | tuple | "[" [ value { "," value } ] "]" ;
    tuple      = "(" number "," number ")" ;
    dottedpath = ident "." ident "." ident ;

The parser checks structure only. Per-kind field schemas, reference
resolution and range checks happen later, in validation, so that every
semantic violation can be reported at once. Parsing stops at the first
syntax error; no partial document is produced.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import Diagnostic, ParseError
from .lexer import (
    DECLARATION_KINDS,
    KIND_ARROW,
    KIND_IDENT,
    KIND_KEYWORD,
    KIND_NUMBER,
    KIND_PUNCT,
    KIND_TUPLE_DELIM,
    Token,
)

SUBSTMT_KEYWORDS = ("curve", "confusion", "false_alarm", "set")


@dataclass(frozen=True)
class ValueNode:
    """A literal value: kind is one of number|ident|tuple|list."""

    kind: str
    value: object
    line: int
    column: int


@dataclass(frozen=True)
class FieldNode:
    name: str
    value: ValueNode
    line: int
    column: int


@dataclass(frozen=True)
class SubStmt:
    """curve/confusion/false_alarm/set entry inside a statement body."""

    keyword: str
    head: tuple[str, ...]
    fields: tuple[FieldNode, ...] = ()
    value: ValueNode | None = None
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class Statement:
    keyword: str
    name: str
    arrow: str | None
    fields: tuple[FieldNode, ...] = ()
    subs: tuple[SubStmt, ...] = ()
    line: int = 0
    column: int = 0
    name_line: int = 0
    name_column: int = 0
    arrow_line: int = 0
    arrow_column: int = 0


@dataclass(frozen=True)
class Document:
    statements: tuple[Statement, ...] = ()


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token plumbing -------------------------------------------------

    def _eof_position(self) -> tuple[int, int]:
        if not self.tokens:
            return 1, 1
        last = self.tokens[-1]
        return last.line, last.column + len(last.lexeme)

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def peek2(self) -> Token | None:
        return self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None

    def error(self, expected: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            line, col = self._eof_position()
            return ParseError(
                Diagnostic("error", f"expected {expected}, found end of input", line, col)
            )
        return ParseError(
            Diagnostic(
                "error",
                f"expected {expected}, found {tok.lexeme!r}",
                tok.line,
                tok.column,
            )
        )

    def advance(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.error("more input")
        self.pos += 1
        return tok

    def expect_punct(self, lexeme: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind not in (KIND_PUNCT, KIND_TUPLE_DELIM) or tok.lexeme != lexeme:
            raise self.error(f"'{lexeme}'")
        return self.advance()

    def expect_ident(self, what: str = "identifier") -> Token:
        # Keywords are accepted wherever an identifier is expected.
        tok = self.peek()
        if tok is None or tok.kind not in (KIND_IDENT, KIND_KEYWORD):
            raise self.error(what)
        return self.advance()

    def at_punct(self, lexeme: str) -> bool:
        tok = self.peek()
        return (
            tok is not None
            and tok.kind in (KIND_PUNCT, KIND_TUPLE_DELIM)
            and tok.lexeme == lexeme
        )

    # -- grammar productions --------------------------------------------

    def document(self) -> Document:
        statements = []
        while self.peek() is not None:
            statements.append(self.statement())
        return Document(tuple(statements))

    def statement(self) -> Statement:
        tok = self.peek()
        if tok is None or tok.kind != KIND_KEYWORD or tok.lexeme not in DECLARATION_KINDS:
            raise self.error("declaration keyword")
        kw = self.advance()
        name = self.expect_ident("declaration name")
        arrow_name = None
        arrow_line = arrow_col = 0
        if self.peek() is not None and self.peek().kind == KIND_ARROW:
            self.advance()
            target = self.expect_ident("arrow target")
            arrow_name = target.lexeme
            arrow_line, arrow_col = target.line, target.column
        self.expect_punct("{")
        fields: list[FieldNode] = []
        subs: list[SubStmt] = []
        while not self.at_punct("}"):
            tok = self.peek()
            if tok is None:
                raise self.error("'}'")
            nxt = self.peek2()
            is_sub = (
                tok.kind == KIND_KEYWORD
                and tok.lexeme in SUBSTMT_KEYWORDS
                and not (nxt is not None and nxt.kind == KIND_PUNCT and nxt.lexeme == ":")
            )
            if is_sub:
                subs.append(self.substmt())
            else:
                fields.append(self.field())
        self.expect_punct("}")
        return Statement(
            keyword=kw.lexeme,
            name=name.lexeme,
            arrow=arrow_name,
            fields=tuple(fields),
            subs=tuple(subs),
            line=kw.line,
            column=kw.column,
            name_line=name.line,
            name_column=name.column,
            arrow_line=arrow_line,
            arrow_column=arrow_col,
        )

    def substmt(self) -> SubStmt:
        kw = self.advance()
        head: list[str]
        if kw.lexeme == "confusion":
            first = self.expect_ident("signal class")
            if self.peek() is None or self.peek().kind != KIND_ARROW:
                raise self.error("'->'")
            self.advance()
            second = self.expect_ident("signal class")
            head = [first.lexeme, second.lexeme]
        elif kw.lexeme == "set":
            head = [self.expect_ident("path segment").lexeme]
            for _ in range(2):
                self.expect_punct(".")
                head.append(self.expect_ident("path segment").lexeme)
        else:  # curve | false_alarm
            head = [self.expect_ident("signal class").lexeme]

        fields: list[FieldNode] = []
        value = None
        if self.at_punct("{"):
            self.advance()
            while not self.at_punct("}"):
                if self.peek() is None:
                    raise self.error("'}'")
                fields.append(self.field())
            self.expect_punct("}")
        elif self.at_punct(":"):
            self.advance()
            value = self.value()
            if self.at_punct(","):
                self.advance()
        else:
            raise self.error("'{' or ':'")
        return SubStmt(
            keyword=kw.lexeme,
            head=tuple(head),
            fields=tuple(fields),
            value=value,
            line=kw.line,
            column=kw.column,
        )

    def field(self) -> FieldNode:
        name = self.expect_ident("field name")
        self.expect_punct(":")
        value = self.value()
        if self.at_punct(","):
            self.advance()
        return FieldNode(name.lexeme, value, name.line, name.column)

    def value(self) -> ValueNode:
        tok = self.peek()
        if tok is None:
            raise self.error("value")
        if tok.kind == KIND_NUMBER:
            self.advance()
            return ValueNode("number", float(tok.lexeme), tok.line, tok.column)
        if tok.kind in (KIND_IDENT, KIND_KEYWORD):
            self.advance()
            return ValueNode("ident", tok.lexeme, tok.line, tok.column)
        if tok.kind == KIND_TUPLE_DELIM and tok.lexeme == "(":
            self.advance()
            first = self.expect_number()
            self.expect_punct(",")
            second = self.expect_number()
            if not (self.peek() is not None and self.peek().lexeme == ")"):
                raise self.error("')'")
            self.advance()
            return ValueNode(
                "tuple", (float(first.lexeme), float(second.lexeme)), tok.line, tok.column
            )
        if tok.lexeme == "[":
            self.advance()
            items: list[ValueNode] = []
            if not self.at_punct("]"):
                items.append(self.value())
                while self.at_punct(","):
                    self.advance()
                    items.append(self.value())
            self.expect_punct("]")
            return ValueNode("list", tuple(items), tok.line, tok.column)
        raise self.error("value")

    def expect_number(self) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != KIND_NUMBER:
            raise self.error("number")
        return self.advance()


def parse(tokens: list[Token]) -> Document:
    """Parse a token stream into a Document; raises ParseError on the
    first syntax failure."""
    return _Parser(tokens).document()
