"""Tokenizer for SL source files.

Token kinds: keyword, identifier, int-literal, double-literal,
string-literal, operator, punctuation, comment.  Comments are kept in the
stream so review annotations survive re-emission.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = frozenset(
    {
        "assert",
        "boolean",
        "byte",
        "case",
        "catch",
        "class",
        "default",
        "double",
        "else",
        "extends",
        "final",
        "finally",
        "for",
        "if",
        "int",
        "new",
        "null",
        "package",
        "return",
        "static",
        "switch",
        "synchronized",
        "this",
        "true",
        "false",
        "try",
        "void",
        "while",
    }
)

# Longest-match first.
OPERATORS = (
    "&&",
    "||",
    "==",
    "!=",
    "<=",
    ">=",
    "++",
    "--",
    "=",
    "<",
    ">",
    "+",
    "-",
    "*",
    "/",
    "%",
    "!",
)

PUNCTUATION = frozenset(";,(){}[]:.")

KEYWORD = "keyword"
IDENTIFIER = "identifier"
INT_LITERAL = "int-literal"
DOUBLE_LITERAL = "double-literal"
STRING_LITERAL = "string-literal"
OPERATOR = "operator"
PUNCT = "punctuation"
COMMENT = "comment"


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    end_line: int
    end_column: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"

    def covers(self, other: "SourceSpan") -> bool:
        start_ok = (self.line, self.column) <= (other.line, other.column)
        end_ok = (self.end_line, self.end_column) >= (other.end_line, other.end_column)
        return start_ok and end_ok


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan
    # Absolute character offsets into the original source; used for
    # whitespace-exact reconstruction and clone windows.
    offset: int
    end_offset: int


def _is_ident_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_ident_part(c: str) -> bool:
    return c.isalnum() or c == "_"


class _Cursor:
    def __init__(self, source: str, file: str):
        self.src = source
        self.file = file
        self.pos = 0
        self.line = 1
        self.col = 1

    def eof(self) -> bool:
        return self.pos >= len(self.src)

    def peek(self, ahead: int = 0) -> str:
        i = self.pos + ahead
        return self.src[i] if i < len(self.src) else ""

    def advance(self) -> str:
        c = self.src[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def mark(self):
        return (self.pos, self.line, self.col)

    def span_from(self, mark) -> SourceSpan:
        return SourceSpan(self.file, mark[1], mark[2], self.line, self.col)


def tokenize(source: str, file: str = "<memory>") -> list[Token]:
    """Split source into tokens, comments included, whitespace dropped."""
    cur = _Cursor(source, file)
    tokens: list[Token] = []

    def emit(kind: str, mark) -> None:
        text = source[mark[0] : cur.pos]
        tokens.append(Token(kind, text, cur.span_from(mark), mark[0], cur.pos))

    while not cur.eof():
        c = cur.peek()
        if c in " \t\r\n":
            cur.advance()
            continue
        mark = cur.mark()
        if c == "/" and cur.peek(1) == "/":
            while not cur.eof() and cur.peek() != "\n":
                cur.advance()
            emit(COMMENT, mark)
            continue
        if c == "/" and cur.peek(1) == "*":
            cur.advance()
            cur.advance()
            while True:
                if cur.eof():
                    raise LexError(cur.span_from(mark), "unterminated block comment")
                if cur.peek() == "*" and cur.peek(1) == "/":
                    cur.advance()
                    cur.advance()
                    break
                cur.advance()
            emit(COMMENT, mark)
            continue
        if c == '"':
            cur.advance()
            while True:
                if cur.eof() or cur.peek() == "\n":
                    raise LexError(cur.span_from(mark), "unterminated string literal")
                ch = cur.advance()
                if ch == "\\":
                    esc = cur.peek()
                    if esc not in ('"', "\\"):
                        raise LexError(cur.span_from(mark), f"unsupported escape '\\{esc}'")
                    cur.advance()
                elif ch == '"':
                    break
            emit(STRING_LITERAL, mark)
            continue
        if c.isdigit():
            while not cur.eof() and cur.peek().isdigit():
                cur.advance()
            if cur.peek() == "." and cur.peek(1).isdigit():
                cur.advance()
                while not cur.eof() and cur.peek().isdigit():
                    cur.advance()
                emit(DOUBLE_LITERAL, mark)
            else:
                emit(INT_LITERAL, mark)
            continue
        if _is_ident_start(c):
            while not cur.eof() and _is_ident_part(cur.peek()):
                cur.advance()
            text = source[mark[0] : cur.pos]
            emit(KEYWORD if text in KEYWORDS else IDENTIFIER, mark)
            continue
        matched = False
        for op in OPERATORS:
            if source.startswith(op, cur.pos):
                for _ in op:
                    cur.advance()
                emit(OPERATOR, mark)
                matched = True
                break
        if matched:
            continue
        if c in PUNCTUATION:
            cur.advance()
            emit(PUNCT, mark)
            continue
        raise LexError(cur.span_from(cur.mark()), f"illegal character {c!r}")

    return tokens


def string_literal_value(text: str) -> str:
    """Decode a string-literal lexeme (quotes and escapes) to its value."""
    body = text[1:-1]
    out = []
    i = 0
    while i < len(body):
        if body[i] == "\\":
            out.append(body[i + 1])
            i += 2
        else:
            out.append(body[i])
            i += 1
    return "".join(out)
