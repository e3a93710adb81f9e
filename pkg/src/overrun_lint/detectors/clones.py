"""Token-based copy-paste detection.

Tokens are normalized (identifiers -> ID, numeric literals -> NUM, string
literals -> STR, comments dropped) so renamed copies still match; keywords,
operators and punctuation stay verbatim.  Reported pairs are maximal: they
cannot be extended in either direction and are not contained in a longer
reported pair.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError
from ..frontend import ast
from ..frontend.lexer import (
    COMMENT,
    DOUBLE_LITERAL,
    IDENTIFIER,
    INT_LITERAL,
    STRING_LITERAL,
    SourceSpan,
    Token,
    tokenize,
)

MIN_TOKENS_FLOOR = 10


@dataclass(frozen=True)
class ClonePair:
    span_a: SourceSpan
    span_b: SourceSpan
    token_length: int


@dataclass
class _Entry:
    norm: str
    token: Token
    file_index: int


def _normalize(token: Token) -> str:
    if token.kind == IDENTIFIER:
        return "ID"
    if token.kind in (INT_LITERAL, DOUBLE_LITERAL):
        return "NUM"
    if token.kind == STRING_LITERAL:
        return "STR"
    return token.text


def find_duplicates(units: list[ast.CompilationUnit], min_tokens: int) -> list[ClonePair]:
    """All maximal clone pairs of at least min_tokens normalized tokens."""
    if min_tokens < MIN_TOKENS_FLOOR:
        raise DomainError(f"min_tokens must be >= {MIN_TOKENS_FLOOR}, got {min_tokens}")
    sequence: list[_Entry] = []
    for file_index, unit in enumerate(units):
        for token in tokenize(unit.source, unit.file):
            if token.kind == COMMENT:
                continue
            sequence.append(_Entry(_normalize(token), token, file_index))
        # Unique separator so windows never span files.
        boundary = Token(COMMENT, f"\x00{file_index}", SourceSpan(unit.file, 0, 0, 0, 0), -1, -1)
        sequence.append(_Entry(f"\x00{file_index}", boundary, file_index))
    n = len(sequence)
    norms = [e.norm for e in sequence]
    grams: dict[tuple[str, ...], list[int]] = {}
    for i in range(n - min_tokens + 1):
        gram = tuple(norms[i : i + min_tokens])
        if any(g.startswith("\x00") for g in gram):
            continue
        grams.setdefault(gram, []).append(i)

    pairs: set[tuple[int, int, int]] = set()
    for positions in grams.values():
        if len(positions) < 2:
            continue
        for ai in range(len(positions) - 1):
            for bi in range(ai + 1, len(positions)):
                a, b = positions[ai], positions[bi]
                # extend left
                while a > 0 and b > 0 and norms[a - 1] == norms[b - 1] and b - 1 > a - 1:
                    if norms[a - 1].startswith("\x00"):
                        break
                    a -= 1
                    b -= 1
                # extend right
                length = min_tokens
                limit = b - a  # no self-overlap
                while (
                    a + length < n
                    and b + length < n
                    and norms[a + length] == norms[b + length]
                    and not norms[a + length].startswith("\x00")
                    and length < limit
                ):
                    length += 1
                if length >= min_tokens and b - a >= length:
                    pairs.add((a, b, length))

    # keep only maximal pairs (drop windows contained in a longer match)
    maximal = []
    for a, b, length in sorted(pairs, key=lambda p: (-p[2], p[0], p[1])):
        contained = any(
            oa <= a and ob <= b and (a - oa) == (b - ob) and a + length <= oa + olen
            for oa, ob, olen in maximal
        )
        if not contained:
            maximal.append((a, b, length))

    result = []
    for a, b, length in maximal:
        result.append(
            ClonePair(
                span_a=_window_span(sequence, a, length),
                span_b=_window_span(sequence, b, length),
                token_length=length,
            )
        )
    result.sort(key=lambda p: (p.span_a.file, p.span_a.line, p.span_a.column, p.span_b.file, p.span_b.line))
    return result


def _window_span(sequence: list[_Entry], start: int, length: int) -> SourceSpan:
    first = sequence[start].token.span
    last = sequence[start + length - 1].token.span
    return SourceSpan(first.file, first.line, first.column, last.end_line, last.end_column)
