"""Lossless tokenizer for host-language source text.

Every token keeps the whitespace that precedes it, so rendering a token
stream reproduces the input byte for byte. Two modes are supported:

* ``SPACE``: tokens are maximal runs of non-whitespace characters.
* ``LEXICAL``: identifiers, numbers, string literals and single
  punctuation characters.

In both modes, ``/*C ... */`` directive comments are located by a pre-scan
before anything else, so a directive is always a single token no matter
what it contains. Plain ``/* ... */`` and ``// ...`` comments are kept as
single tokens as well.
"""

from __future__ import annotations

import bisect
import enum
import re
from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    UnterminatedCommentError,
    UnterminatedDirectiveError,
    UnterminatedStringError,
)

TRIVIA = " \t\r\n"

# `/*C` must be followed by whitespace or the closing `*/`; `/*Copyright */` stays a plain comment.
_DIRECTIVE_START = re.compile(r"/\*C(?=[ \t\r\n]|\*/|\Z)")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"[0-9][0-9A-Za-z_.]*")
_WORDLIKE = re.compile(r"[A-Za-z0-9_]+")


class TokenKind(enum.Enum):
    WORD = "Word"
    PUNCT = "Punct"
    STRING = "StringLit"
    DIRECTIVE = "DirectiveComment"
    COMMENT = "PlainComment"


class TokenizerMode(enum.Enum):
    SPACE = "space"
    LEXICAL = "lexical"


@dataclass(frozen=True)
class Token:
    """One unit of source text plus the whitespace in front of it.

    Attributes:
        leading_trivia: Whitespace between the previous token and this one.
        text: The token itself; never empty.
        kind: Lexical category.
        line: 1-based line of the first character of ``text``.
        column: 1-based column of the first character of ``text``.
    """

    leading_trivia: str
    text: str
    kind: TokenKind
    line: int = 0
    column: int = 0

    @property
    def is_directive(self) -> bool:
        return self.kind is TokenKind.DIRECTIVE

    @property
    def is_comment(self) -> bool:
        return self.kind is TokenKind.COMMENT


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...] = ()
    trailing_trivia: str = ""
    mode: TokenizerMode = field(default=TokenizerMode.SPACE, compare=False)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def __getitem__(self, index):
        return self.tokens[index]

    @property
    def texts(self) -> list[str]:
        return [tok.text for tok in self.tokens]


class _Positions:
    """Maps string offsets to 1-based (line, column)."""

    def __init__(self, source: str) -> None:
        self._starts = [0] + [m.end() for m in re.finditer("\n", source)]

    def __call__(self, offset: int) -> tuple[int, int]:
        idx = bisect.bisect_right(self._starts, offset) - 1
        return idx + 1, offset - self._starts[idx] + 1


def _directive_spans(source: str, pos: _Positions) -> list[tuple[int, int]]:
    spans = []
    start = 0
    while True:
        m = _DIRECTIVE_START.search(source, start)
        if m is None:
            return spans
        end = source.find("*/", m.start() + 3)
        if end < 0:
            line, col = pos(m.start())
            raise UnterminatedDirectiveError("unterminated directive comment '/*C'", line, col)
        spans.append((m.start(), end + 2))
        start = end + 2


def _scan_comment(source: str, i: int, stop: int, pos: _Positions) -> int | None:
    """Return the end offset of a comment starting at ``i``, or None if there is none."""
    if source.startswith("/*", i) and i + 1 < stop:
        end = source.find("*/", i + 2, stop)
        if end < 0:
            line, col = pos(i)
            raise UnterminatedCommentError("unterminated block comment '/*'", line, col)
        return end + 2
    if source.startswith("//", i) and i + 1 < stop:
        end = source.find("\n", i, stop)
        if end < 0:
            end = stop
        # a CR before the newline belongs to the trivia, not the comment
        while end > i + 2 and source[end - 1] == "\r":
            end -= 1
        return end
    return None


def _classify_word(text: str) -> TokenKind:
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        return TokenKind.STRING
    if _WORDLIKE.fullmatch(text):
        return TokenKind.WORD
    return TokenKind.PUNCT


def _lex_space(source: str, i: int, stop: int, pos: _Positions):
    while i < stop:
        if source[i] in TRIVIA:
            i += 1
            continue
        end = _scan_comment(source, i, stop, pos)
        if end is not None:
            yield i, end, TokenKind.COMMENT
            i = end
            continue
        j = i
        while j < stop and source[j] not in TRIVIA:
            if j > i and source[j] == "/" and j + 1 < stop and source[j + 1] in "*/":
                break
            j += 1
        yield i, j, _classify_word(source[i:j])
        i = j


def _lex_lexical(source: str, i: int, stop: int, pos: _Positions):
    while i < stop:
        ch = source[i]
        if ch in TRIVIA:
            i += 1
            continue
        end = _scan_comment(source, i, stop, pos)
        if end is not None:
            yield i, end, TokenKind.COMMENT
            i = end
            continue
        if ch == '"':
            j = i + 1
            while j < stop and source[j] not in '"\n':
                j += 2 if source[j] == "\\" and j + 1 < stop and source[j + 1] != "\n" else 1
            if j >= stop or source[j] != '"':
                line, col = pos(i)
                raise UnterminatedStringError("unterminated string literal", line, col)
            yield i, j + 1, TokenKind.STRING
            i = j + 1
            continue
        m = _IDENT.match(source, i, stop) or _NUMBER.match(source, i, stop)
        if m:
            yield i, m.end(), TokenKind.WORD
            i = m.end()
            continue
        yield i, i + 1, TokenKind.PUNCT
        i += 1


def tokenize(source: str, mode: TokenizerMode = TokenizerMode.SPACE) -> TokenStream:
    """Split ``source`` into a lossless token stream.

    Raises:
        UnterminatedDirectiveError: a ``/*C`` without a closing ``*/``.
        UnterminatedStringError: an unclosed ``"`` (lexical mode only).
        UnterminatedCommentError: an unclosed plain ``/*`` comment.
    """
    mode = TokenizerMode(mode)
    pos = _Positions(source)
    lex = _lex_space if mode is TokenizerMode.SPACE else _lex_lexical

    raw: list[tuple[int, int, TokenKind]] = []
    cursor = 0
    for start, end in _directive_spans(source, pos):
        raw.extend(lex(source, cursor, start, pos))
        raw.append((start, end, TokenKind.DIRECTIVE))
        cursor = end
    raw.extend(lex(source, cursor, len(source), pos))

    tokens = []
    prev = 0
    for start, end, kind in raw:
        line, col = pos(start)
        tokens.append(Token(source[prev:start], source[start:end], kind, line, col))
        prev = end
    return TokenStream(tuple(tokens), source[prev:], mode)


def render(stream: TokenStream) -> str:
    return "".join(tok.leading_trivia + tok.text for tok in stream) + stream.trailing_trivia


def token_texts(source: str, mode: TokenizerMode = TokenizerMode.LEXICAL) -> list[str]:
    """Token texts of ``source``; the usual basis for token-level comparison."""
    return tokenize(source, mode).texts
