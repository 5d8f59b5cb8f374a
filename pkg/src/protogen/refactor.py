"""Token-level renaming, the kind an IDE applies during "rename method".

Renaming works on lexical tokens and never touches comments, so directive
comments inside a template pass through unchanged. That is exactly what
lets a rename applied to a template carry over to everything generated
from it.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import replace

from .lexer import TokenKind, TokenizerMode, TokenStream, render, tokenize


def rename_stream(stream: TokenStream, mapping: Mapping[str, str]) -> TokenStream:
    tokens = tuple(
        replace(tok, text=mapping[tok.text])
        if tok.kind is TokenKind.WORD and tok.text in mapping
        else tok
        for tok in stream
    )
    return TokenStream(tokens, stream.trailing_trivia, stream.mode)


def rename(source: str, mapping: Mapping[str, str]) -> str:
    """Replace every identifier token found in ``mapping`` by its new name.

    Whitespace and comments, directive comments included, are preserved
    byte for byte.
    """
    return render(rename_stream(tokenize(source, TokenizerMode.LEXICAL), mapping))
