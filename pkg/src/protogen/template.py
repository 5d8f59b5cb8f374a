"""Templates: token streams annotated by ``/*C ... */`` directives.

A hole directive names a replacement pattern for the single token that
follows it::

    class /*C %name% */ A {

Block directives open and close regions that are repeated or included
conditionally::

    /*C forall f in fields sep ", " */ ... /*C end */
    /*C if abstract */ ... /*C end */
    /*C if kind == "enum" */ ... /*C end */

Because directives live in comments, a template is still a valid source
file of the host language, and erasing the directives gives back the
hand-written prototype.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterator, Union

from .errors import (
    DanglingHoleError,
    MalformedDirectiveError,
    UnbalancedBlockError,
)
from .lexer import Token, TokenizerMode, TokenStream, tokenize

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_VAR_RE = re.compile(r"%([A-Za-z_][A-Za-z0-9_]*)%")
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}

BLOCK_KEYWORDS = ("forall", "if", "end")


# Patterns


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class Var:
    key: str


PatternPiece = Union[Literal, Var]


# Directives


@dataclass(frozen=True)
class Hole:
    pattern: tuple[PatternPiece, ...]


@dataclass(frozen=True)
class Forall:
    loop_var: str
    list_key: str
    sep: str | None = None


@dataclass(frozen=True)
class If:
    key: str
    op: str | None = None  # "==" or "!="
    literal: str | None = None


@dataclass(frozen=True)
class End:
    pass


Directive = Union[Hole, Forall, If, End]


# Template nodes


@dataclass(frozen=True)
class LiteralToken:
    """A token copied verbatim; ``token.leading_trivia`` is the trivia to emit."""

    token: Token


@dataclass(frozen=True)
class HoleNode:
    """A hole directive bound to its target token.

    ``pre_trivia`` is the directive's own leading trivia; it is emitted in
    front of the replacement, while the directive text and the trivia
    between directive and target are dropped. Plain comments sitting
    between the directive and the target are kept in ``comments``.
    """

    pattern: tuple[PatternPiece, ...]
    directive: Token
    target: Token
    pre_trivia: str
    comments: tuple[Token, ...] = ()


@dataclass(frozen=True)
class BlockNode:
    """A forall/if region.

    ``head_trivia`` is emitted once where the block starts, whether or not
    the body runs. ``tail_trivia`` follows every emitted copy of the body.
    """

    header: Forall | If
    body: tuple["Node", ...]
    opener: Token
    closer: Token
    head_trivia: str = ""
    tail_trivia: str = ""


Node = Union[LiteralToken, HoleNode, BlockNode]


@dataclass(frozen=True)
class Template:
    body: tuple[Node, ...]
    trailing_trivia: str = ""

    def holes(self) -> Iterator[HoleNode]:
        for node in walk(self.body):
            if isinstance(node, HoleNode):
                yield node

    def blocks(self) -> Iterator[BlockNode]:
        for node in walk(self.body):
            if isinstance(node, BlockNode):
                yield node


def walk(nodes) -> Iterator[Node]:
    """Depth-first iteration over nodes, block bodies included."""
    for node in nodes:
        yield node
        if isinstance(node, BlockNode):
            yield from walk(node.body)


# Directive parsing


def directive_interior(comment: str) -> str:
    """Strip ``/*C`` and ``*/`` from a directive comment and trim whitespace."""
    return comment[3:-2].strip()


def _words(text: str, err) -> list[tuple[str, bool]]:
    """Split block-directive text into (word, was_quoted) pairs."""
    out = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
        elif text[i] == '"':
            buf = []
            i += 1
            while True:
                if i >= n:
                    raise err("unterminated string in directive")
                ch = text[i]
                if ch == '"':
                    i += 1
                    break
                if ch == "\\":
                    if i + 1 >= n or text[i + 1] not in _ESCAPES:
                        raise err("invalid escape in directive string")
                    buf.append(_ESCAPES[text[i + 1]])
                    i += 2
                else:
                    buf.append(ch)
                    i += 1
            out.append(("".join(buf), True))
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] != '"':
                j += 1
            out.append((text[i:j], False))
            i = j
    return out


def _ident(word: tuple[str, bool], what: str, err) -> str:
    text, quoted = word
    if quoted or not _IDENT_RE.fullmatch(text):
        raise err(f"expected {what}, got {text!r}")
    return text


def _parse_hole(text: str, err) -> Hole:
    pieces: list[PatternPiece] = []
    for chunk in text.split():
        cursor = 0
        for m in _VAR_RE.finditer(chunk):
            pieces.append(Literal(chunk[cursor:m.start()]))
            pieces.append(Var(m.group(1)))
            cursor = m.end()
        pieces.append(Literal(chunk[cursor:]))
    for piece in pieces:
        if isinstance(piece, Literal) and "%" in piece.text:
            raise err(f"unbalanced or invalid '%' placeholder in {text!r}")
    merged: list[PatternPiece] = []
    for piece in pieces:
        if isinstance(piece, Literal):
            if not piece.text:
                continue
            if merged and isinstance(merged[-1], Literal):
                merged[-1] = Literal(merged[-1].text + piece.text)
                continue
        merged.append(piece)
    return Hole(tuple(merged))


def parse_directive(comment_text: str, line: int | None = None, column: int | None = None) -> Directive:
    """Parse the interior of a ``/*C ... */`` comment.

    ``line`` and ``column`` only serve to locate error messages.

    Raises:
        MalformedDirectiveError: on any grammar violation.
    """

    def err(message: str) -> MalformedDirectiveError:
        return MalformedDirectiveError(message, line, column)

    text = comment_text.strip()
    if not text:
        raise err("empty directive")
    keyword = text.split(None, 1)[0]
    if keyword not in BLOCK_KEYWORDS:
        return _parse_hole(text, err)

    words = _words(text, err)[1:]
    if keyword == "end":
        if words:
            raise err("'end' takes no arguments")
        return End()

    if keyword == "forall":
        if len(words) not in (3, 5) or words[1] != ("in", False):
            raise err("expected 'forall <var> in <key> [sep \"...\"]'")
        loop_var = _ident(words[0], "loop variable", err)
        list_key = _ident(words[2], "list key", err)
        if loop_var == list_key:
            raise err("loop variable must differ from the list key")
        sep = None
        if len(words) == 5:
            if words[3] != ("sep", False) or not words[4][1]:
                raise err("expected 'sep \"...\"' after the list key")
            sep = words[4][0]
        return Forall(loop_var, list_key, sep)

    # if
    if len(words) not in (1, 3):
        raise err("expected 'if <key> [== \"...\" | != \"...\"]'")
    key = _ident(words[0], "key", err)
    if len(words) == 1:
        return If(key)
    op = words[1]
    if op not in (("==", False), ("!=", False)) or not words[2][1]:
        raise err("expected '==' or '!=' followed by a quoted string")
    return If(key, op[0], words[2][0])


# Template parsing


def _split(lead: str, following: str, starts_line: bool, ends_line: bool, closing: bool) -> tuple[str, str]:
    """Trivia kept around a removed block directive, as (before, after).

    A directive on a line of its own takes the whole line with it: the
    text up to its line stays before, the text after its line break goes
    to the next token. Inline directives drop one adjacent run, never the
    only separator between two tokens. For ``end``, ``before`` becomes the
    tail of every loop iteration, so it is always kept.
    """
    if starts_line and ends_line:
        nl = following.find("\n")
        return lead[: lead.rfind("\n") + 1], (following[nl + 1 :] if nl >= 0 else "")
    if closing:
        return lead, (following if "\n" in following or not lead else "")
    if "\n" in following:
        return "", following
    return (lead, "") if lead else ("", following)


def build_template(stream: TokenStream) -> Template:
    """Build a Template from an already tokenized stream."""
    tokens = stream.tokens
    n = len(tokens)
    root: list[Node] = []
    # (header, opener, body, head trivia) per open block; the root has no header
    stack: list[tuple[Forall | If | None, Token | None, list[Node], str]] = [(None, None, root, "")]
    carry: str | None = None
    emitted = False
    at_line_start = False

    i = 0
    while i < n:
        tok = tokens[i]
        lead = tok.leading_trivia if carry is None else carry
        carry = None
        body = stack[-1][2]

        if not tok.is_directive:
            body.append(LiteralToken(replace(tok, leading_trivia=lead)))
            emitted = True
            at_line_start = False
            i += 1
            continue

        directive = parse_directive(directive_interior(tok.text), tok.line, tok.column)

        if isinstance(directive, Hole):
            j = i + 1
            while j < n and tokens[j].is_comment:
                j += 1
            if j == n:
                raise DanglingHoleError("hole directive has no target token", tok.line, tok.column)
            if tokens[j].is_directive:
                nxt = tokens[j]
                raise MalformedDirectiveError(
                    f"hole directive is followed by another directive at {nxt.line}:{nxt.column}",
                    tok.line,
                    tok.column,
                )
            body.append(HoleNode(directive.pattern, tok, tokens[j], lead, tuple(tokens[i + 1 : j])))
            emitted = True
            at_line_start = False
            i = j + 1
            continue

        following = tokens[i + 1].leading_trivia if i + 1 < n else stream.trailing_trivia
        starts_line = at_line_start or not emitted or "\n" in lead
        ends_line = i + 1 == n or "\n" in following
        before, carry = _split(lead, following, starts_line, ends_line, closing=isinstance(directive, End))
        # a removed whole line leaves the next token at the start of a line
        at_line_start = starts_line and ends_line

        if isinstance(directive, End):
            if len(stack) == 1:
                raise UnbalancedBlockError("'end' without an open block", tok.line, tok.column)
            header, opener, block_body, head = stack.pop()
            stack[-1][2].append(BlockNode(header, tuple(block_body), opener, tok, head, before))
        else:
            stack.append((directive, tok, [], before))
        i += 1

    if len(stack) > 1:
        opener = stack[-1][1]
        raise UnbalancedBlockError("block is never closed with 'end'", opener.line, opener.column)

    trailing = stream.trailing_trivia if carry is None else carry
    return Template(tuple(root), trailing)


def parse_template(source: str, mode: TokenizerMode = TokenizerMode.SPACE) -> Template:
    """Tokenize ``source`` and parse its directives into a Template.

    Raises:
        LexError: from tokenization.
        MalformedDirectiveError: a directive fails to parse, or a hole
            directive is immediately followed by another directive.
        DanglingHoleError: a hole directive with no token after it.
        UnbalancedBlockError: a missing or surplus ``end``.
    """
    return build_template(tokenize(source, mode))


def _hole_prefix(node: HoleNode) -> str:
    """Text emitted before a hole's replacement: pre_trivia, skipped comments, target trivia."""
    if not node.comments:
        return node.pre_trivia
    parts = [node.pre_trivia, node.comments[0].text]
    for comment in node.comments[1:]:
        parts.append(comment.leading_trivia + comment.text)
    parts.append(node.target.leading_trivia)
    return "".join(parts)


def _erase(nodes, out: list[str]) -> None:
    for node in nodes:
        if isinstance(node, LiteralToken):
            out.append(node.token.leading_trivia + node.token.text)
        elif isinstance(node, HoleNode):
            out.append(_hole_prefix(node) + node.target.text)
        else:
            out.append(node.head_trivia)
            _erase(node.body, out)
            out.append(node.tail_trivia)


def erase(template: Template) -> str:
    """Remove every directive, recovering the prototype source.

    Hole targets come back with their original text; block bodies appear
    exactly once.
    """
    out: list[str] = []
    _erase(template.body, out)
    out.append(template.trailing_trivia)
    return "".join(out)
