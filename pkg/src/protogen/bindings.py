"""Binding-data files: one record of key/value assignments per generated unit.

Format::

    # comment to end of line
    name = Generated;
    name = Bar;                    # repeating a key starts a new record
    name = Foo; fields = id, label;
    ---                            # explicit record separator
    name = "Baz, quoted";

* A statement is ``key = value (, value)* ;``. One value makes a scalar,
  several comma-separated values make a list.
* A value is either a double-quoted string (escapes ``\\"``, ``\\\\``,
  ``\\n``) or a bare run of characters up to the next ``,`` or ``;``,
  trimmed. Bare values cannot contain ``"`` or a line break.
* ``#`` starts a comment only where a statement may begin; inside a bare
  value it is an ordinary character.
* ``---`` where a statement may begin closes the current record.
* Assigning a key that the current record already holds closes the record
  and starts a new one with that assignment.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from typing import Iterator, Union

from .errors import DataSyntaxError, EmptyKeyError

Value = Union[str, tuple]  # scalar text, or a tuple of scalar texts

_KEY_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_UNESCAPE = {'"': '"', "\\": "\\", "n": "\n"}
_SPACE = " \t\r"
_NEEDS_QUOTES = re.compile(r'[,;"\\#\n\r\t]')


class Record(Mapping):
    """An ordered, read-only map from key to scalar or list value.

    ``line`` is the data-file line of the record's first assignment (0 when
    the record was built in code). It does not take part in equality.
    """

    def __init__(self, entries=(), line: int = 0) -> None:
        self._entries: dict[str, Value] = {}
        for key, value in dict(entries).items():
            self._entries[key] = value if isinstance(value, str) else tuple(value)
        self.line = line

    def __getitem__(self, key: str) -> Value:
        return self._entries[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"Record({self._entries!r})"


class _Parser:
    def __init__(self, data: str) -> None:
        self.data = data
        self.i = 0
        self.line = 1

    def error(self, message: str, line: int | None = None) -> DataSyntaxError:
        return DataSyntaxError(message, line or self.line)

    def peek(self) -> str:
        return self.data[self.i] if self.i < len(self.data) else ""

    def advance(self, n: int = 1) -> None:
        self.line += self.data.count("\n", self.i, self.i + n)
        self.i += n

    def skip_space(self, newlines: bool = True) -> None:
        while self.i < len(self.data):
            ch = self.data[self.i]
            if ch in _SPACE or (newlines and ch == "\n"):
                self.advance()
            else:
                break

    def skip_blank_and_comments(self) -> None:
        while True:
            self.skip_space()
            if self.peek() == "#":
                end = self.data.find("\n", self.i)
                self.advance((len(self.data) if end < 0 else end) - self.i)
            else:
                return

    def quoted(self) -> str:
        start_line = self.line
        self.advance()
        buf = []
        while True:
            ch = self.peek()
            if ch in ("", "\n"):
                raise self.error("unterminated quoted string", start_line)
            if ch == '"':
                self.advance()
                return "".join(buf)
            if ch == "\\":
                nxt = self.data[self.i + 1 : self.i + 2]
                if nxt not in _UNESCAPE:
                    raise self.error(f"invalid escape '\\{nxt}' in quoted string")
                buf.append(_UNESCAPE[nxt])
                self.advance(2)
            else:
                buf.append(ch)
                self.advance()

    def bare(self) -> str:
        start = self.i
        while self.peek() not in ("", ",", ";", "\n", '"'):
            self.advance()
        if self.peek() == '"':
            raise self.error("unexpected '\"' inside an unquoted value")
        text = self.data[start : self.i].strip(_SPACE)
        if not text:
            raise self.error("empty value")
        return text

    def values(self) -> list[str]:
        values = []
        while True:
            self.skip_space()
            values.append(self.quoted() if self.peek() == '"' else self.bare())
            self.skip_space(newlines=False)
            ch = self.peek()
            if ch == ",":
                self.advance()
            elif ch == ";":
                self.advance()
                return values
            else:
                raise self.error("missing ';' after value")

    def records(self) -> list[Record]:
        records: list[Record] = []
        current: dict[str, Value] = {}
        current_line = 0

        def close() -> None:
            nonlocal current
            if current:
                records.append(Record(current, current_line))
            current = {}

        while True:
            self.skip_blank_and_comments()
            if self.i >= len(self.data):
                break
            if self.data.startswith("---", self.i):
                self.advance(3)
                close()
                continue
            stmt_line = self.line
            m = _KEY_RE.match(self.data, self.i)
            if m is None:
                if self.peek() == "=":
                    raise EmptyKeyError("assignment without a key", stmt_line)
                raise self.error(f"expected a key, got {self.peek()!r}")
            key = m.group()
            self.advance(len(key))
            self.skip_space()
            if self.peek() != "=":
                raise self.error(f"missing '=' after key '{key}'", stmt_line)
            self.advance()
            values = self.values()
            if key in current:
                close()
            if not current:
                current_line = stmt_line
            current[key] = values[0] if len(values) == 1 else tuple(values)
        close()
        return records


def parse_records(data: str) -> list[Record]:
    """Parse a binding-data file into records, in file order.

    Raises:
        DataSyntaxError: missing ``=`` or ``;``, empty or malformed value,
            unterminated quote. Carries the line number.
        EmptyKeyError: an assignment that starts with ``=``.
    """
    return _Parser(data).records()


def quote(value: str) -> str:
    """Render a scalar so that parsing it back yields the same text."""
    if value and value == value.strip() and not _NEEDS_QUOTES.search(value):
        return value
    escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def dump_records(records) -> str:
    """Serialize records in the canonical ``key = value;`` form.

    Each record is one block of lines; blocks are separated by ``---``.
    Parsing the output yields equal records.
    """
    blocks = []
    for record in records:
        lines = []
        for key, value in record.items():
            text = quote(value) if isinstance(value, str) else ", ".join(quote(v) for v in value)
            lines.append(f"{key} = {text};\n")
        blocks.append("".join(lines))
    return "---\n".join(blocks)
