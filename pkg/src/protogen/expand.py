"""Expansion: fill a template's holes and blocks from one record."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import Sequence

from .bindings import Value
from .errors import (
    ComparisonOnListError,
    DuplicateUnitNameError,
    ExpansionError,
    InvalidUnitNameError,
    ListInScalarPositionError,
    MissingNameKeyError,
    NotAListError,
    UnknownKeyError,
)
from .lexer import Token
from .template import (
    BlockNode,
    Forall,
    HoleNode,
    LiteralToken,
    PatternPiece,
    Template,
    Var,
    _hole_prefix,
)


@dataclass(frozen=True)
class Environment:
    """Lookup context: loop variables (innermost first), then record entries."""

    base: Mapping[str, Value]
    loop_bindings: tuple[tuple[str, str], ...] = ()

    def lookup(self, key: str) -> Value:
        for var, value in reversed(self.loop_bindings):
            if var == key:
                return value
        return self.base[key]

    def bind(self, var: str, value: str) -> "Environment":
        return Environment(self.base, self.loop_bindings + ((var, value),))


@dataclass(frozen=True)
class GeneratedUnit:
    name: str
    content: str


def _env(env) -> Environment:
    return env if isinstance(env, Environment) else Environment(env)


def _lookup(env: Environment, key: str, where: Token | None) -> Value:
    try:
        return env.lookup(key)
    except KeyError:
        raise UnknownKeyError(key, *_loc(where)) from None


def _loc(tok: Token | None) -> tuple[int | None, int | None]:
    return (tok.line, tok.column) if tok is not None else (None, None)


def substitute_pattern(pattern: Sequence[PatternPiece], env, where: Token | None = None) -> str:
    """Concatenate pattern pieces, replacing each variable by its scalar value.

    ``env`` is an Environment or any mapping of keys to values. ``where``
    locates errors.
    """
    env = _env(env)
    out = []
    for piece in pattern:
        if isinstance(piece, Var):
            value = _lookup(env, piece.key, where)
            if not isinstance(value, str):
                raise ListInScalarPositionError(
                    f"key '{piece.key}' holds a list but is used as a scalar", *_loc(where)
                )
            out.append(value)
        else:
            out.append(piece.text)
    return "".join(out)


def _condition(node: BlockNode, env: Environment) -> bool:
    header = node.header
    value = _lookup(env, header.key, node.opener)
    if header.op is None:
        return len(value) > 0
    if not isinstance(value, str):
        raise ComparisonOnListError(
            f"key '{header.key}' holds a list and cannot be compared", *_loc(node.opener)
        )
    return (value == header.literal) == (header.op == "==")


def _emit(nodes, env: Environment, out: list[str]) -> None:
    for node in nodes:
        if isinstance(node, LiteralToken):
            out.append(node.token.leading_trivia + node.token.text)
        elif isinstance(node, HoleNode):
            out.append(_hole_prefix(node))
            out.append(substitute_pattern(node.pattern, env, node.directive))
        elif isinstance(node.header, Forall):
            header = node.header
            items = _lookup(env, header.list_key, node.opener)
            if isinstance(items, str):
                raise NotAListError(
                    f"forall over '{header.list_key}', which holds a scalar", *_loc(node.opener)
                )
            out.append(node.head_trivia)
            for index, item in enumerate(items):
                _emit(node.body, env.bind(header.loop_var, item), out)
                if header.sep and index < len(items) - 1:
                    out.append(header.sep)
                out.append(node.tail_trivia)
        else:
            out.append(node.head_trivia)
            if _condition(node, env):
                _emit(node.body, env, out)
                out.append(node.tail_trivia)


def expand(template: Template, record) -> str:
    """Expand ``template`` under one record (any mapping of key to value).

    Raises:
        UnknownKeyError, NotAListError, ListInScalarPositionError,
        ComparisonOnListError: located at the directive that failed.
    """
    out: list[str] = []
    _emit(template.body, _env(record), out)
    out.append(template.trailing_trivia)
    return "".join(out)


def unit_name(record, name_key: str, index: int) -> str:
    line = getattr(record, "line", 0) or None
    name = record.get(name_key)
    if not isinstance(name, str) or not name:
        raise MissingNameKeyError(
            f"record {index + 1} has no non-empty scalar '{name_key}'", line, record_index=index
        )
    if "/" in name or "\\" in name or "\0" in name or name in (".", ".."):
        raise InvalidUnitNameError(
            f"record {index + 1}: unit name {name!r} is not a plain file name", line, record_index=index
        )
    return name


def expand_all(template: Template, records: Sequence, name_key: str = "name") -> list[GeneratedUnit]:
    """Expand ``template`` once per record, naming each unit by ``record[name_key]``.

    Raises:
        MissingNameKeyError: a record lacks a usable name.
        DuplicateUnitNameError: two records produce the same name.
        ExpansionError: anything ``expand`` raises, tagged with the record index.
    """
    units = []
    seen: dict[str, int] = {}
    for index, record in enumerate(records):
        name = unit_name(record, name_key, index)
        if name in seen:
            raise DuplicateUnitNameError(
                f"records {seen[name] + 1} and {index + 1} both produce unit '{name}'",
                getattr(record, "line", 0) or None,
                record_index=index,
            )
        seen[name] = index
        try:
            content = expand(template, record)
        except ExpansionError as exc:
            exc.record_index = index
            raise
        units.append(GeneratedUnit(name, content))
    return units
