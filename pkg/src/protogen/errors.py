"""Exception hierarchy shared by all pipeline stages.

Every error knows which input it refers to (``origin``) and, where
possible, the 1-based line and column of the offending construct. The CLI
maps the three top-level families onto exit codes.
"""

from __future__ import annotations


class ProtogenError(Exception):
    """Base class for all pipeline errors."""

    origin = "template"

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def location(self) -> str:
        if self.line is None:
            return ""
        if self.column is None:
            return f"{self.line}"
        return f"{self.line}:{self.column}"

    def __str__(self) -> str:
        loc = self.location()
        return f"{loc}: {self.message}" if loc else self.message


# Template side (exit code 2)


class TemplateError(ProtogenError):
    pass


class LexError(TemplateError):
    pass


class UnterminatedDirectiveError(LexError):
    pass


class UnterminatedStringError(LexError):
    pass


class UnterminatedCommentError(LexError):
    pass


class MalformedDirectiveError(TemplateError):
    pass


class DanglingHoleError(TemplateError):
    pass


class UnbalancedBlockError(TemplateError):
    pass


# Data side (exit code 3)


class DataError(ProtogenError):
    origin = "data"


class DataSyntaxError(DataError):
    pass


class EmptyKeyError(DataError):
    pass


# Expansion (exit code 4)


class ExpansionError(ProtogenError):
    """Raised while combining a template with a record.

    ``record_index`` is the 0-based position of the record being expanded,
    when known.
    """

    def __init__(
        self,
        message: str,
        line: int | None = None,
        column: int | None = None,
        record_index: int | None = None,
    ) -> None:
        super().__init__(message, line, column)
        self.record_index = record_index


class UnknownKeyError(ExpansionError):
    def __init__(self, key: str, line=None, column=None, record_index=None) -> None:
        super().__init__(f"unknown key '{key}'", line, column, record_index)
        self.key = key


class ListInScalarPositionError(ExpansionError):
    pass


class NotAListError(ExpansionError):
    pass


class ComparisonOnListError(ExpansionError):
    pass


class MissingNameKeyError(ExpansionError):
    origin = "data"


class DuplicateUnitNameError(ExpansionError):
    origin = "data"


class InvalidUnitNameError(ExpansionError):
    origin = "data"
