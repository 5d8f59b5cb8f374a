"""Code generation from templates that are themselves compilable source.

Directives live in ``/*C ... */`` comments placed directly before the
tokens they replace, so refactoring tools treat a template like any other
source file.
"""

from .bindings import Record, dump_records, parse_records, quote
from .errors import ProtogenError
from .expand import Environment, GeneratedUnit, expand, expand_all, substitute_pattern
from .lexer import Token, TokenKind, TokenizerMode, TokenStream, render, tokenize
from .refactor import rename
from .template import Template, erase, parse_directive, parse_template

__version__ = "0.1.0"

__all__ = [
    "Environment",
    "GeneratedUnit",
    "ProtogenError",
    "Record",
    "Template",
    "Token",
    "TokenKind",
    "TokenStream",
    "TokenizerMode",
    "dump_records",
    "erase",
    "expand",
    "expand_all",
    "parse_directive",
    "parse_records",
    "parse_template",
    "quote",
    "render",
    "rename",
    "substitute_pattern",
    "tokenize",
]
