"""Command-line front end.

Exit codes:
    0  success
    1  usage error
    2  template error (tokenizing or parsing the template)
    3  data error (parsing the binding file)
    4  expansion error (unknown key, wrong value shape, naming problems)
    5  I/O error (unreadable input, refused overwrite, failed write)

Diagnostics go to standard error, prefixed with ``file:line:column``
where a location is known.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import __version__
from .bindings import dump_records, parse_records
from .errors import DataError, ExpansionError, ProtogenError, TemplateError
from .expand import expand, expand_all
from .lexer import TokenizerMode, tokenize
from .template import Template, erase, parse_template

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TEMPLATE = 2
EXIT_DATA = 3
EXIT_EXPANSION = 4
EXIT_IO = 5


class _Fail(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    template_path: str | None = None
    data_path: str | None = None
    tokenizer: TokenizerMode = TokenizerMode.SPACE
    name_key: str = "name"
    out_dir: str = "."
    out_suffix: str = ""
    overwrite: bool = False


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="protogen",
        description="Generate source files from compilable templates with /*C ... */ directives.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="COMMAND")
    sub.required = True

    def add(name, help, template=True, data=None, tokenizer=True):
        p = sub.add_parser(name, help=help, description=help)
        if template:
            p.add_argument("--template", required=True, metavar="PATH", help="template source file")
        if data is not None:
            p.add_argument("--data", required=data, metavar="PATH", help="binding-data file")
        if tokenizer:
            p.add_argument(
                "--tokenizer",
                choices=[m.value for m in TokenizerMode],
                default=TokenizerMode.SPACE.value,
                help="tokenizer mode (default: space)",
            )
        return p

    gen = add("generate", "write one output file per data record", data=True)
    gen.add_argument("--name-key", default="name", metavar="KEY", help="record key naming each output (default: name)")
    gen.add_argument("--out-dir", default=".", metavar="DIR", help="output directory (default: .)")
    gen.add_argument("--out-suffix", default="", metavar="SUFFIX", help="appended to each output name, e.g. .java")
    gen.add_argument("--overwrite", action="store_true", help="replace existing output files")

    add("erase", "print the template with all directives removed")
    add("check", "validate a template, and optionally dry-run it against a data file", data=False)
    add("tokens", "dump the template's token stream")
    add("records", "dump the parsed records of a data file", template=False, data=True, tokenizer=False)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        template_path=getattr(args, "template", None),
        data_path=getattr(args, "data", None),
        tokenizer=TokenizerMode(getattr(args, "tokenizer", "space")),
        name_key=getattr(args, "name_key", "name"),
        out_dir=getattr(args, "out_dir", "."),
        out_suffix=getattr(args, "out_suffix", ""),
        overwrite=getattr(args, "overwrite", False),
    )


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8", newline="") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise _Fail(EXIT_IO, f"{path}: error: cannot read input: {exc}") from None


def _stdout(text: str) -> None:
    buf = getattr(sys.stdout, "buffer", None)
    if buf is None:
        sys.stdout.write(text)
        return
    sys.stdout.flush()
    buf.write(text.encode("utf-8"))
    buf.flush()


def _diagnostic(exc: ProtogenError, cfg: RunConfig) -> str:
    path = cfg.data_path if exc.origin == "data" else cfg.template_path
    loc = exc.location()
    prefix = f"{path}:{loc}" if loc else f"{path}"
    kind = type(exc).__name__.removesuffix("Error")
    message = exc.message
    index = getattr(exc, "record_index", None)
    if index is not None and exc.origin == "template":
        message += f" (record {index + 1})"
    return f"{prefix}: error: {message} [{kind}]"


def _exit_code(exc: ProtogenError) -> int:
    if isinstance(exc, TemplateError):
        return EXIT_TEMPLATE
    if isinstance(exc, DataError):
        return EXIT_DATA
    return EXIT_EXPANSION


def _load_template(cfg: RunConfig) -> Template:
    return parse_template(_read(cfg.template_path), cfg.tokenizer)


def cmd_generate(cfg: RunConfig) -> int:
    template = _load_template(cfg)
    records = parse_records(_read(cfg.data_path))
    units = expand_all(template, records, cfg.name_key)

    targets = [(os.path.join(cfg.out_dir, unit.name + cfg.out_suffix), unit) for unit in units]
    if not cfg.overwrite:
        for path, _ in targets:
            if os.path.lexists(path):
                raise _Fail(EXIT_IO, f"{path}: error: output exists; pass --overwrite to replace it")
    try:
        os.makedirs(cfg.out_dir, exist_ok=True)
        for path, unit in targets:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(unit.content)
            _stdout(path + "\n")
    except OSError as exc:
        raise _Fail(EXIT_IO, f"error: cannot write output: {exc}") from None
    return EXIT_OK


def cmd_erase(cfg: RunConfig) -> int:
    _stdout(erase(_load_template(cfg)))
    return EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    template = _load_template(cfg)
    if cfg.data_path is None:
        _stdout(f"{cfg.template_path}: ok\n")
        return EXIT_OK
    records = parse_records(_read(cfg.data_path))
    for index, record in enumerate(records):
        try:
            expand(template, record)
        except ExpansionError as exc:
            exc.record_index = index
            raise
    _stdout(f"{cfg.template_path}: ok ({len(records)} records)\n")
    return EXIT_OK


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n").replace("\r", "\\r")


def format_tokens(stream) -> str:
    return "".join(
        f"{tok.kind.value}\t{_escape(tok.leading_trivia)}\t{_escape(tok.text)}\n" for tok in stream
    )


def cmd_tokens(cfg: RunConfig) -> int:
    _stdout(format_tokens(tokenize(_read(cfg.template_path), cfg.tokenizer)))
    return EXIT_OK


def cmd_records(cfg: RunConfig) -> int:
    _stdout(dump_records(parse_records(_read(cfg.data_path))))
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "erase": cmd_erase,
    "check": cmd_check,
    "tokens": cmd_tokens,
    "records": cmd_records,
}


def run(cfg: RunConfig) -> int:
    """Execute one subcommand and return its exit code; never raises pipeline errors."""
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except _Fail as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except ProtogenError as exc:
        print(_diagnostic(exc, cfg), file=sys.stderr)
        return _exit_code(exc)


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return run(_config(args))
