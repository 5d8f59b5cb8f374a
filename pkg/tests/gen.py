"""Seeded random generators for fuzz and property tests."""

import random
import string

# data files

KEYS = ["name", "fields", "kind", "type", "flag", "x", "_y", "k2"]
BARE_CHARS = string.ascii_letters + string.digits + "_-.:/+*()#= \t"
QUOTED_CHARS = string.ascii_letters + string.digits + ' ,;#=-\\"\n\t'


def bare_value(rng):
    inner = "".join(rng.choice(BARE_CHARS) for _ in range(rng.randint(1, 8))).strip(" \t")
    if not inner:
        inner = rng.choice(string.ascii_letters)
    pad = lambda: rng.choice(["", "", " ", "  ", "\t"])
    return pad() + inner + pad()


def quoted_value(rng):
    text = "".join(rng.choice(QUOTED_CHARS) for _ in range(rng.randint(0, 8)))
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def statement(rng):
    key = rng.choice(KEYS)
    values = [quoted_value(rng) if rng.random() < 0.35 else bare_value(rng) for _ in range(rng.choice([1, 1, 2, 3, 4]))]
    eq = rng.choice(["=", " = ", "  =\t", "= "])
    seps = [rng.choice([",", ", ", " , "]) for _ in values[1:]]
    body = values[0] + "".join(s + v for s, v in zip(seps, values[1:]))
    return f"{key}{eq}{body}{rng.choice(['', ' '])};"


def data_file(rng):
    """A grammar-conforming binding file whose statements each sit on one line."""
    lines = []
    for _ in range(rng.randint(0, 12)):
        r = rng.random()
        if r < 0.1:
            lines.append("")
        elif r < 0.18:
            lines.append("# " + "".join(rng.choice(BARE_CHARS + ",;\"") for _ in range(rng.randint(0, 10))))
        elif r < 0.28:
            lines.append(rng.choice(["---", "  ---", "--- " + statement(rng)]))
        else:
            stmts = " ".join(statement(rng) for _ in range(rng.randint(1, 3)))
            if rng.random() < 0.2:
                stmts += " # trailing, comment; here"
            lines.append(rng.choice(["", " ", "\t"]) + stmts)
    newline = rng.choice(["\n", "\n", "\r\n"])
    return newline.join(lines) + rng.choice(["", newline])


def malformed_data_file(rng):
    """A conforming file with one broken line inserted; returns (text, broken_line)."""
    lines = data_file(rng).replace("\r\n", "\n").split("\n")
    key = rng.choice(KEYS)
    broken = rng.choice(
        [
            f"{key} = {bare_value(rng).strip() or 'v'}",  # missing ';'
            f"{key} = \"never closed",  # unterminated quote
            f"{key} = a, \"open, b;",  # unterminated quote in a list
        ]
    )
    at = rng.randint(0, len(lines))
    lines.insert(at, broken)
    return "\n".join(lines), at + 1


# templates for refactor commutation

CODE_WORDS = ["Printer", "write", "run", "emit", "count", "size", "List", "alpha", "beta", "helper", "flush"]
VALUE_WORDS = ["Foo", "Bar", "Baz", "Qux", "Gen", "Item7", "zeta"]


class TemplateCase:
    def __init__(self, source, record, sigma):
        self.source = source
        self.record = record
        self.sigma = sigma

    def __repr__(self):
        return f"TemplateCase({self.source!r}, {self.record!r}, {self.sigma!r})"


def _code_line(rng, indent):
    a, b, c = (rng.choice(CODE_WORDS) for _ in range(3))
    return rng.choice(
        [
            f"{indent}{a}.{b}({c});",
            f"{indent}{a} {b} = {c} ;",
            f"{indent}{a}( \"lit\" );",
        ]
    )


def _hole_line(rng, indent, scalar_key):
    a = rng.choice(CODE_WORDS)
    return rng.choice(
        [
            f"{indent}{a} /*C %{scalar_key}% */ Target ;",
            f'{indent}{a}.{rng.choice(CODE_WORDS)}( /*C " %{scalar_key}% " */ "A" );',
            f"{indent}{a} /*C get%{scalar_key}% */ getTarget ( ) ;",
        ]
    )


def template_case(rng):
    """Random (template source, record, rename) triple meeting the commutation preconditions."""
    record = {
        "name": rng.choice(VALUE_WORDS),
        "kind": rng.choice(VALUE_WORDS),
        "flag": rng.choice(["", "yes"]),
        "items": tuple(rng.choice(VALUE_WORDS) for _ in range(rng.randint(2, 4))),
    }
    lines = [f"class /*C %name% */ Proto {{"]

    def body(depth, loop_var):
        out = []
        indent = "    " * (depth + 1)
        for _ in range(rng.randint(1, 4)):
            r = rng.random()
            scalar = loop_var if loop_var and rng.random() < 0.5 else rng.choice(["name", "kind"])
            if r < 0.35:
                out.append(_code_line(rng, indent))
            elif r < 0.7:
                out.append(_hole_line(rng, indent, scalar))
            elif depth < 2 and r < 0.85 and loop_var is None:
                sep = rng.choice(["", ' sep ", "', ' sep "\\n"'])
                out.append(f"{indent}/*C forall it in items{sep} */")
                out.extend(body(depth + 1, "it"))
                out.append(f"{indent}/*C end */")
            elif depth < 2:
                cond = rng.choice(["flag", 'kind == "Foo"', 'name != "Bar"'])
                out.append(f"{indent}/*C if {cond} */")
                out.extend(body(depth + 1, loop_var))
                out.append(f"{indent}/*C end */")
            else:
                out.append(_code_line(rng, indent))
        return out

    lines.extend(body(0, None))
    lines.append("}")
    source = "\n".join(lines) + "\n"
    domain = rng.sample(CODE_WORDS, rng.randint(1, 3))
    sigma = {word: f"{word}Renamed" for word in domain}
    return TemplateCase(source, record, sigma)
