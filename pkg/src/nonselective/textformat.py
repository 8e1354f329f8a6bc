"""Flat ``key = value`` text files used for field descriptions, fixtures, configs and the cache.

Values are Python literals (ints, strings, lists, tuples); anything that is not a
literal is kept as a bare string. ``#`` starts a comment line.
"""
from __future__ import annotations

import ast
from pathlib import Path

from .errors import InvalidInput


class FormatError(InvalidInput):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = f"{source or '<text>'}:{line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


def loads(text: str, source: str | None = None) -> dict:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise FormatError("expected 'key = value'", lineno, source)
        if key in out:
            raise FormatError(f"duplicate key {key!r}", lineno, source)
        value = value.strip()
        try:
            out[key] = ast.literal_eval(value)
        except (ValueError, SyntaxError):
            if value[:1] in "[({'\"":
                raise FormatError(f"cannot parse value for {key!r}: {value}", lineno, source)
            out[key] = value
    return out


def load(path) -> dict:
    path = Path(path)
    return loads(path.read_text(), source=str(path))


def _fmt(v) -> str:
    if isinstance(v, (list, tuple)):
        inner = ", ".join(_fmt(x) for x in v)
        return f"[{inner}]"
    if isinstance(v, str):
        return repr(v)
    return str(v)


def dumps(data: dict) -> str:
    return "".join(f"{k} = {_fmt(v)}\n" for k, v in data.items())


def line_of(text: str, key: str) -> int | None:
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.strip().partition("=")[0].strip() == key:
            return lineno
    return None
