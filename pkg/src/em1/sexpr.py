"""Minimal s-expression reader that keeps source locations.

Atoms are symbols or non-negative integers; ``;`` starts a comment that runs
to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError

_TOKEN = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


@dataclass(frozen=True)
class Sym:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Num:
    value: int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __len__(self):
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def __iter__(self):
        return iter(self.items)

    @property
    def head(self):
        return self.items[0] if self.items else None


def _tokens(text: str):
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        tok = m.group()
        col = m.start() - line_start + 1
        if tok[0].isspace() or tok[0] == ";":
            nl = tok.count("\n")
            if nl:
                line += nl
                line_start = m.start() + tok.rindex("\n") + 1
            continue
        yield tok, line, col
    yield None, line, 1


def read_all(text: str) -> list:
    """Parse every top-level form in ``text``."""
    stack: list[tuple[list, int, int]] = []
    out: list = []
    for tok, line, col in _tokens(text):
        if tok is None:
            if stack:
                _, l0, c0 = stack[-1]
                raise ParseError(f"unclosed '(' opened at {l0}:{c0}", line, col)
            return out
        if tok == "(":
            stack.append(([], line, col))
            continue
        if tok == ")":
            if not stack:
                raise ParseError("unexpected ')'", line, col)
            items, l0, c0 = stack.pop()
            node = SList(tuple(items), l0, c0)
        elif tok.isdigit():
            node = Num(int(tok), line, col)
        else:
            node = Sym(tok, line, col)
        (stack[-1][0] if stack else out).append(node)
    return out


def where(node) -> tuple[int | None, int | None]:
    return getattr(node, "line", None), getattr(node, "col", None)
