"""A small prefix term language over catalog and generator symbols.

Grammar::

    term := var | name "(" term {"," term} ")" | name
    var  := "x" digits
    name := [a-z][a-z0-9_]*

A bare ``name`` denotes a constant: it must resolve to a constant table, whose value it
takes regardless of arguments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .core import FnTable, _indices, input_tuples, is_constant


class TermError(ValueError):
    pass


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Apply:
    symbol: str
    children: tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.children:
            return self.symbol
        return f"{self.symbol}({', '.join(map(str, self.children))})"


Term = Union[Var, Apply]

_TOKEN = re.compile(r"\s*(?:(x\d+)(?![a-z0-9_])|([a-z][a-z0-9_]*)|(\()|(\))|(,))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermError(f"unexpected character {text[pos:].lstrip()[:1]!r} at offset {pos}")
        kind = ("var", "name", "(", ")", ",")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            where = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
            raise TermError(f"expected {kind!r} at offset {where} in {self.text!r}")
        value = self.tokens[self.i][1]
        self.i += 1
        return value

    def term(self) -> Term:
        if self.peek() == "var":
            index = int(self.take("var")[1:])
            if index < 1:
                raise TermError("variable indices start at 1")
            return Var(index)
        name = self.take("name")
        if self.peek() != "(":
            return Apply(name)
        self.take("(")
        children = [self.term()]
        while self.peek() == ",":
            self.take(",")
            children.append(self.term())
        self.take(")")
        return Apply(name, tuple(children))


def parse_term(text: str) -> Term:
    parser = _Parser(text)
    if not parser.tokens:
        raise TermError("empty term")
    term = parser.term()
    if parser.peek() is not None:
        raise TermError(f"trailing input at offset {parser.tokens[parser.i][2]} in {text!r}")
    return term


def variables(term: Term) -> set[int]:
    if isinstance(term, Var):
        return {term.index}
    out: set[int] = set()
    for child in term.children:
        out |= variables(child)
    return out


def term_size(term: Term) -> int:
    """Number of symbol applications."""
    if isinstance(term, Var):
        return 0
    return 1 + sum(term_size(c) for c in term.children)


def _evaluate(term: Term, env: Mapping[str, FnTable], args: np.ndarray) -> np.ndarray:
    if isinstance(term, Var):
        if term.index > args.shape[1]:
            raise TermError(f"variable x{term.index} out of range 1..{args.shape[1]}")
        return args[:, term.index - 1]
    if term.symbol not in env:
        raise TermError(f"unresolved symbol {term.symbol!r}")
    g = env[term.symbol]
    if not term.children:
        if not is_constant(g):
            raise TermError(f"bare symbol {term.symbol!r} is not a constant")
        return np.full(args.shape[0], g.entries[0], dtype=np.uint8)
    if len(term.children) != g.arity:
        raise TermError(
            f"arity mismatch: {term.symbol} takes {g.arity} arguments, got {len(term.children)}"
        )
    cols = np.stack([_evaluate(c, env, args) for c in term.children], axis=1)
    return g.array[_indices(cols)]


def term_to_table(term: Term | str, env: Mapping[str, FnTable], arity: int) -> FnTable:
    if isinstance(term, str):
        term = parse_term(term)
    return FnTable.from_array(_evaluate(term, env, input_tuples(arity)), arity)


def term_arity(term: Term) -> int:
    return max(variables(term), default=1)
