"""Recursive-descent parser for polynomial text.

Grammar (whitespace between factors means multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | <juxtaposition>) unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | 'i' | VAR | '(' expr ')'

Division is only allowed by scalars.  Variables are resolved by a callback so
the same parser serves ``X0 .. Xk`` and ``z``.
"""

from __future__ import annotations

import re
from typing import Callable

from ..errors import ParseError
from .gaussian import GaussianRational

_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<var>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            line, col = _line_col(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, resolve: Callable[[str], object]):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.resolve = resolve

    def error(self, message: str, offset: int | None = None):
        if offset is None:
            offset = self.tokens[self.pos][2]
        line, col = _line_col(self.text, offset)
        raise ParseError(message, line, col)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _starts_atom(self, tok) -> bool:
        kind, val, _ = tok
        return kind in ("int", "var") or (kind == "op" and val == "(")

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                value = value * self.unary()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                where = self.peek()[2]
                rhs = self.unary()
                if not isinstance(rhs, GaussianRational):
                    self.error("division is only allowed by a scalar", where)
                if not rhs:
                    self.error("division by zero", where)
                value = value * rhs.inverse()
            elif self._starts_atom(tok):
                value = value * self.unary()
            else:
                return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "int":
                self.error("exponent must be a nonnegative integer", exp_tok[2])
            return base ** int(exp_tok[1])
        return base

    def atom(self):
        kind, val, offset = self.take()
        if kind == "int":
            return GaussianRational(int(val))
        if kind == "var":
            if val == "i":
                return GaussianRational(0, 1)
            try:
                return self.resolve(val)
            except KeyError:
                self.error(f"unknown variable {val!r}", offset)
        if kind == "op" and val == "(":
            value = self.expr()
            close = self.take()
            if close[1] != ")":
                self.error("expected ')'", close[2])
            return value
        if kind == "end":
            self.error("unexpected end of input", offset)
        self.error(f"unexpected token {val!r}", offset)


def parse_expression(text: str, resolve: Callable[[str], object]):
    return _Parser(text, resolve).parse()


def parse_scalar(text: str) -> GaussianRational:
    def no_vars(name):
        raise KeyError(name)

    value = parse_expression(text, no_vars)
    return value
