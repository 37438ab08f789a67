"""Parser for the polynomial expression grammar.

::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | 'i' | IDENT | '(' expr ')'

``/`` is only legal between two integer literals.  ``str(poly)`` prints in
this grammar, so printing and re-parsing gives back an equal polynomial.
"""
from __future__ import annotations

import re

from gmpy2 import mpq

from .poly import Chart, GaussRational, Poly

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, source: str):
        super().__init__(f"{message} at position {position} in {source!r}")
        self.position = position
        self.source = source


def _tokenize(src: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos >= len(src):
            break
        m = _TOKEN.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, src)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, chart: Chart):
        self.src = src
        self.chart = chart
        self.tokens = _tokenize(src)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        what = "end of input" if tok[0] == "end" else repr(tok[1])
        raise ParseError(f"{message}, got {what}", tok[2], self.src)

    def expect_op(self, op: str):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}")
        self.take()

    def parse(self) -> Poly:
        result = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return result

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Poly:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a non-negative integer literal")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        tok = self.peek()
        kind, text, _ = tok
        if kind == "int":
            self.take()
            value = mpq(int(text))
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    self.fail("expected integer denominator")
                self.take()
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2], self.src)
                value = mpq(int(text), int(den[1]))
            return Poly.const(self.chart, value)
        if kind == "ident":
            self.take()
            if text == "i":
                return Poly.const(self.chart, GaussRational(0, 1))
            if text not in self.chart.names:
                raise ParseError(f"unknown identifier {text!r}", tok[2], self.src)
            return Poly.var(self.chart, text)
        if kind == "op" and text == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.fail("expected a number, identifier or '('")


def parse_expression(src: str, chart: Chart) -> Poly:
    """Parse ``src`` into a canonical polynomial on ``chart``."""
    if not isinstance(src, str):
        raise TypeError(f"expected an expression string, got {type(src).__name__}")
    return _Parser(src, chart).parse()
