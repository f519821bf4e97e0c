"""Recursive-descent parser for polynomial expressions with commutator brackets.

Grammar (whitespace is insignificant)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := integer ['/' integer] | variable | bracket | '(' expr ')'
    bracket := '[' expr (',' expr)+ ']'        # left-normed commutator
    variable:= 'x' digits

The ``integer '/' integer`` literal is what the printer emits for
non-integral rational coefficients.
"""

from __future__ import annotations

import re

from ..errors import UsageError
from ..scalar import QQ, FieldSpec
from .poly import FreePoly, commutator

_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|([-+*/\[\](),]))")


class ParseError(UsageError):
    def __init__(self, msg: str, pos: int, text: str = ""):
        super().__init__(f"{msg} at position {pos}" + (f": {text!r}" if text else ""))
        self.pos = pos


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unknown token {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("var", m.group(2), start))
        else:
            toks.append((m.group(3), m.group(3), start))
        pos = m.end()
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def expr(self) -> FreePoly:
        neg = False
        if self.peek() == "-":
            self.i += 1
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek() in "+-":
            op = self.take(self.peek())[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> FreePoly:
        acc = self.factor()
        while self.peek() == "*":
            self.i += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> FreePoly:
        kind, val, pos = self.toks[self.i]
        if kind == "int":
            self.i += 1
            num = int(val)
            if self.peek() == "/":
                self.i += 1
                den = int(self.take("int")[1])
                if den == 0:
                    raise ParseError("division by zero", pos, self.text)
                try:
                    c = self.field(f"{num}/{den}")
                except ZeroDivisionError:
                    raise ParseError(f"{den} is not invertible in {self.field}", pos, self.text) from None
                return FreePoly.const(c, self.field)
            return FreePoly.const(num, self.field)
        if kind == "var":
            self.i += 1
            idx = int(val[1:])
            if idx < 1:
                raise ParseError("variables are numbered from x1", pos, self.text)
            return FreePoly.var(idx, self.field)
        if kind == "(":
            self.i += 1
            e = self.expr()
            self.take(")")
            return e
        if kind == "[":
            self.i += 1
            args = [self.expr()]
            while self.peek() == ",":
                self.i += 1
                args.append(self.expr())
            self.take("]")
            if len(args) < 2:
                raise ParseError("a bracket needs at least two entries", pos, self.text)
            return commutator(*args)
        what = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"unexpected {what}", pos, self.text)


def parse(text: str, field: FieldSpec = QQ) -> FreePoly:
    """Parse ``text`` into a :class:`FreePoly` over ``field``."""
    p = _Parser(text, field)
    out = p.expr()
    if p.peek() != "eof":
        tok = p.toks[p.i]
        raise ParseError(f"trailing input {tok[1]!r}", tok[2], text)
    return out
