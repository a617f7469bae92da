"""Recursive-descent parser for element expressions.

Grammar (whitespace is insignificant, '*' is mandatory between factors)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := generator | uint | '(' expr ')'

Generators are ``x<k>`` / ``y<k>``.  Products keep their written order, so in
a Weyl context ``x1*y1`` evaluates to ``y1*x1 + 1``.  Subtraction means
adding ``(p-1)`` times the term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .weyl import AlgebraSignature, PolyElement, WeylElement


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Context:
    kind: str
    n: int
    p: int

    @property
    def sig(self) -> AlgebraSignature:
        return AlgebraSignature(self.n, self.p)


# AST nodes


@dataclass(frozen=True)
class Gen:
    letter: str
    index: int


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    # (sign, term) pairs, sign in {+1, -1}
    terms: tuple


_TOKEN = re.compile(r"\s*(?:(?P<gen>[xy]\d+)|(?P<num>\d+)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        match = _TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", *_line_col(text, pos))
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append((kind, match.group(kind), start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _line_col(text: str, pos: int) -> tuple:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, n: int | None):
        self.text = text
        self.n = n
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, *_line_col(self.text, tok[2]))

    def expect(self, value: str):
        tok = self.peek()
        if tok[1] != value or tok[0] != "op":
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}")
        return self.advance()

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self):
        terms = []
        sign = 1
        if self.peek() == ("op", "-", self.peek()[2]):
            self.advance()
            sign = -1
        terms.append((sign, self.term()))
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.advance()[1] == "+" else -1
            terms.append((sign, self.term()))
        return terms[0][1] if len(terms) == 1 and terms[0][0] == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.factor()]
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "num":
                self.fail("expected a nonnegative integer exponent")
            self.advance()
            return Pow(base, int(tok[1]))
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "gen":
            self.advance()
            index = int(tok[1][1:])
            if self.n is not None and not 1 <= index <= self.n:
                self.fail(f"generator {tok[1]} out of range for n={self.n}", tok)
            return Gen(tok[1][0], index)
        if tok[0] == "num":
            self.advance()
            return Num(int(tok[1]))
        if tok[0] == "op" and tok[1] == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(f"expected a generator, integer or '(', found {tok[1] or 'end of input'!r}")


def parse(text: str, ctx: Context | None = None):
    """Parse ``text`` to an AST; generator indices are checked against ``ctx.n``."""
    return _Parser(text, ctx.n if ctx else None).parse()


def evaluate(node, ctx: Context):
    cls = WeylElement if ctx.kind == "weyl" else PolyElement
    sig = ctx.sig
    return _eval(node, cls, sig)


def _eval(node, cls, sig):
    if isinstance(node, Gen):
        if not 1 <= node.index <= sig.n:
            raise IndexError(f"generator {node.letter}{node.index} out of range for n={sig.n}")
        return cls.x(sig, node.index) if node.letter == "x" else cls.y(sig, node.index)
    if isinstance(node, Num):
        return cls.constant(sig, node.value)
    if isinstance(node, Pow):
        return _eval(node.base, cls, sig) ** node.exponent
    if isinstance(node, Product):
        out = _eval(node.factors[0], cls, sig)
        for f in node.factors[1:]:
            out = out * _eval(f, cls, sig)
        return out
    if isinstance(node, Sum):
        out = cls.zero(sig)
        for sign, t in node.terms:
            val = _eval(t, cls, sig)
            out = out + val if sign > 0 else out + val.scale(sig.p - 1)
        return out
    raise TypeError(f"unknown node {node!r}")


def parse_element(text: str, kind: str, sig: AlgebraSignature):
    ctx = Context(kind, sig.n, sig.p)
    return evaluate(parse(text, ctx), ctx)
