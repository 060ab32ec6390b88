"""Parser for the shared polynomial text grammar.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := RATIONAL | "x"DIGIT | "e"DIGITS | "(" expr ")"

Rationals are written ``p`` or ``p/q``.  Juxtaposition is rejected, so
``2x1`` is an error and must be written ``2*x1``.  The printer in
:mod:`dunkl_fueter.poly` emits only this grammar, so ``parse(str(p)) == p``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .clifford import Multivector
from .errors import ParseError
from .poly import CliffordPolynomial, format_poly

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d)(?![\w])|(?P<blade>e\d+)(?![\w])|(?P<op>[-+*^()]))"
)


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at column {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int):
        self.tokens = tokenize(text)
        self.pos = 0
        self.dim = dim

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val!r}")

    def parse(self) -> CliffordPolynomial:
        if not self.tokens:
            raise ParseError("empty polynomial text")
        out = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input starting at token {self.peek()[1]!r}")
        return out

    def expr(self) -> CliffordPolynomial:
        out = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> CliffordPolynomial:
        out = self.unary()
        while True:
            kind, val = self.peek()
            if val == "*":
                self.take()
                out = out * self.unary()
            elif kind in ("num", "var", "blade") or val == "(":
                raise ParseError(f"juxtaposition is not allowed before {val!r}; use '*'")
            else:
                return out

    def unary(self) -> CliffordPolynomial:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> CliffordPolynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ParseError(f"exponent must be a non-negative integer, got {val!r}")
            return base ** int(val)
        return base

    def atom(self) -> CliffordPolynomial:
        kind, val = self.take()
        d = self.dim
        if kind == "num":
            try:
                return CliffordPolynomial.constant(d, Fraction(val))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {val}") from None
        if kind == "var":
            i = int(val[1:])
            if i > d:
                raise ParseError(f"variable {val} outside x0..x{d}")
            return CliffordPolynomial.var(d, i)
        if kind == "blade":
            out = CliffordPolynomial.constant(d, 1)
            for ch in val[1:]:
                i = int(ch)
                if not 1 <= i <= d:
                    raise ParseError(f"blade {val} uses e{i}, outside e1..e{d}")
                out = out * CliffordPolynomial.blade(d, 1 << (i - 1))
            return out
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")


def parse_poly(text: str, dim: int) -> CliffordPolynomial:
    """Parse ``text`` as a polynomial in x_0..x_dim with R_{0,dim} coefficients."""
    return _Parser(text, dim).parse()


def parse_multivector(text: str, dim: int) -> Multivector:
    p = parse_poly(text, dim)
    if p.degree() not in (None, 0):
        raise ParseError("multivector text must not contain variables")
    return p.evaluate([0] * (dim + 1))


def print_poly(p: CliffordPolynomial) -> str:
    return format_poly(p)
