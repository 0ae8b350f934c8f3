"""Precedence-climbing parser shared by the scalar, t-polynomial and element grammars.

Grammar (whitespace insensitive)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' ['-'] INT)?
    atom     := INT | IDENT | '(' expr ')' | '{' scalar-expr '}'

What an identifier means, and whether ``/`` and negative exponents are
allowed, is decided by a small "domain" object per grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .scalars import DivisionByZero, Scalar, TPoly

__all__ = ["ParseError", "parse_scalar", "parse_tpoly", "tokenize"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line, self.column, self.message = line, col, message
        super().__init__(f"{message} at line {line}, column {col}")


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, OP, END
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))", re.S)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(1) is not None:
            tokens.append(Token("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("IDENT", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^(){}":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append(Token("OP", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("END", "", len(text)))
    return tokens


class ScalarDomain:
    """Identifiers are parameters; full field operations."""

    allow_div = True
    allow_neg_pow = True

    def __init__(self, params=None):
        self.params = None if params is None else set(params)

    def integer(self, n: int):
        return Scalar(n)

    def ident(self, name, tok, parser):
        if self.params is not None and name not in self.params:
            parser.fail(f"undeclared parameter {name!r}", tok)
        return Scalar.param(name)

    def from_scalar(self, s):
        return s

    def div(self, a, b, tok, parser):
        try:
            return a / b
        except DivisionByZero:
            parser.fail("division by zero", tok)

    def power(self, a, n, tok, parser):
        try:
            return a**n
        except DivisionByZero:
            parser.fail("zero raised to a negative power", tok)


class TPolyDomain(ScalarDomain):
    """Scalars plus the polynomial variable (``t`` by default)."""

    allow_neg_pow = False

    def __init__(self, params=None, var="t"):
        super().__init__(params)
        self.var = var

    def integer(self, n):
        return TPoly.const(n)

    def ident(self, name, tok, parser):
        if name == self.var:
            return TPoly.t()
        return TPoly.const(super().ident(name, tok, parser))

    def from_scalar(self, s):
        return TPoly.const(s)

    def div(self, a, b, tok, parser):
        if b.degree() != 0:
            parser.fail("can only divide by a nonzero constant", tok)
        return a / b

    def power(self, a, n, tok, parser):
        if n < 0:
            parser.fail("negative exponent of a polynomial", tok)
        return a**n


class Parser:
    def __init__(self, text: str, domain):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.domain = domain
        self.scalar_domain = ScalarDomain(getattr(domain, "params", None))

    # helpers
    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok.pos)

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, value) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.value == value

    def expect(self, value):
        if not self.at(value):
            tok = self.peek()
            found = "end of input" if tok.kind == "END" else repr(tok.value)
            self.fail(f"expected {value!r}, found {found}")
        return self.advance()

    # grammar
    def parse(self):
        if self.peek().kind == "END":
            self.fail("empty expression")
        value = self.expr(self.domain)
        if self.peek().kind != "END":
            self.fail(f"unexpected token {self.peek().value!r}")
        return value

    def expr(self, dom):
        value = self.term(dom)
        while self.at("+") or self.at("-"):
            op = self.advance().value
            rhs = self.term(dom)
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self, dom):
        value = self.unary(dom)
        while self.at("*") or self.at("/"):
            tok = self.advance()
            rhs = self.unary(dom)
            if tok.value == "*":
                value = value * rhs
            else:
                if not dom.allow_div:
                    self.fail("'/' is only allowed inside a scalar; use braces", tok)
                value = dom.div(value, rhs, tok, self)
        return value

    def unary(self, dom):
        if self.at("-"):
            self.advance()
            return -self.unary(dom)
        if self.at("+"):
            self.advance()
            return self.unary(dom)
        return self.power(dom)

    def power(self, dom):
        base = self.atom(dom)
        if self.at("^"):
            tok = self.advance()
            sign = 1
            if self.at("-"):
                self.advance()
                sign = -1
            num = self.peek()
            if num.kind != "INT":
                self.fail("exponent must be an integer literal")
            self.advance()
            n = sign * int(num.value)
            if n < 0 and not dom.allow_neg_pow:
                self.fail("negative exponent not allowed here", tok)
            base = dom.power(base, n, tok, self)
            if self.at("^"):
                self.fail("chained exponents need parentheses")
        return base

    def atom(self, dom):
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            return dom.integer(int(tok.value))
        if tok.kind == "IDENT":
            self.advance()
            return dom.ident(tok.value, tok, self)
        if self.at("("):
            self.advance()
            value = self.expr(dom)
            self.expect(")")
            return value
        if self.at("{"):
            self.advance()
            value = self.expr(self.scalar_domain)
            self.expect("}")
            return dom.from_scalar(value)
        if tok.kind == "END":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {tok.value!r}")


def parse_scalar(text: str, params=None) -> Scalar:
    """Parse ``p^-1``, ``1/(q-1)`` and friends into a :class:`Scalar`."""
    return Parser(str(text), ScalarDomain(params)).parse()


def parse_tpoly(text: str, params=None, var: str = "t") -> TPoly:
    if isinstance(text, (int, Fraction)):
        return TPoly.const(text)
    return Parser(str(text), TPolyDomain(params, var)).parse()
