"""Recursive-descent parser for the expression grammar.

    expr  := term (("+"|"-") term)*
    term  := unary (("*"|"/") unary)*
    unary := "-" unary | pow
    pow   := atom ("^" unary)?
    atom  := NUMBER | IDENT | FUNC "(" expr ")" | "(" expr ")"

Whitespace is ignored and ``#`` starts a comment running to end of line.
Numeric literals become exact rationals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .nodes import COORDINATES, FUNCTIONS, Add, Const, Div, Expr, Func, Mul, Neg, Param, Pow, Var


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Token:
    kind: str  # NUMBER, IDENT, OP, END
    text: str
    offset: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind.upper(), m.group(), _byte_offset(text, pos)))
        pos = m.end()
    tokens.append(Token("END", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, params: frozenset):
        self.tokens = tokenize(text)
        self.i = 0
        self.params = params

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "END":
            found = "end of input" if self.tok.kind == "END" else repr(self.tok.text)
            raise ParseError(f"expected {text!r}, found {found}", self.tok.offset)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "END":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.offset)
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance().text
            rhs = self.term()
            terms.append(rhs if op == "+" else Neg(rhs))
        return terms[0] if len(terms) == 1 else Add(*terms)

    def term(self) -> Expr:
        factors = [self.unary()]
        while self.tok.kind == "OP" and self.tok.text in "*/":
            op = self.advance().text
            rhs = self.unary()
            if op == "*":
                factors.append(rhs)
            else:
                lhs = factors[0] if len(factors) == 1 else Mul(*factors)
                factors = [Div(lhs, rhs)]
        return factors[0] if len(factors) == 1 else Mul(*factors)

    def unary(self) -> Expr:
        if self.tok.kind == "OP" and self.tok.text == "-":
            self.advance()
            return Neg(self.unary())
        return self.pow()

    def pow(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "OP" and self.tok.text == "^":
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "NUMBER":
            self.advance()
            return Const(Fraction(tok.text))
        if tok.kind == "IDENT":
            self.advance()
            name = tok.text
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(name, arg)
            if name in COORDINATES:
                return Var(name)
            if name in self.params:
                return Param(name)
            raise ParseError(f"unknown identifier {name!r}", tok.offset)
        if tok.kind == "OP" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        found = "end of input" if tok.kind == "END" else repr(tok.text)
        raise ParseError(f"unexpected {found}", tok.offset)


def parse(text: str, params: Iterable[str] = ()) -> Expr:
    """Parse ``text`` into an expression tree.

    ``params`` names the identifiers accepted as free parameters besides the
    coordinates t, x, y, z.
    """
    params = frozenset(params)
    clash = params & (set(COORDINATES) | set(FUNCTIONS))
    if clash:
        raise ValueError(f"parameter names shadow reserved identifiers: {sorted(clash)}")
    return _Parser(text, params).parse()
