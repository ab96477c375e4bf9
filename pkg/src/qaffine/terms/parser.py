"""Recursive-descent parser for the expression grammar.

Generators: ``e(root)``, ``ep(nd)`` (primed imaginary), ``et(root)`` and
``etp(nd)`` (inverse family), ``k(a)``, ``k(d-a)``, ``k(d)`` and ``k(root)``
for composite Cartan elements.  Operators: ``+ - * / ^``, ``[x,y]``,
``[x,y]_q`` and ``[x,y]_q^-1``.  Scalars are rational functions of ``q``.
"""
from __future__ import annotations

import re

from ..roots import AlgebraKind, RootError, is_root, parse_root
from ..scalars import Q, Scalar
from .expression import (
    CHEVALLEY_ROOTS,
    Cartan,
    Expression,
    ExpressionError,
    RootVector,
    cartan_of_root,
    commutator,
)

__all__ = ["parse_expression", "ParseError", "parse_generator_token", "make_root_vector"]


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1):
        self.text, self.pos = text, pos
        if pos >= 0:
            message = f"{message} at position {pos}: {text[:pos]}<HERE>{text[pos:]}"
        super().__init__(message)


_HEADS = ("etp", "et", "ep", "e", "k")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<head>etp|et|ep|e|k)\(|(?P<q>q)|(?P<op>_q|[-+*/^(),\[\]]))")


def make_root_vector(gamma, family: str = "direct", primed: bool = False) -> RootVector:
    n, k = gamma
    if primed and k != 0:
        raise ExpressionError("primed vectors exist only for imaginary roots")
    if (n, k) in CHEVALLEY_ROOTS:
        family = "direct"
    if family not in ("direct", "inverse"):
        raise ExpressionError(f"unknown family {family!r}")
    return RootVector(n, k, family, primed)


def _cartan_from_label(label: str) -> Cartan:
    s = label.replace(" ", "")
    if s == "d":
        return Cartan(1, 0, 0)
    if s == "a":
        return Cartan(0, 1, 0)
    if s == "d-a":
        return Cartan(0, 0, 1)
    return cartan_of_root(parse_root(s))


def _generator(head: str, label: str, kind: AlgebraKind | None):
    if head == "k":
        return _cartan_from_label(label)
    gamma = parse_root(label)
    if kind is not None and not is_root(kind, gamma):
        raise RootError(f"{label} is not a root of {kind.name}")
    family = "inverse" if head.startswith("et") else "direct"
    return make_root_vector(gamma, family, head.endswith("p"))


def parse_generator_token(token: str):
    """Parse ``e(2d+a)^3`` or ``k(a)^-1`` into ``(generator, power)``."""
    m = re.fullmatch(r"\s*(etp|et|ep|e|k)\((.*)\)(?:\^(-?\d+))?\s*", token)
    if not m:
        raise ParseError(f"bad generator token {token!r}")
    return _generator(m.group(1), m.group(2), None), int(m.group(3) or 1)


class _Parser:
    def __init__(self, text: str, kind: AlgebraKind):
        self.text = text
        self.kind = kind
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            if self.text[self.pos:].strip() == "":
                return None, None
            self.error("unexpected character")
        for name in ("num", "head", "q", "op"):
            if m.group(name) is not None:
                return name, m.group(name)
        return None, None

    def advance(self):
        m = _TOKEN.match(self.text, self.pos)
        self.pos = m.end()

    def expect(self, op: str):
        kind, val = self.peek()
        if kind != "op" or val != op:
            self.error(f"expected {op!r}")
        self.advance()

    def at_op(self, *ops) -> bool:
        kind, val = self.peek()
        return kind == "op" and val in ops

    # grammar ------------------------------------------------------------
    def parse(self) -> Expression:
        x = self.expr()
        if self.peek()[0] is not None:
            self.error("trailing input")
        return x

    def expr(self) -> Expression:
        if self.at_op("-"):
            self.advance()
            x = -self.term()
        else:
            if self.at_op("+"):
                self.advance()
            x = self.term()
        while self.at_op("+", "-"):
            op = self.peek()[1]
            self.advance()
            y = self.term()
            x = x + y if op == "+" else x - y
        return x

    def term(self) -> Expression:
        x = self.signed_factor()
        while self.at_op("*", "/"):
            op = self.peek()[1]
            self.advance()
            y = self.signed_factor()
            if op == "*":
                x = x * y
            else:
                if set(y.terms) - {()}:
                    self.error("division by a non-scalar")
                c = y.scalar_part()
                if c.is_zero():
                    self.error("division by zero")
                x = x.scale(c.inverse())
        return x

    def signed_factor(self) -> Expression:
        if self.at_op("-"):
            self.advance()
            return -self.factor()
        return self.factor()

    def _exponent(self) -> int:
        sign = 1
        if self.at_op("-"):
            self.advance()
            sign = -1
        kind, val = self.peek()
        if kind != "num":
            self.error("expected an integer exponent")
        self.advance()
        return sign * int(val)

    def factor(self) -> Expression:
        x = self.atom()
        if self.at_op("^"):
            self.advance()
            n = self._exponent()
            x = self._power(x, n)
        return x

    def _power(self, x: Expression, n: int) -> Expression:
        if n >= 0:
            return x ** n
        if set(x.terms) == {()}:
            return Expression.scalar(self.kind, x.scalar_part() ** n)
        if len(x.terms) == 1:
            (m, c), = x.terms.items()
            if len(m) == 1 and isinstance(m[0], Cartan) and c.is_one():
                g = m[0]
                return Expression.generator(self.kind, Cartan(g.d * n, g.a * n, g.b * n))
        self.error("negative powers need a scalar or a Cartan generator")

    def atom(self) -> Expression:
        kind, val = self.peek()
        if kind == "num":
            self.advance()
            return Expression.scalar(self.kind, int(val))
        if kind == "q":
            self.advance()
            return Expression.scalar(self.kind, Q)
        if kind == "head":
            self.advance()
            start = self.pos
            depth = 1
            while self.pos < len(self.text) and depth:
                ch = self.text[self.pos]
                depth += ch == "("
                depth -= ch == ")"
                self.pos += 1
            if depth:
                self.error("unbalanced parentheses in generator")
            label = self.text[start:self.pos - 1]
            try:
                g = _generator(val, label, self.kind)
            except (RootError, ExpressionError) as exc:
                self.pos = start
                self.error(str(exc))
            return Expression.generator(self.kind, g)
        if kind == "op" and val == "(":
            self.advance()
            x = self.expr()
            self.expect(")")
            return x
        if kind == "op" and val == "[":
            self.advance()
            x = self.expr()
            self.expect(",")
            y = self.expr()
            self.expect("]")
            twisted = inverse = False
            if self.at_op("_q"):
                self.advance()
                twisted = True
                if self.at_op("^"):
                    save = self.pos
                    self.advance()
                    if self._exponent() != -1:
                        self.pos = save
                        self.error("only _q and _q^-1 brackets are supported")
                    inverse = True
            try:
                return commutator(x, y, twisted, inverse)
            except ExpressionError as exc:
                self.error(str(exc))
        self.error("unexpected token")


def parse_expression(text: str, kind: AlgebraKind) -> Expression:
    """Parse ``text`` into a free (un-normalized) expression."""
    return _Parser(text, kind).parse()


def _scalar_from_text(text: str, kind: AlgebraKind) -> Scalar:
    x = parse_expression(text, kind)
    if set(x.terms) - {()}:
        raise ParseError(f"{text!r} is not a scalar")
    return x.scalar_part()
