"""Recursive-descent parser for polynomial and rational-function expressions.

Grammar (whitespace ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' INT)?
    atom    := INT | 'x' | 'sqrt' '(' INT ')' | '(' expr ')'

In polynomial mode a divisor must be a nonzero constant, so ``1/2*x`` and
``x^2/3`` parse but ``1/x`` does not.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exactnum import Field, Scalar
from .polyrat import Poly, RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|(x)|([-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str) -> None:
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.pos = pos


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        kind = ("int", "sqrt", "x", "op")[m.lastindex - 1]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: Field, polynomial: bool) -> None:
        self.text = text
        self.field = field
        self.polynomial = polynomial
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def error(self, message: str, pos: int | None = None) -> ParseError:
        return ParseError(message, self.peek()[2] if pos is None else pos, self.text)

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise self.error(f"expected {want!r}, got {got!r}")
        self.i += 1
        return tok

    def parse(self) -> RatFunc:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            op, pos = self.take()[1:]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
                continue
            if rhs.is_zero():
                raise ParseError("division by zero", pos, self.text)
            if self.polynomial and not (rhs.is_polynomial() and rhs.num.is_constant()):
                raise ParseError("polynomial expressions only divide by constants", pos, self.text)
            value = value / rhs
        return value

    def unary(self) -> RatFunc:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            if self.peek()[1] == "-":
                raise self.error("negative exponent")
            exp = int(self.take(kind="int")[1])
            base = base**exp
        return base

    def atom(self) -> RatFunc:
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            return RatFunc.const(self.field.coerce(Fraction(int(value))))
        if kind == "x":
            self.take()
            return RatFunc.x()
        if kind == "sqrt":
            self.take()
            self.take("(")
            d = int(self.take(kind="int")[1])
            self.take(")")
            if self.field.d is None:
                raise ParseError(f"sqrt({d}) needs --field quad:{d}", pos, self.text)
            if d != self.field.d:
                raise ParseError(f"sqrt({d}) in field Q(sqrt({self.field.d}))", pos, self.text)
            return RatFunc.const(self.field.sqrt())
        if value == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise self.error(f"unexpected {value or 'end of input'!r}")


def parse_ratfunc_expr(text: str, field: Field | None = None) -> RatFunc:
    return _Parser(text, field or Field(), polynomial=False).parse()


def parse_poly_expr(text: str, field: Field | None = None) -> Poly:
    f = _Parser(text, field or Field(), polynomial=True).parse()
    # the parser only divides by constants here, so the result is already a polynomial
    return f.num.scale(1 / f.den.lc())


def parse_scalar(text: str, field: Field | None = None) -> Scalar:
    """Parse a constant expression such as ``-25/2`` or ``2+1*sqrt(2)``."""
    field = field or Field()
    p = parse_poly_expr(text, field)
    if not p.is_constant():
        raise ParseError("expected a constant, found an expression in x", 0, text)
    return field.coerce(p[0])
