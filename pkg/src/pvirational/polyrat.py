"""Univariate polynomials, reduced rational functions and bivariate polynomials.

Coefficients are exact field scalars (see :mod:`pvirational.exactnum`).
``Poly`` stores ascending coefficients with trailing zeros trimmed, so the
zero polynomial is the empty tuple and has degree ``-inf``.  ``RatFunc`` is
always kept reduced with a monic denominator, which makes ``==`` a test for
equality of functions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .exactnum import Field, Scalar, format_scalar

ZERO_DEGREE = float("-inf")


def _coerce(c) -> Scalar:
    if isinstance(c, int):
        return Fraction(c)
    return c


class Poly:
    """Polynomial in x; ``coeffs[i]`` is the coefficient of x**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()) -> None:
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(cs)

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, c, n: int) -> Poly:
        return cls([0] * n + [c])

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    @staticmethod
    def _lift(other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "surd"):
            return Poly.const(other)
        return None

    def __add__(self, other) -> Poly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self[i] - o[i] for i in range(n))

    def __rsub__(self, other) -> Poly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> Poly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        if len(o.coeffs) == 1:
            c = o.coeffs[0]
            return Poly(a * c for a in self.coeffs)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative exponent")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c) -> Poly:
        return Poly(a * c for a in self.coeffs)

    def divrem(self, other: Poly) -> tuple[Poly, Poly]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        if len(rem) - 1 < dq:
            return Poly(), self
        inv_lc = 1 / other.coeffs[-1]
        quot = [Fraction(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            q = c * inv_lc
            quot[i - dq] = q
            for j, b in enumerate(other.coeffs):
                rem[i - dq + j] -= q * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divrem(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divrem(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divrem(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly(c * inv for c in self.coeffs)

    def derivative(self) -> Poly:
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x0):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def compose(self, inner: Poly) -> Poly:
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + Poly.const(c)
        return acc

    def truncate(self, order: int) -> Poly:
        return Poly(self.coeffs[: order + 1])


def poly_arith(lhs: Poly, rhs: Poly, op: str):
    """Dispatch ``op`` in {'add', 'sub', 'mul', 'divrem'}."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "divrem":
        return lhs.divrem(rhs)
    raise ValueError(f"unknown op {op!r}")


def poly_derivative(p: Poly) -> Poly:
    return p.derivative()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    a, b = a.monic(), b.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a


def _format_term(c: Scalar, power: int) -> str:
    mono = "" if power == 0 else ("x" if power == 1 else f"x^{power}")
    s = format_scalar(c)
    if hasattr(c, "surd"):
        s = f"({s})"
    if not mono:
        return s
    if c == 1:
        return mono
    if c == -1:
        return f"-{mono}"
    return f"{s}*{mono}"


def format_poly(p: Poly, field: Field | None = None) -> str:
    """Canonical form: ascending powers, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    out = ""
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if field is not None:
            c = field.coerce(c)
        term = _format_term(c, i)
        if out and not term.startswith("-"):
            out += "+"
        out += term
    return out


class RatFunc:
    """Reduced quotient ``num/den`` of polynomials with ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False) -> None:
        if den is None:
            den = Poly.const(1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly.const(1)
        elif not reduced:
            if not den.is_constant():
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc()
            if lc != 1:
                inv = 1 / lc
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> RatFunc:
        return cls(Poly.const(c), reduced=True)

    @classmethod
    def x(cls) -> RatFunc:
        return cls(Poly.x(), reduced=True)

    @staticmethod
    def _lift(other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, reduced=True)
        if isinstance(other, (int, Fraction)) or hasattr(other, "surd"):
            return RatFunc.const(other)
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({format_poly(self.num)!r}, {format_poly(self.den)!r})"

    def __str__(self) -> str:
        if self.den == Poly.const(1):
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __add__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc:
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> RatFunc:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> RatFunc:
        if n >= 0:
            return RatFunc(self.num**n, self.den**n, reduced=True)
        return self.inverse() ** (-n)

    def derivative(self) -> RatFunc:
        """Quotient rule followed by reduction."""
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x0):
        d = self.den(x0)
        if d == 0:
            raise ZeroDivisionError(f"pole at x = {format_scalar(x0)}")
        return self.num(x0) / d


def ratfunc_arith(lhs: RatFunc, rhs: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")


def ratfunc_derivative(f: RatFunc) -> RatFunc:
    return f.derivative()


def ratfunc_eval(f: RatFunc, x0) -> Scalar:
    return f(x0)


class BiPoly:
    """Sparse polynomial in (x, y): ``terms[(i, j)]`` multiplies x**i * y**j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Scalar] | None = None) -> None:
        self.terms: dict[tuple[int, int], Scalar] = {
            k: _coerce(v) for k, v in (terms or {}).items() if v != 0
        }

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @classmethod
    def from_poly_x(cls, p: Poly) -> BiPoly:
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)})

    @staticmethod
    def _lift(other) -> BiPoly | None:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "surd"):
            return BiPoly.const(other)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> BiPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> BiPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> BiPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> BiPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[tuple[int, int], Scalar] = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in o.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiPoly:
        out = BiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, x0, y0):
        return sum((c * x0**i * y0**j for (i, j), c in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        return "BiPoly({" + ", ".join(f"{k}: {format_scalar(v)}" for k, v in items) + "})"


def bipoly_arith(lhs: BiPoly, rhs: BiPoly, op: str) -> BiPoly:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    raise ValueError(f"unknown op {op!r}")


def bipoly_is_zero(p: BiPoly) -> bool:
    return p.is_zero()
