"""Exact scalars: rationals (``fractions.Fraction``) and elements of Q(sqrt(d)).

A field scalar is either a ``Fraction`` or a :class:`QuadScalar`.  The two
interoperate through the usual operators, so code written against one works
over the other.  A :class:`Field` fixes the ambient field of a computation and
owns the canonical string encoding.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

DEFAULT_MAGNITUDE_BOUND = 10**6


class MixedFieldError(ValueError):
    """Scalars from Q(sqrt(d1)) and Q(sqrt(d2)) with d1 != d2 were combined."""


class MagnitudeError(ValueError):
    """An integer parameter is too large to be used as a series length."""


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    p = 2
    while p * p <= d:
        if d % (p * p) == 0:
            return False
        p += 1
    return True


class QuadScalar(numbers.Number):
    """The element ``rat + surd*sqrt(d)`` of Q(sqrt(d)).

    Instances are immutable and compare equal to a ``Fraction``/``int`` when
    the surd part vanishes.
    """

    __slots__ = ("_rat", "_surd", "_d")

    def __init__(self, rat: Rationalish = 0, surd: Rationalish = 0, d: int = 2) -> None:
        if not is_squarefree(d):
            raise ValueError(f"d={d} must be a squarefree integer >= 2")
        self._rat = Fraction(rat)
        self._surd = Fraction(surd)
        self._d = d

    @property
    def rat(self) -> Fraction:
        return self._rat

    @property
    def surd(self) -> Fraction:
        return self._surd

    @property
    def d(self) -> int:
        return self._d

    def conj(self) -> QuadScalar:
        return QuadScalar(self._rat, -self._surd, self._d)

    def norm(self) -> Fraction:
        return self._rat * self._rat - self._d * self._surd * self._surd

    def _lift(self, other: object) -> QuadScalar | None:
        if isinstance(other, QuadScalar):
            if other._d != self._d:
                raise MixedFieldError(f"cannot combine sqrt({self._d}) with sqrt({other._d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadScalar(other, 0, self._d)
        return None

    def __add__(self, other: object) -> QuadScalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self._rat + o._rat, self._surd + o._surd, self._d)

    __radd__ = __add__

    def __sub__(self, other: object) -> QuadScalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadScalar(self._rat - o._rat, self._surd - o._surd, self._d)

    def __rsub__(self, other: object) -> QuadScalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> QuadScalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadScalar(
            self._rat * o._rat + self._d * self._surd * o._surd,
            self._rat * o._surd + self._surd * o._rat,
            self._d,
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadScalar:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadScalar(self._rat / n, -self._surd / n, self._d)

    def __truediv__(self, other: object) -> QuadScalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> QuadScalar:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> QuadScalar:
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        out = QuadScalar(1, 0, self._d)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __neg__(self) -> QuadScalar:
        return QuadScalar(-self._rat, -self._surd, self._d)

    def __pos__(self) -> QuadScalar:
        return self

    def __bool__(self) -> bool:
        return bool(self._rat) or bool(self._surd)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QuadScalar):
            if not (self._surd or other._surd):
                return self._rat == other._rat
            return (self._rat, self._surd, self._d) == (other._rat, other._surd, other._d)
        if isinstance(other, (int, Fraction)):
            return self._surd == 0 and self._rat == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._surd == 0:
            return hash(self._rat)
        return hash((self._rat, self._surd, self._d))

    def __repr__(self) -> str:
        return f"QuadScalar({self._rat!s}, {self._surd!s}, d={self._d})"

    def __str__(self) -> str:
        return format_scalar(self)


Rationalish = Union[int, Fraction]
Scalar = Union[Fraction, QuadScalar]


def is_rational(v: Scalar | int) -> bool:
    return not isinstance(v, QuadScalar) or v.surd == 0


def rational_part(v: Scalar | int) -> Fraction:
    """Return ``v`` as a Fraction; raise if it has a nonzero surd part."""
    if isinstance(v, QuadScalar):
        if v.surd:
            raise ValueError(f"{format_scalar(v)} is not rational")
        return v.rat
    return Fraction(v)


def as_integer(v: Scalar | int) -> int | None:
    """``v`` as a Python int when it is an integer, else ``None``."""
    if not is_rational(v):
        return None
    q = rational_part(v)
    return q.numerator if q.denominator == 1 else None


def is_nonpositive_integer(
    v: Scalar | int, bound: int = DEFAULT_MAGNITUDE_BOUND
) -> tuple[bool, int | None]:
    """Test ``v in {0, -1, -2, ...}``; on success also return ``|v|``.

    Raises :class:`MagnitudeError` when ``|v|`` exceeds ``bound`` since the
    caller would go on to build a series of that length.
    """
    n = as_integer(v)
    if n is None or n > 0:
        return False, None
    if -n > bound:
        raise MagnitudeError(f"|{n}| exceeds the configured bound {bound}")
    return True, -n


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(v: Scalar | int) -> str:
    """Canonical wire encoding: ``p/q`` or ``p/q+r/u*sqrt(d)``."""
    if isinstance(v, QuadScalar):
        sign = "-" if v.surd < 0 else "+"
        return f"{format_fraction(v.rat)}{sign}{format_fraction(abs(v.surd))}*sqrt({v.d})"
    return format_fraction(Fraction(v))


@dataclass(frozen=True)
class Field:
    """Ambient field: Q when ``d`` is None, else Q(sqrt(d))."""

    d: int | None = None

    def __post_init__(self) -> None:
        if self.d is not None and not is_squarefree(self.d):
            raise ValueError(f"d={self.d} must be a squarefree integer >= 2")

    @classmethod
    def parse(cls, text: str) -> Field:
        """Accept ``rational`` or ``quad:<d>``."""
        text = text.strip()
        if text == "rational":
            return cls()
        if text.startswith("quad:"):
            try:
                d = int(text[5:])
            except ValueError:
                raise ValueError(f"bad field {text!r}") from None
            return cls(d)
        raise ValueError(f"bad field {text!r}; expected 'rational' or 'quad:<d>'")

    @property
    def is_quadratic(self) -> bool:
        return self.d is not None

    def __str__(self) -> str:
        return "rational" if self.d is None else f"quad:{self.d}"

    def to_json(self) -> dict:
        if self.d is None:
            return {"kind": "rational"}
        return {"kind": "quadratic", "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> Field:
        if obj["kind"] == "rational":
            return cls()
        if obj["kind"] == "quadratic":
            return cls(int(obj["d"]))
        raise ValueError(f"unknown field kind {obj['kind']!r}")

    def sqrt(self) -> QuadScalar:
        if self.d is None:
            raise ValueError("sqrt(d) is not available over Q")
        return QuadScalar(0, 1, self.d)

    def coerce(self, v: Scalar | int) -> Scalar:
        """Bring ``v`` into this field's canonical representation."""
        if isinstance(v, QuadScalar):
            if self.d is None:
                return rational_part(v)
            if v.d != self.d:
                raise MixedFieldError(f"sqrt({v.d}) scalar in field {self}")
            return v
        if self.d is None:
            return Fraction(v)
        return QuadScalar(v, 0, self.d)

    def format(self, v: Scalar | int) -> str:
        return format_scalar(self.coerce(v))

    def contains(self, v: Scalar | int) -> bool:
        if isinstance(v, QuadScalar):
            return v.surd == 0 or v.d == self.d
        return True


def scalar_arith(lhs: Scalar, rhs: Scalar, op: str) -> Scalar:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} exactly."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        if rhs == 0:
            raise ZeroDivisionError("division by zero scalar")
        return lhs / rhs
    raise ValueError(f"unknown op {op!r}")


def field_of(*values: Scalar | int) -> Field:
    """Smallest of Q / Q(sqrt(d)) containing every value."""
    d = None
    for v in values:
        if isinstance(v, QuadScalar) and v.surd:
            if d is not None and d != v.d:
                raise MixedFieldError(f"sqrt({d}) and sqrt({v.d}) mixed")
            d = v.d
    return Field(d)
