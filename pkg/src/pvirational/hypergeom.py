"""Pochhammer symbols and the Gauss series F(alpha, beta, gamma; x).

Only what the solution families need: exact terminating polynomials,
truncated series, the derivative relation
``F' = (alpha*beta/gamma) * F(alpha+1, beta+1, gamma+1)`` and a truncated
binomial series for ``(1-x)**e``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .exactnum import DEFAULT_MAGNITUDE_BOUND, Scalar, format_scalar, is_nonpositive_integer
from .polyrat import Poly

DEFAULT_MAX_ORDER = 64


class HypergeometricError(ValueError):
    pass


class NonTerminatingError(HypergeometricError):
    """Neither upper parameter is a nonpositive integer."""


class VanishingDenominatorError(HypergeometricError):
    """(gamma)_n vanishes inside the range of the series."""


class HypParams(NamedTuple):
    alpha: Scalar
    beta: Scalar
    gamma: Scalar

    def __str__(self) -> str:
        return f"F({', '.join(format_scalar(v) for v in self)}; x)"


def pochhammer(a: Scalar, n: int) -> Scalar:
    """Rising factorial a(a+1)...(a+n-1); (a)_0 = 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = Fraction(1)
    for i in range(n):
        out = out * (a + i)
    return out


def termination_degree(p: HypParams, bound: int = DEFAULT_MAGNITUDE_BOUND) -> int | None:
    """Degree at which the series stops, or None if it never does.

    When both alpha and beta are nonpositive integers the smaller magnitude
    wins; the later factor is zero anyway.
    """
    degrees = []
    for v in (p.alpha, p.beta):
        ok, m = is_nonpositive_integer(v, bound)
        if ok:
            degrees.append(m)
    return min(degrees) if degrees else None


def _check_gamma(gamma: Scalar, order: int) -> None:
    ok, g = is_nonpositive_integer(gamma)
    if ok and g < order:
        raise VanishingDenominatorError(
            f"(gamma)_n vanishes for n > {g} with gamma = {format_scalar(gamma)}"
        )


def _series_coeffs(p: HypParams, order: int) -> list[Scalar]:
    coeffs: list[Scalar] = [Fraction(1)]
    term: Scalar = Fraction(1)
    for n in range(order):
        term = term * (p.alpha + n) * (p.beta + n) / ((p.gamma + n) * (n + 1))
        coeffs.append(term)
    return coeffs


def hyp_poly(p: HypParams) -> Poly:
    """The terminating series F(alpha, beta, gamma; x) as an exact polynomial."""
    m = termination_degree(p)
    if m is None:
        raise NonTerminatingError(f"{p} does not terminate")
    _check_gamma(p.gamma, m)
    return Poly(_series_coeffs(p, m))


def hyp_series(p: HypParams, order: int, max_order: int = DEFAULT_MAX_ORDER) -> Poly:
    """F(alpha, beta, gamma; x) truncated after x**order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > max_order:
        raise ValueError(f"order {order} exceeds the cap {max_order}")
    m = termination_degree(p)
    n = order if m is None else min(order, m)
    _check_gamma(p.gamma, n)
    return Poly(_series_coeffs(p, n))


def hyp_derivative_params(p: HypParams) -> tuple[Scalar, HypParams]:
    """Return ``(alpha*beta/gamma, (alpha+1, beta+1, gamma+1))``."""
    if p.gamma == 0:
        raise VanishingDenominatorError("gamma = 0")
    return p.alpha * p.beta / p.gamma, HypParams(p.alpha + 1, p.beta + 1, p.gamma + 1)


def binomial_series(e: Scalar, order: int) -> Poly:
    """(1-x)**e truncated after x**order; exact polynomial when e is a nonnegative integer."""
    coeffs: list[Scalar] = [Fraction(1)]
    term: Scalar = Fraction(1)
    for n in range(order):
        term = term * (n - e) / (n + 1)
        coeffs.append(term)
    return Poly(coeffs)


def hypergeometric_operator(u: Poly, p: HypParams) -> Poly:
    """x(1-x)u'' + (gamma - (alpha+beta+1)x)u' - alpha*beta*u."""
    du = u.derivative()
    d2u = du.derivative()
    x = Poly.x()
    return (
        x * (1 - x) * d2u
        + (Poly.const(p.gamma) - (p.alpha + p.beta + 1) * x) * du
        - u.scale(p.alpha * p.beta)
    )
