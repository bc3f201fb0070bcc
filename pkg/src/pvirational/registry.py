"""Named, self-checking reconstructions of the three worked results.

Each entry rebuilds its objects from scratch and reports a flat mapping of
canonical strings; ``expected`` holds the frozen golden values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .exactnum import Field
from .hypergeom import HypParams, hyp_poly
from .painleve import (
    FamilyParams,
    HeunCoeffs,
    PviParams,
    Theorem2Params,
    external_verify,
    family_y1,
    family_y2,
    heun_poly_solutions,
    linearized_y,
    pvi_residual,
    theorem2_y,
)
from .parser import parse_ratfunc_expr
from .polyrat import Poly, RatFunc, format_poly


def _b(v: bool) -> str:
    return "true" if v else "false"


def _rf(f: RatFunc, field: Field | None = None) -> str:
    return f"({format_poly(f.num, field)})/({format_poly(f.den, field)})"


@dataclass(frozen=True)
class ExampleEntry:
    name: str
    description: str
    builder: Callable[[], dict[str, str]]
    expected: dict[str, str]

    def run(self) -> list[tuple[str, str, str | None]]:
        """Rebuild and return ``(field, expected, actual)`` for every mismatch."""
        actual = self.builder()
        keys = list(self.expected) + [k for k in actual if k not in self.expected]
        return [
            (k, self.expected.get(k, "<missing>"), actual.get(k))
            for k in keys
            if self.expected.get(k) != actual.get(k)
        ]


def _heun_collapse() -> dict[str, str]:
    basis = heun_poly_solutions(HeunCoeffs(8, 2, 30))
    w = basis[0]
    cofactor = hyp_poly(HypParams(6, -3, 2))
    one_minus_x = Poly([1, -1])
    y = linearized_y(w, -6)
    display = parse_ratfunc_expr("1/2*x*(42*x^3-70*x^2+35*x-5)/((2*x-1)*(7*x^2-7*x+1))")
    rec = family_y1(FamilyParams(6, 3, 2))
    return {
        "null_space_dim": str(len(basis)),
        "w": format_poly(w),
        "cofactor": format_poly(cofactor),
        "w_equals_(1-x)^6*cofactor": _b(w == one_minus_x**6 * cofactor),
        "y": _rf(y),
        "y_equals_display": _b(y == display),
        "y_equals_family_y1(6,3,2)": _b(y == rec.y),
        "pvi": str(rec.pvi),
        "pvi_residual_zero": _b(pvi_residual(y, rec.pvi).is_zero()),
        "riccati_residual_zero": _b(bool(rec.checks["riccati_residual_zero"])),
    }


def _sqrt2_remark() -> dict[str, str]:
    f = Field(2)
    r2 = f.sqrt()
    rec = family_y2(FamilyParams(4, r2, 2), field=f)
    display = parse_ratfunc_expr(
        "(3-sqrt(2))*x*(7*x^2-16*x+4*x*sqrt(2)+12-6*sqrt(2))/(7*x^2+6*x*sqrt(2)-18*x+24-15*sqrt(2))", f
    )
    other = family_y1(FamilyParams(2 + r2, 2, 2), field=f)
    target = PviParams((2 + r2) ** 2 / 2, -8, (1 + r2) ** 2 / 2, -f.coerce(3) / 2)
    return {
        "representation": rec.representation,
        "y": _rf(rec.y, f),
        "y_equals_display": _b(rec.y == display),
        "y_equals_y1(2+sqrt2,2,2)": _b(rec.y == other.y),
        "pvi": "P_VI(" + ", ".join(f.format(v) for v in rec.pvi.as_tuple()) + ")",
        "pvi_matches_stated": _b(rec.pvi == target),
        "pvi_residual_zero": _b(pvi_residual(rec.y, target).is_zero()),
    }


def _yuanli_counterexample() -> dict[str, str]:
    w = parse_ratfunc_expr("x*(x+8)*(x^2+14*x+21)/(4*(2*x+7)^2)")
    v = parse_ratfunc_expr("4*(2*x+7)^2/((x+7)*(x+8)*(x^2+7*x+28))")
    rec = external_verify(w, PviParams(0, -18, 50, 0))
    return {
        "w": _rf(w),
        "pvi_residual_zero": _b(bool(rec.checks["pvi_residual_zero"])),
        "v": _rf(v),
        "v_is_zero": _b(v.is_zero()),
        "w_equals_thm2(-2,7)": _b(theorem2_y(Theorem2Params(-2, 7)).y == w),
    }


REGISTRY: dict[str, ExampleEntry] = {
    e.name: e
    for e in (
        ExampleEntry(
            "heun-collapse",
            "Worked example r=8, s=2, t=30 (a=-6, b=10, c=1, d=-5): the degree-9 Heun "
            "polynomial, its factorization (1-x)^6 F(6,-3,2;x), and the collapse of "
            "x(x-1)w'/(6w) to a solution of P_VI(18,-25/2,25/2,-4).",
            _heun_collapse,
            {
                "null_space_dim": "1",
                "w": "1-15*x+90*x^2-295*x^3+594*x^4-771*x^5+650*x^6-345*x^7+105*x^8-14*x^9",
                "cofactor": "1-9*x+21*x^2-14*x^3",
                "w_equals_(1-x)^6*cofactor": "true",
                "y": "(-5/28*x+5/4*x^2-5/2*x^3+3/2*x^4)/(-1/14+9/14*x-3/2*x^2+x^3)",
                "y_equals_display": "true",
                "y_equals_family_y1(6,3,2)": "true",
                "pvi": "P_VI(18, -25/2, 25/2, -4)",
                "pvi_residual_zero": "true",
                "riccati_residual_zero": "true",
            },
        ),
        ExampleEntry(
            "sqrt2-remark",
            "Unexpected rational solution over Q(sqrt 2): y2(4, sqrt2, 2) = y1(2+sqrt2, 2, 2), "
            "solving P_VI((2+sqrt2)^2/2, -8, (1+sqrt2)^2/2, -3/2).",
            _sqrt2_remark,
            {
                "representation": "swapped",
                "y": "((48/7-30/7*sqrt(2))*x+(-8+4*sqrt(2))*x^2+(3-1*sqrt(2))*x^3)"
                "/((24/7-15/7*sqrt(2))+(-18/7+6/7*sqrt(2))*x+x^2)",
                "y_equals_display": "true",
                "y_equals_y1(2+sqrt2,2,2)": "true",
                "pvi": "P_VI(3+2*sqrt(2), -8+0*sqrt(2), 3/2+1*sqrt(2), -3/2+0*sqrt(2))",
                "pvi_matches_stated": "true",
                "pvi_residual_zero": "true",
            },
        ),
        ExampleEntry(
            "yuanli-counterexample",
            "Counterexample to a published claim on rational solutions with alpha = delta = 0: "
            "w solves P_VI(0,-18,50,0) while the companion function v is not zero.",
            _yuanli_counterexample,
            {
                "w": "(21/2*x+133/16*x^2+11/8*x^3+1/16*x^4)/(49/4+7*x+x^2)",
                "pvi_residual_zero": "true",
                "v": "(196+112*x+16*x^2)/(1568+812*x+189*x^2+22*x^3+x^4)",
                "v_is_zero": "false",
                "w_equals_thm2(-2,7)": "true",
            },
        ),
    )
}
