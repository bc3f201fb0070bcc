"""JSON, LaTeX and plain-text renderings of solution records.

JSON layout::

    {"family": "y1",
     "field": {"kind": "rational"} | {"kind": "quadratic", "d": 2},
     "params": {"k": "6", "mu": "3", "s": "2"},
     "representation": "direct" | "swapped",
     "y": {"num": [...], "den": [...]},          # ascending powers
     "pvi": {"alpha": ..., "beta": ..., "gamma": ..., "delta": ...},
     "checks": {"pvi_residual_zero": true, ...}}

Every scalar is a canonical string (see :func:`pvirational.exactnum.format_scalar`).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .exactnum import Field, QuadScalar, Scalar
from .painleve import CHECK_NAMES, PviParams, SolutionRecord
from .parser import parse_scalar
from .polyrat import Poly, RatFunc, format_poly


def record_to_json(rec: SolutionRecord) -> dict:
    f = rec.field
    return {
        "family": rec.family,
        "field": f.to_json(),
        "params": {name: f.format(v) for name, v in rec.params.items()},
        "representation": rec.representation,
        "y": {
            "num": [f.format(c) for c in rec.y.num],
            "den": [f.format(c) for c in rec.y.den],
        },
        "pvi": {
            "alpha": f.format(rec.pvi.alpha),
            "beta": f.format(rec.pvi.beta),
            "gamma": f.format(rec.pvi.gamma),
            "delta": f.format(rec.pvi.delta),
        },
        "checks": {name: rec.checks.get(name) for name in CHECK_NAMES},
    }


def record_from_json(obj: dict) -> SolutionRecord:
    f = Field.from_json(obj["field"])

    def sc(text: str) -> Scalar:
        return parse_scalar(text, f)

    num = Poly(sc(c) for c in obj["y"]["num"])
    den = Poly(sc(c) for c in obj["y"]["den"])
    pvi = obj["pvi"]
    return SolutionRecord(
        family=obj["family"],
        field=f,
        params={name: sc(v) for name, v in obj["params"].items()},
        representation=obj["representation"],
        y=RatFunc(num, den),
        pvi=PviParams(sc(pvi["alpha"]), sc(pvi["beta"]), sc(pvi["gamma"]), sc(pvi["delta"])),
        checks=dict(obj["checks"]),
    )


def dumps(rec: SolutionRecord) -> str:
    return json.dumps(record_to_json(rec), indent=2)


def loads(text: str) -> SolutionRecord:
    return record_from_json(json.loads(text))


def records_equal(a: SolutionRecord, b: SolutionRecord) -> bool:
    return record_to_json(a) == record_to_json(b)


# ---------------------------------------------------------------- text output


def _latex_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def latex_scalar(v: Scalar) -> str:
    if isinstance(v, QuadScalar) and v.surd:
        surd = abs(v.surd)
        coef = "" if surd == 1 else _latex_fraction(surd)
        root = f"{coef}\\sqrt{{{v.d}}}"
        sign = "-" if v.surd < 0 else "+"
        if v.rat == 0:
            return root if sign == "+" else f"-{root}"
        return f"{_latex_fraction(v.rat)}{sign}{root}"
    if isinstance(v, QuadScalar):
        v = v.rat
    return _latex_fraction(Fraction(v))


def _sign(c: Scalar) -> int:
    if isinstance(c, QuadScalar):
        q = c.surd if c.surd else c.rat
    else:
        q = c
    return (q > 0) - (q < 0)


def latex_poly(p: Poly) -> str:
    """Descending powers, as displayed in print."""
    if p.is_zero():
        return "0"
    out = ""
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{{{i}}}")
        compound = isinstance(c, QuadScalar) and c.surd != 0 and c.rat != 0
        neg = not compound and _sign(c) < 0
        if compound:
            body = f"({latex_scalar(c)}){mono}"
        else:
            s = latex_scalar(-c if neg else c)
            body = mono if (s == "1" and mono) else s + mono
        if out:
            out += " - " if neg else " + "
        elif neg:
            out += "-"
        out += body
    return out


def format_latex(rec: SolutionRecord) -> str:
    y = rec.y
    if y.den == Poly.const(1):
        expr = latex_poly(y.num)
    else:
        expr = f"\\frac{{{latex_poly(y.num)}}}{{{latex_poly(y.den)}}}"
    pvi = ", ".join(latex_scalar(v) for v in rec.pvi.as_tuple())
    return f"y = {expr}, \\quad P_{{VI}}({pvi})"


def format_plain(rec: SolutionRecord) -> str:
    f = rec.field
    params = ", ".join(f"{k}={f.format(v)}" for k, v in rec.params.items())
    lines = [
        f"family: {rec.family}({params})" if params else f"family: {rec.family}",
        f"field: {f}",
        f"representation: {rec.representation}",
        f"y = ({format_poly(rec.y.num, f)}) / ({format_poly(rec.y.den, f)})",
        "solves P_VI(" + ", ".join(f.format(v) for v in rec.pvi.as_tuple()) + ")",
    ]
    for name in CHECK_NAMES:
        v = rec.checks.get(name)
        lines.append(f"{name}: {'n/a' if v is None else str(v).lower()}")
    return "\n".join(lines)
