"""Rational solutions of Painleve VI and the exact checks that certify them.

The sixth Painleve equation P_VI(alpha, beta, gamma, delta) reads::

    y'' = 1/2 (1/y + 1/(y-1) + 1/(y-x)) y'^2 - (1/x + 1/(x-1) + 1/(y-x)) y'
          + y(y-1)(y-x)/(x^2 (x-1)^2) * (alpha + beta x/y^2
                                         + gamma (x-1)/(y-1)^2
                                         + delta x(x-1)/(y-x)^2)

Solutions of the Riccati equation ``x(x-1)y' = a y^2 + (bx+c) y + d x`` with
``a+b+c+d = 0`` solve P_VI(a^2/2, -d^2/2, (b+d)^2/2, (1-(c+d+1)^2)/2).
Linearizing with ``y = -x(x-1)w'/(a w)`` gives the degenerate Heun equation
``x(x-1)^2 w'' - (x-1)(r x + s) w' + t w = 0`` (r = b-2, s = c+1, t = a d),
whose polynomial solutions are ``(1-x)^k`` times terminating Gauss series.
The families y1..y4 and the alpha = delta = 0 family are built from those
series and every constructed function is checked by exact substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, NamedTuple

from .exactnum import Field, Scalar, as_integer, field_of, format_scalar, is_nonpositive_integer
from .hypergeom import HypergeometricError, HypParams, NonTerminatingError, hyp_poly
from .polyrat import BiPoly, Poly, RatFunc

X = Poly.x()
X_RAT = RatFunc.x()

FAMILIES = ("y1", "y2", "y3", "y4", "thm2", "external")
CHECK_NAMES = ("pvi_residual_zero", "riccati_residual_zero", "quadratic_residual_zero")

CASE_A_EQ_MINUS_K = "a_eq_minus_k"
CASE_A_EQ_MINUS_MU_PLUS_S = "a_eq_minus_mu_plus_s"


class PainleveError(ValueError):
    pass


class PreconditionError(PainleveError):
    """Parameters outside the domain of a construction (degenerate or excluded)."""


class NoTerminatingRepresentation(PreconditionError):
    """Neither the direct formula nor its single swapped form is a finite series."""


class DomainError(PreconditionError):
    """y is identically 0, 1 or x, where P_VI is not defined."""


class VerificationError(PainleveError):
    """A constructed function failed one of its own residual checks."""


@dataclass(frozen=True)
class PviParams:
    alpha: Scalar
    beta: Scalar
    gamma: Scalar
    delta: Scalar

    def as_tuple(self) -> tuple[Scalar, Scalar, Scalar, Scalar]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __str__(self) -> str:
        return "P_VI(" + ", ".join(format_scalar(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class RiccatiCoeffs:
    """Coefficients of x(x-1)y' = a y^2 + (b x + c) y + d x, with a+b+c+d = 0."""

    a: Scalar
    b: Scalar
    c: Scalar
    d: Scalar

    def __post_init__(self) -> None:
        if self.a + self.b + self.c + self.d != 0:
            raise PreconditionError(
                f"a+b+c+d = {format_scalar(self.a + self.b + self.c + self.d)}, expected 0"
            )

    @classmethod
    def unchecked(cls, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> RiccatiCoeffs:
        """Build without the sum rule; only for probing what happens when it fails."""
        rc = object.__new__(cls)
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(rc, name, v)
        return rc


class HeunCoeffs(NamedTuple):
    r: Scalar
    s: Scalar
    t: Scalar


class FamilyParams(NamedTuple):
    k: Scalar
    mu: Scalar
    s: Scalar

    def swapped(self) -> FamilyParams:
        """(mu+s, k-s, s): the argument of the y2<->y1 and y4<->y3 identities."""
        return FamilyParams(self.mu + self.s, self.k - self.s, self.s)


class Theorem2Params(NamedTuple):
    n: Scalar
    r: Scalar


@dataclass
class SolutionRecord:
    family: str
    field: Field
    params: dict[str, Scalar]
    representation: str
    y: RatFunc
    pvi: PviParams
    checks: dict[str, bool | None] = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """All applicable checks were computed and came out true."""
        applicable = [v for v in self.checks.values() if v is not None]
        return bool(applicable) and all(applicable)

    @property
    def y_is_zero(self) -> bool:
        return self.y.is_zero()


# ---------------------------------------------------------------- parameter maps


def riccati_to_pvi(rc: RiccatiCoeffs) -> PviParams:
    a, b, c, d = rc.a, rc.b, rc.c, rc.d
    half = Fraction(1, 2)
    return PviParams(
        a * a * half,
        -d * d * half,
        (b + d) * (b + d) * half,
        (1 - (c + d + 1) * (c + d + 1)) * half,
    )


def heun_from_riccati(rc: RiccatiCoeffs) -> HeunCoeffs:
    return HeunCoeffs(rc.b - 2, rc.c + 1, rc.a * rc.d)


def params_from_family(fp: FamilyParams, case: str) -> RiccatiCoeffs:
    k, mu, s = fp
    if case == CASE_A_EQ_MINUS_K:
        return RiccatiCoeffs(-k, k + mu + 1, s - 1, -(mu + s))
    if case == CASE_A_EQ_MINUS_MU_PLUS_S:
        return RiccatiCoeffs(-(mu + s), k + mu + 1, s - 1, -k)
    raise ValueError(f"unknown case {case!r}")


def pvi_of_y1(fp: FamilyParams) -> PviParams:
    k, mu, s = fp
    half = Fraction(1, 2)
    return PviParams(k * k * half, -(mu + s) * (mu + s) * half, (k - s + 1) * (k - s + 1) * half, (1 - mu * mu) * half)


def pvi_of_y2(fp: FamilyParams) -> PviParams:
    k, mu, s = fp
    half = Fraction(1, 2)
    return PviParams((mu + s) * (mu + s) * half, -k * k * half, (mu + 1) * (mu + 1) * half, (1 - (k - s) * (k - s)) * half)


def pvi_of_theorem2(tp: Theorem2Params) -> PviParams:
    n, r = tp
    half = Fraction(1, 2)
    return PviParams(Fraction(0), -(r - 1) * (r - 1) * half, (2 * n - r + 1) * (2 * n - r + 1) * half, Fraction(0))


# ---------------------------------------------------------------- residuals


def _check_domain(y: RatFunc) -> None:
    if y.is_zero():
        raise DomainError("y = 0 identically; P_VI is undefined there")
    if y == RatFunc.const(1):
        raise DomainError("y = 1 identically; P_VI is undefined there")
    if y == X_RAT:
        raise DomainError("y = x identically; P_VI is undefined there")


def pvi_residual(y: RatFunc, p: PviParams) -> RatFunc:
    """y'' minus the right-hand side of P_VI(p), as a reduced rational function.

    With y = N/D the whole equation is multiplied by 2 A B C D^3 x^2 (x-1)^2,
    where A, B, C are the numerators of y, y-1, y-x; the remaining numerator
    is a polynomial and is only divided back when nonzero.
    """
    _check_domain(y)
    N, D = y.num, y.den
    dN, dD = N.derivative(), D.derivative()
    P = dN * D - N * dD
    Q = P.derivative() * D - 2 * P * dD
    A, B, C = N, N - D, N - X * D
    x1 = X * (X - 1)
    x1sq = x1 * x1
    AB, BC, CA = A * B, B * C, C * A
    ABC = AB * C
    D2 = D * D

    lhs = 2 * ABC * x1sq * Q
    t1 = (AB + BC + CA) * P * P * x1sq
    t2 = -2 * ((2 * X - 1) * C + x1 * D) * P * AB * D * x1
    AA, BB, CC = A * A, B * B, C * C
    t3 = 2 * (
        AA * BB * CC * p.alpha
        + X * D2 * BB * CC * p.beta
        + (X - 1) * D2 * AA * CC * p.gamma
        + x1 * D2 * AA * BB * p.delta
    )
    numerator = lhs - t1 - t2 - t3
    if numerator.is_zero():
        return RatFunc(Poly())
    return RatFunc(numerator, 2 * ABC * D2 * D * x1sq)


def riccati_residual(y: RatFunc, rc: RiccatiCoeffs) -> RatFunc:
    """x(x-1)y' - (a y^2 + (b x + c) y + d x)."""
    x1 = RatFunc(X * (X - 1), reduced=True)
    return x1 * y.derivative() - (rc.a * y * y + RatFunc(rc.b * X + rc.c) * y + rc.d * X_RAT)


def quadratic_residual(y: RatFunc, beta: Scalar, gamma: Scalar) -> RatFunc:
    """y'^2 - 2 (y-x)^2 ((beta+gamma) y - beta) / (x^2 (x-1)^2)."""
    dy = y.derivative()
    x1sq = (X * (X - 1)) ** 2
    yx = y - X_RAT
    rhs = 2 * yx * yx * ((beta + gamma) * y - beta) / RatFunc(x1sq, reduced=True)
    return dy * dy - rhs


def lemma1_identity(rc: RiccatiCoeffs) -> BiPoly:
    """Difference of the two sides of P_VI after eliminating y' with the Riccati equation.

    y is kept as a second indeterminate.  Both sides are multiplied by
    x^2 (x-1)^2 y (y-1) (y-x); the result is zero exactly when the Riccati
    flow is compatible with P_VI(riccati_to_pvi(rc)) for every y.
    """
    a, b, c, d = rc.a, rc.b, rc.c, rc.d
    p = riccati_to_pvi(rc)
    x, y = BiPoly.x(), BiPoly.y()
    x1 = x * (x - 1)
    ric = a * y * y + (b * x + c) * y + d * x
    ym, yx = y - 1, y - x
    half = Fraction(1, 2)

    # y'' from the differentiated Riccati equation, times x^2 (x-1)^2
    lhs = ((2 * a * y + (b - 2) * x + c + 1) * ric + (b * y + d) * x1) * y * ym * yx
    t1 = half * (ym * yx + y * yx + y * ym) * ric * ric
    t2 = -((2 * x - 1) * yx + x1) * ric * y * ym
    t3 = (
        p.alpha * (y * ym * yx) ** 2
        + p.beta * x * (ym * yx) ** 2
        + p.gamma * (x - 1) * (y * yx) ** 2
        + p.delta * x1 * (y * ym) ** 2
    )
    return lhs - (t1 + t2 + t3)


# ---------------------------------------------------------------- Heun equation


def heun_operator(w: Poly, h: HeunCoeffs) -> Poly:
    """x(x-1)^2 w'' - (x-1)(r x + s) w' + t w."""
    dw = w.derivative()
    return X * (X - 1) ** 2 * dw.derivative() - (X - 1) * (h.r * X + h.s) * dw + w.scale(h.t)


def _nullspace(rows: list[list[Scalar]], ncols: int) -> list[list[Scalar]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pr = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[row], m[pr] = m[pr], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v: list[Scalar] = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][free]
        basis.append(v)
    return basis


@dataclass
class HeunSolutions:
    basis: list[Poly]
    degree_bound: int | None
    diagnostic: str


def heun_solve(h: HeunCoeffs) -> HeunSolutions:
    """All polynomial solutions of the degenerate Heun equation.

    A solution of exact degree N > 0 needs N(N-1) - rN = 0, so N = r+1.
    The coefficient recurrence is assembled as an (N+2) x (N+1) banded
    system and its full null space is returned; a forward recurrence would
    miss null spaces of dimension > 1.
    """
    r, s, t = h
    top = as_integer(r + 1)
    if top is not None and top >= 0:
        N = top
    elif t == 0:
        N = 0
    else:
        return HeunSolutions([], None, "no polynomial degree bound: r+1 is not a nonnegative integer")
    rows: list[list[Scalar]] = [[Fraction(0)] * (N + 1) for _ in range(N + 2)]
    for n in range(N + 1):
        rows[n + 1][n] += n * (n - 1) - r * n
        rows[n][n] += -2 * n * (n - 1) - n * (s - r) + t
        if n:
            rows[n - 1][n] += n * (n - 1) + n * s
    basis = []
    for v in _nullspace(rows, N + 1):
        lead = next(c for c in v if c != 0)
        basis.append(Poly(c / lead for c in v))
    diag = "ok" if basis else "empty null space"
    if top is None or top < 0:
        diag = "constants only: r+1 is not a nonnegative integer" if basis else diag
    return HeunSolutions(basis, N, diag)


def heun_poly_solutions(h: HeunCoeffs) -> list[Poly]:
    """Basis of the polynomial solutions, each scaled so its lowest coefficient is 1."""
    return heun_solve(h).basis


def linearized_y(w: Poly, a: Scalar) -> RatFunc:
    """y = -x(x-1) w' / (a w)."""
    if a == 0:
        raise PreconditionError("a = 0: the linearizing substitution is undefined")
    return RatFunc(-(X * (X - 1) * w.derivative()), w.scale(a))


# ---------------------------------------------------------------- families


def _exact(v) -> Scalar:
    return Fraction(v) if isinstance(v, int) else v


def _nonzero(v: Scalar, what: str) -> None:
    if v == 0:
        raise PreconditionError(f"{what} = 0 is a degenerate parameter choice")


def _series(a: Scalar, b: Scalar, c: Scalar) -> Poly:
    try:
        return hyp_poly(HypParams(a, b, c))
    except NonTerminatingError:
        raise
    except HypergeometricError as exc:
        raise PreconditionError(str(exc)) from exc


def _ratio(num: Poly, den: Poly) -> RatFunc:
    if den.is_zero():
        raise PreconditionError("denominator series vanishes identically")
    return RatFunc(num, den)


def _y1_inner(fp: FamilyParams) -> RatFunc:
    """x{1 + mu(1-x)/s * F(k+1, 1-mu, s+1)/F(k, -mu, s)}."""
    k, mu, s = fp
    _nonzero(s, "s")
    f0 = _series(k, -mu, s)
    if mu == 0:
        return X_RAT
    f1 = _series(k + 1, 1 - mu, s + 1)
    return X_RAT * (1 + RatFunc(mu * (1 - X)) / s * _ratio(f1, f0))


def _y1_direct(fp: FamilyParams) -> RatFunc:
    return _y1_inner(fp)


def _y2_direct(fp: FamilyParams) -> RatFunc:
    k, mu, s = fp
    _nonzero(mu + s, "mu+s")
    return (k / (mu + s)) * _y1_inner(fp)


def _y3_core(fp: FamilyParams, scale: Scalar) -> RatFunc:
    """(x(x-1)/scale) {(1-s)/x - k/(1-x) + c F(k-s+2, 2-mu-s, 3-s)/F(k-s+1, 1-mu-s, 2-s)}."""
    k, mu, s = fp
    if as_integer(s) is not None:
        raise PreconditionError(f"s = {format_scalar(s)} is an integer; the second solution needs s not in Z")
    g0 = _series(k - s + 1, 1 - mu - s, 2 - s)
    coeff = (k - s + 1) * (1 - mu - s) / (2 - s)
    total = RatFunc((1 - s) * (X - 1) + k * X)
    if coeff != 0:
        g1 = _series(k - s + 2, 2 - mu - s, 3 - s)
        total = total + RatFunc(coeff * X * (X - 1)) * _ratio(g1, g0)
    return total / scale


def _y3_direct(fp: FamilyParams) -> RatFunc:
    _nonzero(fp.k, "k")
    return _y3_core(fp, fp.k)


def _y4_direct(fp: FamilyParams) -> RatFunc:
    _nonzero(fp.mu + fp.s, "mu+s")
    return _y3_core(fp, fp.mu + fp.s)


# family -> (direct builder, swapped builder applied to fp.swapped(), Riccati case, P_VI map)
_FAMILY_TABLE: dict[str, tuple[Callable, Callable, str, Callable]] = {
    "y1": (_y1_direct, _y2_direct, CASE_A_EQ_MINUS_K, pvi_of_y1),
    "y2": (_y2_direct, _y1_direct, CASE_A_EQ_MINUS_MU_PLUS_S, pvi_of_y2),
    "y3": (_y3_direct, _y4_direct, CASE_A_EQ_MINUS_K, pvi_of_y1),
    "y4": (_y4_direct, _y3_direct, CASE_A_EQ_MINUS_MU_PLUS_S, pvi_of_y2),
}


def _resolve(family: str, fp: FamilyParams, allow_swap: bool) -> tuple[RatFunc, str]:
    direct, swapped, _, _ = _FAMILY_TABLE[family]
    try:
        return direct(fp), "direct"
    except NonTerminatingError as exc:
        if not allow_swap:
            raise NoTerminatingRepresentation(f"{family}{tuple(map(format_scalar, fp))}: {exc}") from exc
        first = exc
    try:
        return swapped(fp.swapped()), "swapped"
    except NonTerminatingError as exc:
        raise NoTerminatingRepresentation(
            f"{family}{tuple(map(format_scalar, fp))}: direct form fails ({first}); swapped form fails ({exc})"
        ) from exc


def _finish(record: SolutionRecord) -> SolutionRecord:
    failed = [name for name, ok in record.checks.items() if ok is False]
    if failed:
        raise VerificationError(f"{record.family}{tuple(record.params.values())}: {', '.join(failed)} false")
    return record


def build_family(family: str, fp: FamilyParams, *, field: Field | None = None, allow_swap: bool = True) -> SolutionRecord:
    """Construct one of y1..y4 and verify it against P_VI and its Riccati equation."""
    if family not in _FAMILY_TABLE:
        raise ValueError(f"unknown family {family!r}")
    fp = FamilyParams(*map(_exact, fp))
    y, rep = _resolve(family, fp, allow_swap)
    _, _, case, pvi_map = _FAMILY_TABLE[family]
    pvi = pvi_map(fp)
    rc = params_from_family(fp, case)
    checks = {
        "pvi_residual_zero": pvi_residual(y, pvi).is_zero(),
        "riccati_residual_zero": riccati_residual(y, rc).is_zero(),
        "quadratic_residual_zero": None,
    }
    record = SolutionRecord(
        family=family,
        field=field or field_of(*fp),
        params={"k": fp.k, "mu": fp.mu, "s": fp.s},
        representation=rep,
        y=y,
        pvi=pvi,
        checks=checks,
    )
    return _finish(record)


def family_y1(fp: FamilyParams, **kw) -> SolutionRecord:
    return build_family("y1", fp, **kw)


def family_y2(fp: FamilyParams, **kw) -> SolutionRecord:
    return build_family("y2", fp, **kw)


def family_y3(fp: FamilyParams, **kw) -> SolutionRecord:
    return build_family("y3", fp, **kw)


def family_y4(fp: FamilyParams, **kw) -> SolutionRecord:
    return build_family("y4", fp, **kw)


# ---------------------------------------------------------------- alpha = delta = 0


def _theorem2_ratio(tp: Theorem2Params) -> tuple[RatFunc, str]:
    """F(n+1, n+2, r+1)/F(n, n+1, r), either directly or after Euler's transform.

    Euler: F(a, b, c) = (1-x)^(c-a-b) F(c-a, c-b, c), so the ratio equals
    F(r-n, r-n-1, r+1) / ((1-x) F(r-n, r-n-1, r)).
    """
    n, r = tp
    if is_nonpositive_integer(n)[0]:
        return _ratio(_series(n + 1, n + 2, r + 1), _series(n, n + 1, r)), "direct"
    m = as_integer(n - r)
    if m is not None and m >= 0:
        top = _series(r - n, r - n - 1, r + 1)
        bottom = _series(r - n, r - n - 1, r)
        return _ratio(top, (1 - X) * bottom), "swapped"
    raise NoTerminatingRepresentation(
        f"thm2(n={format_scalar(n)}, r={format_scalar(r)}): need n a negative integer or n-r a nonnegative integer"
    )


def theorem2_y(tp: Theorem2Params, *, field: Field | None = None) -> SolutionRecord:
    """The alpha = delta = 0 solution y(n, r), checked against both the quadratic ODE and P_VI."""
    tp = Theorem2Params(*map(_exact, tp))
    n, r = tp
    _nonzero(n, "n")
    _nonzero(n - r + 1, "n-r+1")
    if is_nonpositive_integer(r)[0]:
        raise PreconditionError(f"r = {format_scalar(r)} is a nonpositive integer; (r)_n vanishes")
    inner = RatFunc(n * X - (r - 1) / 2)
    rep = "direct"
    if n * (n + 1) != 0:
        ratio, rep = _theorem2_ratio(tp)
        inner = inner + RatFunc(n * (n + 1) / r * X * (X - 1)) * ratio
    y = (inner * inner - (r - 1) * (r - 1) / 4) / (n * (n - r + 1))
    pvi = pvi_of_theorem2(tp)
    checks = {
        "pvi_residual_zero": pvi_residual(y, pvi).is_zero(),
        "riccati_residual_zero": None,
        "quadratic_residual_zero": quadratic_residual(y, pvi.beta, pvi.gamma).is_zero(),
    }
    record = SolutionRecord(
        family="thm2",
        field=field or field_of(n, r),
        params={"n": n, "r": r},
        representation=rep,
        y=y,
        pvi=pvi,
        checks=checks,
    )
    return _finish(record)


def external_verify(y: RatFunc, p: PviParams, *, field: Field | None = None) -> SolutionRecord:
    """Check an externally supplied y against P_VI(p); never raises on a false verdict."""
    return SolutionRecord(
        family="external",
        field=field or field_of(*y.num, *y.den, *p.as_tuple()),
        params={},
        representation="direct",
        y=y,
        pvi=p,
        checks={
            "pvi_residual_zero": pvi_residual(y, p).is_zero(),
            "riccati_residual_zero": None,
            "quadratic_residual_zero": None,
        },
    )
