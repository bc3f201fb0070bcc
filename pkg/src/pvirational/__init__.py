"""Exact construction and verification of rational Painleve VI solutions."""

from .exactnum import Field, QuadScalar, format_scalar, is_nonpositive_integer
from .hypergeom import HypParams, hyp_derivative_params, hyp_poly, hyp_series, pochhammer
from .painleve import (
    FamilyParams,
    HeunCoeffs,
    PviParams,
    RiccatiCoeffs,
    SolutionRecord,
    Theorem2Params,
    external_verify,
    family_y1,
    family_y2,
    family_y3,
    family_y4,
    heun_poly_solutions,
    lemma1_identity,
    params_from_family,
    pvi_residual,
    quadratic_residual,
    riccati_residual,
    riccati_to_pvi,
    theorem2_y,
)
from .parser import parse_poly_expr, parse_ratfunc_expr, parse_scalar
from .polyrat import BiPoly, Poly, RatFunc

__version__ = "0.1.0"
