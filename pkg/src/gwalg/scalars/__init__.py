"""Exact scalar tower and (Laurent) polynomial / rational-function arithmetic."""

from .cyclotomic import Cyclo, CyclotomicField, cyclotomic_poly, euler_phi
from .field import ScalarField, field_make
from .poly import LaurentError, Poly, PolyRing, monomial_key
from .ratfun import RationalFunction, ratfun_arith
from .syntax import ParseError, parse_expr, parse_poly, parse_ratfun, parse_scalar


def poly_eval(f, point):
    """Value of ``f`` at ``point``; the image of ``f`` under the evaluation character."""
    return f.evaluate(tuple(point))


def poly_divides(d: Poly, f: Poly):
    """``f / d`` when ``d`` divides ``f`` exactly, else ``None``."""
    return f.exact_div(d)


__all__ = [
    "Cyclo",
    "CyclotomicField",
    "LaurentError",
    "ParseError",
    "Poly",
    "PolyRing",
    "RationalFunction",
    "ScalarField",
    "cyclotomic_poly",
    "euler_phi",
    "field_make",
    "monomial_key",
    "parse_expr",
    "parse_poly",
    "parse_ratfun",
    "parse_scalar",
    "poly_divides",
    "poly_eval",
    "ratfun_arith",
]
