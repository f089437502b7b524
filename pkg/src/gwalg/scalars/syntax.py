"""Canonical text syntax: ``(h1^2 - h2)/(h1 - 1)``, parameters by name, ``zeta``.

Parsing goes through :mod:`ast` after rewriting ``^`` as ``**``; only
arithmetic nodes, integer literals and known names are accepted.
"""

from __future__ import annotations

import ast
from fractions import Fraction

from .poly import Poly, PolyRing


class ParseError(ValueError):
    pass


def parse_expr(ring: PolyRing, text: str):
    """Parse ``text`` into a Poly, or a RationalFunction when it has a genuine denominator."""
    from .ratfun import RationalFunction

    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    value = _eval(ring, tree.body, text)
    if isinstance(value, RationalFunction) and value.den == 1:
        return value.num
    return value


def parse_poly(ring: PolyRing, text: str) -> Poly:
    value = parse_expr(ring, text)
    if isinstance(value, Poly):
        return value
    p = value.as_poly()
    if p is None:
        raise ParseError(f"{text!r} is not a polynomial in {ring.names}")
    return p


def parse_ratfun(ring: PolyRing, text: str):
    from .ratfun import RationalFunction

    return RationalFunction.of(ring, parse_expr(ring, text))


def _eval(ring, node, text):
    from .ratfun import RationalFunction

    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ParseError(f"only integer literals are allowed in {text!r}")
        return ring.constant(node.value)
    if isinstance(node, ast.Name):
        if node.id == "zeta":
            if ring.field.cyclotomic_order == 1:
                raise ParseError("zeta requires a cyclotomic field of order > 1")
            return ring.constant(ring.field.zeta)
        if node.id in ring.names:
            return ring.gen(node.id)
        raise ParseError(f"unknown symbol {node.id!r} in {text!r}")
    if isinstance(node, ast.UnaryOp):
        v = _eval(ring, node.operand, text)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        left = _eval(ring, node.left, text)
        if isinstance(node.op, ast.Pow):
            exp = _int_literal(node.right, text)
            if exp < 0 and isinstance(left, Poly) and not left.is_unit():
                return RationalFunction(ring, ring.one, left ** (-exp))
            return left ** exp
        right = _eval(ring, node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if isinstance(right, Poly) and right.is_constant():
                return left / right.constant_value()
            return RationalFunction.of(ring, left) / RationalFunction.of(ring, right)
    raise ParseError(f"unsupported syntax in {text!r}")


def _int_literal(node, text) -> int:
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand, text)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    raise ParseError(f"exponents must be integer literals in {text!r}")


def format_expr(x) -> str:
    return str(x)


def parse_scalar(text: str, field):
    """Parse a constant (rational, or involving ``zeta``) in ``field``."""
    ring = PolyRing(field, ())
    value = parse_poly(ring, text)
    if not value.is_constant():
        raise ParseError(f"{text!r} is not a constant")
    return value.constant_value() if value else Fraction(0)
