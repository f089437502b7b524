"""Fractions of polynomials.

No multivariate gcd is computed.  Construction cancels what is cheap to
cancel (units, exact division of the numerator by the denominator, shared
monomial factors) and equality is decided by cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclo
from .poly import Poly, PolyRing


class RationalFunction:
    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: PolyRing, num: Poly, den: Poly | None = None):
        if den is None:
            den = ring.one
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = ring.one
        elif den.is_unit():
            num, den = num * den.unit_inverse(), ring.one
        elif not den.is_constant():
            q = num.exact_div(den)
            if q is not None:
                num, den = q, ring.one
            else:
                num, den = _strip_common_monomial(num, den)
                lc = den.leading_coefficient()
                if lc != 1:
                    num, den = num / lc, den / lc
        self.ring = ring
        self.num = num
        self.den = den

    @classmethod
    def of(cls, ring: PolyRing, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls(ring, ring.coerce(x))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return not self.num.is_zero

    def is_polynomial(self) -> bool:
        return self.den == 1

    def as_poly(self) -> Poly | None:
        """The polynomial equal to this fraction, if there is one."""
        if self.den == 1:
            return self.num
        return self.num.exact_div(self.den)

    def polynomial_in_variables(self) -> Poly | None:
        """Return ``self`` as a polynomial in the user variables with coefficients
        in the parameter field, i.e. allowing denominators free of user variables.
        ``None`` when a user variable survives in the denominator."""
        p = self.as_poly()
        if p is not None:
            return p
        if self.den.is_free_of_variables():
            return self.num
        return None

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.ring != self.ring:
                raise ValueError("rational functions from different rings")
            return other
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("rational functions from different rings")
            return RationalFunction(self.ring, other)
        if isinstance(other, (int, Fraction, Cyclo)):
            return RationalFunction(self.ring, self.ring.constant(other))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if b == d:
            return RationalFunction(self.ring, a + c, b)
        if b == 1:
            return RationalFunction(self.ring, a * d + c, d)
        if d == 1:
            return RationalFunction(self.ring, a + c * b, b)
        k = d.exact_div(b)
        if k is not None:
            return RationalFunction(self.ring, a * k + c, d)
        k = b.exact_div(d)
        if k is not None:
            return RationalFunction(self.ring, a + c * k, b)
        return RationalFunction(self.ring, a * d + c * b, b * d)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.ring, -self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            if not other:
                return RationalFunction(self.ring, self.ring.zero)
            return _raw(self.ring, self.num * other, self.den)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if b != 1:
            k = c.exact_div(b)
            if k is not None:
                c, b = k, self.ring.one
        if d != 1:
            k = a.exact_div(d)
            if k is not None:
                a, d = k, self.ring.one
        return RationalFunction(self.ring, a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero:
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.ring, self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return _raw(self.ring, self.num / other, self.den)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.ring, self.num ** k, self.den ** k)

    def substitute(self, images, ring=None):
        num = self.num.substitute(images, ring)
        den = self.den.substitute(images, ring)
        return _to_rf(num, ring or self.ring) / _to_rf(den, ring or self.ring)

    def evaluate(self, point):
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables")
        return self.substitute(list(point))

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclo, Poly)):
            o = self._lift(other)
        elif isinstance(other, RationalFunction):
            o = other
            if o.ring != self.ring:
                return False
        else:
            return NotImplemented
        if self.den == o.den:
            return self.num == o.num
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        n, d = str(self.num), str(self.den)
        if len(self.num.terms) > 1:
            n = f"({n})"
        if len(self.den.terms) > 1 or not self.den.is_constant():
            d = f"({d})"
        return f"{n}/{d}"


def _raw(ring, num, den):
    out = object.__new__(RationalFunction)
    out.ring, out.num, out.den = ring, num, den
    if num.is_zero:
        out.den = ring.one
    return out


def _to_rf(x, ring):
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(ring, x)


def _strip_common_monomial(num: Poly, den: Poly):
    n = num.ring.ngens
    mask = num.ring.laurent_mask
    # Laurent generators are units: normalize the denominator's lowest power to 0
    common = [
        min(e[i] for e in den.terms) if mask[i] else min(min(e[i] for e in num.terms), min(e[i] for e in den.terms))
        for i in range(n)
    ]
    if not any(common):
        return num, den
    shift = lambda p: Poly(p.ring, {tuple(x - s for x, s in zip(e, common)): c for e, c in p.terms.items()})
    return shift(num), shift(den)


def ratfun_arith(a, b, op: str):
    """Field operation by name; ``op`` is one of ``add``, ``sub``, ``mul``, ``div``."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
