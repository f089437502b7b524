"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are residues modulo the m-th cyclotomic polynomial.  Rational
values are always returned as :class:`fractions.Fraction`, so an element is
a :class:`Cyclo` only when it is genuinely irrational; this keeps the
representation unique and lets ``hash`` agree with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_divexact_int(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        out[k] = c
        for j, d in enumerate(den):
            num[k + j] -= c * d
    if any(num):
        raise ArithmeticError("inexact division of integer polynomials")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divexact_int(num, list(cyclotomic_poly(d)))
    return tuple(num)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@dataclass(frozen=True)
class CyclotomicField:
    order: int
    modulus: tuple[int, ...] = field(init=False, repr=False, compare=False)
    degree: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("cyclotomic order must be positive")
        mod = cyclotomic_poly(self.order)
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "degree", len(mod) - 1)

    def zeta(self):
        """Primitive root of unity of order ``self.order``."""
        if self.degree == 1:
            return Fraction(-self.modulus[0])
        return Cyclo.make(self, [0, 1])

    def root_of_unity(self, m: int, k: int = 1):
        """``xi**k`` where ``xi`` is a primitive m-th root of unity inside this field."""
        if self.order % m == 0:
            return power(self.zeta(), (k * (self.order // m)) % self.order)
        if self.order % 2 and (2 * self.order) % m == 0:
            # Q(zeta_N) = Q(zeta_2N) for odd N; -zeta^((N+1)/2) is a primitive 2N-th root
            big = 2 * self.order
            e = (k * (big // m)) % big
            return power(-power(self.zeta(), (self.order + 1) // 2), e)
        raise ValueError(f"field of order {self.order} has no primitive {m}-th root")


def power(x, e: int):
    if e < 0:
        return 1 / power(x, -e)
    result = Fraction(1)
    base = x
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def _reduce(coeffs: list, modulus: tuple[int, ...]) -> list:
    deg = len(modulus) - 1
    coeffs = list(coeffs)
    for k in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[k]
        if c:
            for j in range(deg):
                coeffs[k - deg + j] -= c * modulus[j]
            coeffs[k] = 0
    coeffs = coeffs[:deg] + [Fraction(0)] * (deg - len(coeffs))
    return coeffs


class Cyclo:
    """An irrational element of Q(zeta_m)."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, fld: CyclotomicField, coeffs: tuple[Fraction, ...]):
        self.field = fld
        self.coeffs = coeffs
        self._hash = None

    @staticmethod
    def make(fld: CyclotomicField, coeffs):
        red = _reduce([Fraction(c) for c in coeffs], fld.modulus)
        if not any(red[1:]):
            return red[0] if red else Fraction(0)
        return Cyclo(fld, tuple(red))

    def _coerce(self, other):
        if isinstance(other, Cyclo):
            if other.field != self.field:
                raise ValueError("cyclotomic elements from different fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo.make(self.field, [a + b for a, b in zip(self.coeffs, o)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.field, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclo.make(self.field, [a - b for a, b in zip(self.coeffs, o)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return Cyclo(self.field, tuple(c * other for c in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o):
                    if b:
                        prod[i + j] += a * b
        return Cyclo.make(self.field, prod)

    __rmul__ = __mul__

    def inverse(self):
        # solve (multiplication-by-self matrix) x = 1 by Gauss-Jordan over Q
        deg = self.field.degree
        cols = []
        basis = [Fraction(0)] * deg
        for k in range(deg):
            e = list(basis)
            e[k] = Fraction(1)
            cols.append(_reduce(_conv(self.coeffs, e), self.field.modulus))
        mat = [[cols[c][r] for c in range(deg)] + [Fraction(int(r == 0))] for r in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if mat[r][c])
            mat[c], mat[piv] = mat[piv], mat[c]
            pv = mat[c][c]
            mat[c] = [x / pv for x in mat[c]]
            for r in range(deg):
                if r != c and mat[r][c]:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
        return Cyclo.make(self.field, [mat[r][deg] for r in range(deg)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Cyclo(self.field, tuple(c / other for c in self.coeffs))
        if isinstance(other, Cyclo):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return power(self, e)

    def __eq__(self, other):
        if isinstance(other, Cyclo):
            return self.field == other.field and self.coeffs == other.coeffs
        return False  # rationals are never stored as Cyclo

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.order, self.coeffs))
        return self._hash

    def __bool__(self):
        return True

    def __repr__(self):
        return f"Cyclo({format_cyclo(self)})"

    def __str__(self):
        return format_cyclo(self)


def _conv(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_cyclo(x) -> str:
    """Render a scalar as a polynomial in ``zeta`` (highest power first)."""
    if not isinstance(x, Cyclo):
        return _fmt_rational(Fraction(x))
    parts = []
    for k in range(len(x.coeffs) - 1, -1, -1):
        c = x.coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("zeta" if k == 1 else f"zeta^{k}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_fmt_rational(mag)}*{mono}"
        else:
            body = _fmt_rational(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
