"""Sparse multivariate (Laurent) polynomials over a :class:`ScalarField`.

A :class:`PolyRing` has the user variables ``h1..hn`` followed by the field
parameters.  Parameters are always invertible; the user variables are
invertible only when the ring is built with ``laurent=True``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cyclotomic import Cyclo, format_cyclo
from .field import ScalarField


class LaurentError(ArithmeticError):
    """A negative power of a non-invertible element was requested."""


def monomial_key(e: tuple[int, ...]):
    """Graded lexicographic sort key."""
    return (sum(e), e)


@dataclass(frozen=True)
class PolyRing:
    field: ScalarField
    variables: tuple[str, ...]
    laurent: bool = False
    names: tuple[str, ...] = field(init=False, repr=False, compare=False)
    laurent_mask: tuple[bool, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        names = variables + self.field.parameters
        if len(set(names)) != len(names):
            raise ValueError(f"variable names clash: {list(names)}")
        for v in variables:
            if not v.isidentifier() or v == "zeta":
                raise ValueError(f"invalid variable name {v!r}")
        object.__setattr__(self, "names", names)
        mask = (self.laurent,) * len(variables) + (True,) * len(self.field.parameters)
        object.__setattr__(self, "laurent_mask", mask)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def ngens(self) -> int:
        return len(self.names)

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = self.field.coerce(c)
        if not c:
            return Poly(self, {})
        return Poly(self, {(0,) * self.ngens: c})

    def gen(self, name_or_index) -> "Poly":
        i = self.names.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.ngens
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.nvars)]

    def param(self, name: str) -> "Poly":
        return self.gen(name)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.ngens:
            raise ValueError(f"expected {self.ngens} exponents, got {len(exps)}")
        bad = [self.names[i] for i, e in enumerate(exps) if e < 0 and not self.laurent_mask[i]]
        if bad:
            raise LaurentError(f"negative exponent on non-Laurent variable(s) {', '.join(bad)}")
        coeff = self.field.coerce(coeff)
        return Poly(self, {exps: coeff} if coeff else {})

    def __call__(self, x) -> "Poly":
        return self.coerce(x)

    def coerce(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring != self:
                raise ValueError("polynomial from a different ring")
            return x
        if isinstance(x, str):
            from .syntax import parse_poly

            return parse_poly(self, x)
        return self.constant(x)

    def parse(self, text: str):
        """Parse canonical text into a Poly, or a RationalFunction if it has a denominator."""
        from .syntax import parse_expr

        return parse_expr(self, text)

    def frac(self, num, den=1):
        from .ratfun import RationalFunction

        return RationalFunction(self, self.coerce(num), self.coerce(den))


class Poly:
    """Immutable sparse polynomial: ``terms`` maps exponent tuples to nonzero scalars."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- structure -------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def is_unit(self) -> bool:
        if len(self.terms) != 1:
            return False
        (e,) = self.terms
        return all(x == 0 or lm for x, lm in zip(e, self.ring.laurent_mask))

    def unit_inverse(self) -> "Poly":
        if not self.is_unit():
            raise LaurentError(f"{self} is not invertible in {self.ring.names}")
        ((e, c),) = self.terms.items()
        return Poly(self.ring, {tuple(-x for x in e): 1 / c})

    def leading_term(self):
        e = max(self.terms, key=monomial_key)
        return e, self.terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree(self, var) -> int:
        i = self.ring.names.index(var) if isinstance(var, str) else var
        return max((e[i] for e in self.terms), default=0)

    def free_of(self, indices: Iterable[int]) -> bool:
        idx = list(indices)
        return all(e[i] == 0 for e in self.terms for i in idx)

    def is_free_of_variables(self) -> bool:
        """True when no user variable (as opposed to a parameter) occurs."""
        return self.free_of(range(self.ring.nvars))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction, Cyclo)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

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
                return self.ring.zero
            return Poly(self.ring, {e: c * other for e, c in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = 1 / other
            return Poly(self.ring, {e: c * inv for e, c in self.terms.items()})
        if isinstance(other, Poly):
            return self.ring.frac(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.ring.frac(o, self)

    def exact_div(self, d: "Poly") -> "Poly | None":
        """Return ``q`` with ``self == d * q`` or ``None`` when no such polynomial exists."""
        d = self._lift(d)
        if d.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self.ring.zero
        if d.is_unit():
            return self * d.unit_inverse()
        n = self.ring.ngens
        mask = self.ring.laurent_mask
        sf = [min(e[i] for e in self.terms) if mask[i] else 0 for i in range(n)]
        sd = [min(e[i] for e in d.terms) if mask[i] else 0 for i in range(n)]
        rem = {tuple(x - s for x, s in zip(e, sf)): c for e, c in self.terms.items()}
        div = [(tuple(x - s for x, s in zip(e, sd)), c) for e, c in d.terms.items()]
        ld_e, ld_c = max(div, key=lambda t: monomial_key(t[0]))
        ld_inv = 1 / ld_c
        quot = {}
        while rem:
            er = max(rem, key=monomial_key)
            diff = tuple(x - y for x, y in zip(er, ld_e))
            if any(x < 0 for x in diff):
                return None
            c = rem[er] * ld_inv
            quot[diff] = c
            for e, cd in div:
                k = tuple(x + y for x, y in zip(e, diff))
                s = rem.get(k, 0) - c * cd
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        shift = [a - b for a, b in zip(sf, sd)]
        out = {tuple(x + s for x, s in zip(e, shift)): c for e, c in quot.items()}
        if any(x < 0 and not lm for e in out for x, lm in zip(e, mask)):
            return None
        return Poly(self.ring, out)

    # -- substitution ------------------------------------------------------

    def substitute(self, images: Sequence, ring: PolyRing | None = None):
        """Substitute ``images[i]`` for generator ``i``; ``None`` keeps the generator.

        Images may be scalars, Polys or RationalFunctions of ``ring``.  The
        result is a Poly unless a RationalFunction image or a non-unit under
        a negative exponent forces a fraction.
        """
        from .ratfun import RationalFunction

        target = ring or self.ring
        imgs = []
        for i in range(self.ring.ngens):
            img = images[i] if i < len(images) else None
            if img is None:
                if ring is not None and ring is not self.ring:
                    img = target.gen(self.ring.names[i])
                else:
                    img = target.gen(i)
            elif isinstance(img, RationalFunction):
                if img.den.is_unit():
                    img = img.num * img.den.unit_inverse()
            elif not isinstance(img, Poly):
                img = target.constant(img)
            imgs.append(img)
        cache: dict = {}

        def pw(i, k):
            key = (i, k)
            if key not in cache:
                base = imgs[i]
                if k >= 0:
                    cache[key] = base ** k
                elif isinstance(base, Poly):
                    if base.is_zero:
                        raise LaurentError(f"negative power of zero substituted for {self.ring.names[i]}")
                    if base.is_unit():
                        cache[key] = base.unit_inverse() ** (-k)
                    else:
                        cache[key] = RationalFunction(target, target.one, base ** (-k))
                else:
                    cache[key] = base ** k
            return cache[key]

        result = target.zero
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = pw(i, k) * t
            if not isinstance(t, (Poly, RationalFunction)):
                t = target.constant(t)
            result = result + t
        return result

    def evaluate(self, point: Sequence):
        """Evaluate at a point given for the user variables; parameters stay symbolic."""
        if len(point) != self.ring.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables")
        return self.substitute(list(point))

    def map_to(self, ring: PolyRing, positions: Sequence[int]) -> "Poly":
        """Re-embed into ``ring`` sending generator ``i`` to generator ``positions[i]``."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * ring.ngens
            for i, k in enumerate(e):
                ne[positions[i]] += k
            out[tuple(ne)] = c
        return Poly(ring, out)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyclo)):
            if not other:
                return not self.terms
            return self.is_constant() and bool(self.terms) and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _fmt_monomial(names, e) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    if f.is_zero:
        return "0"
    out = ""
    for idx, (e, c) in enumerate(f.sorted_terms()):
        mono = _fmt_monomial(f.ring.names, e)
        if isinstance(c, Cyclo):
            sign, body = "+", f"({format_cyclo(c)})" + (f"*{mono}" if mono else "")
        else:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            else:
                body = format_cyclo(mag) + (f"*{mono}" if mono else "")
        if idx == 0:
            out = ("-" if sign == "-" else "") + body
        else:
            out += f" {sign} {body}"
    return out
