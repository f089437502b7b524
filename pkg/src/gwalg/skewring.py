"""The skew group ring L * Z^n over L = Frac(D), with its evaluation map,
reflection-group action, Reynolds averaging and lattice generation checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .autos import Automorphism, LatticeAction, ReflectionGroupElement
from .scalars import Cyclo, Poly, PolyRing, RationalFunction, monomial_key


class Inconclusive(Exception):
    """A bounded search ended without a proof either way."""


class SkewContext:
    """Coefficient ring plus the commuting automorphisms attached to ``e_1..e_n``."""

    def __init__(self, ring: PolyRing, sigma: Sequence[Automorphism], name: str | None = None):
        self.ring = ring
        self.sigma = tuple(sigma)
        self.name = name
        self.action = LatticeAction(self.sigma)

    @property
    def rank(self) -> int:
        return len(self.sigma)

    def __eq__(self, other):
        if not isinstance(other, SkewContext):
            return NotImplemented
        return self is other or (self.ring == other.ring and self.sigma == other.sigma)

    def __hash__(self):
        return hash((self.ring, self.sigma))

    def coeff(self, x) -> RationalFunction:
        if isinstance(x, str):
            x = self.ring.parse(x)
        return RationalFunction.of(self.ring, x)

    def element(self, terms: dict) -> "SkewElement":
        return SkewElement(self, {tuple(k): self.coeff(v) for k, v in terms.items()})

    def e(self, *alpha, coeff=1) -> "SkewElement":
        if len(alpha) == 1 and not isinstance(alpha[0], int):
            alpha = tuple(alpha[0])
        if len(alpha) != self.rank:
            raise ValueError(f"lattice element {alpha} has wrong length")
        return self.element({alpha: coeff})

    def basis(self, i: int, power: int = 1) -> "SkewElement":
        alpha = [0] * self.rank
        alpha[i] = power
        return self.e(tuple(alpha))

    @property
    def zero(self) -> "SkewElement":
        return SkewElement(self, {})

    @property
    def one(self) -> "SkewElement":
        return self.e((0,) * self.rank)

    def twist(self, alpha, f: RationalFunction) -> RationalFunction:
        return self.action.apply(alpha, f)


class SkewElement:
    """Finite sum ``sum alpha_m e^m`` with ``(a e^m)(b e^m') = a m(b) e^(m+m')``."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SkewContext, terms: dict):
        self.ctx = ctx
        self.terms = {k: v for k, v in terms.items() if not v.is_zero}

    def _lift(self, other):
        if isinstance(other, SkewElement):
            if other.ctx != self.ctx:
                raise ValueError("skew elements from different contexts")
            return other
        if isinstance(other, (int, Fraction, Cyclo, Poly, RationalFunction)):
            return SkewElement(self.ctx, {(0,) * self.ctx.rank: RationalFunction.of(self.ctx.ring, other)})
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return SkewElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewElement(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return SkewElement(self.ctx, {k: v * other for k, v in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, a in self.terms.items():
            for m2, b in o.terms.items():
                k = tuple(x + y for x, y in zip(m1, m2))
                c = a * self.ctx.twist(m1, b)
                out[k] = out[k] + c if k in out else c
        return SkewElement(self.ctx, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self * other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self * (1 / Fraction(other) if not isinstance(other, Cyclo) else 1 / other)
        return NotImplemented

    def __pow__(self, k: int):
        result = self.ctx.one
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if set(self.terms) != set(o.terms):
            return False
        return all(self.terms[k] == o.terms[k] for k in self.terms)

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> set[tuple[int, ...]]:
        return set(self.terms)

    def coefficient(self, alpha) -> RationalFunction:
        return self.terms.get(tuple(alpha), RationalFunction(self.ctx.ring, self.ctx.ring.zero))

    def evaluate(self, f):
        """The evaluation map ``u(f) = sum alpha_m m(f)``."""
        f = self.ctx.coeff(f)
        total = RationalFunction(self.ctx.ring, self.ctx.ring.zero)
        for m, a in self.terms.items():
            total = total + a * self.ctx.twist(m, f)
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def __repr__(self):
        return f"SkewElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, a in self.sorted_terms():
            key = "e(" + ",".join(str(x) for x in m) + ")"
            c = str(a)
            if len(a.num.terms) > 1 and a.den == 1:
                c = f"({c})"
            parts.append(f"{c} * {key}")
        return " + ".join(parts)


def skew_mul(u: SkewElement, v: SkewElement) -> SkewElement:
    return u * v


def support(u: SkewElement) -> set[tuple[int, ...]]:
    return u.support()


def evaluate(u: SkewElement, f):
    return u.evaluate(f)


def group_act(g: ReflectionGroupElement, u: SkewElement) -> SkewElement:
    """Permutations act on coefficients and lattice keys; diagonal parts act trivially."""
    if g.n != u.ctx.rank:
        raise ValueError(f"group of rank {g.n} acting on a rank-{u.ctx.rank} skew ring")
    return SkewElement(u.ctx, {g.permute_lattice(m): g.permute_poly(a) for m, a in u.terms.items()})


def reynolds(group: Sequence[ReflectionGroupElement], u: SkewElement) -> SkewElement:
    total = u.ctx.zero
    for g in group:
        total = total + group_act(g, u)
    return total / len(group)


def is_invariant(group: Iterable[ReflectionGroupElement], u: SkewElement) -> bool:
    return all(group_act(g, u) == u for g in group)


# -- lattice membership -------------------------------------------------------


@dataclass(frozen=True)
class LatticeSubmonoidSpec:
    generators: tuple[tuple[int, ...], ...]
    mode: str = "group"

    def __post_init__(self):
        if self.mode not in ("group", "monoid"):
            raise ValueError(f"mode must be 'group' or 'monoid', not {self.mode!r}")
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if len({len(g) for g in gens}) > 1:
            raise ValueError("generators have different lengths")
        object.__setattr__(self, "generators", gens)


def lattice_echelon(generators: Iterable[Sequence[int]], dim: int | None = None) -> list[list[int]]:
    """Integer row-echelon basis (pivots positive, increasing columns) of the span."""
    rows = [list(g) for g in generators if any(g)]
    if not rows:
        return []
    dim = dim if dim is not None else len(rows[0])
    basis = []
    for col in range(dim):
        while True:
            nz = [r for r in rows if r[col]]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            rest = []
            clean = True
            for r in rows:
                if r is piv:
                    continue
                if r[col]:
                    q = r[col] // piv[col]
                    r = [a - q * b for a, b in zip(r, piv)]
                    clean = clean and not r[col]
                if any(r):
                    rest.append(r)
            if clean:
                basis.append(piv if piv[col] > 0 else [-x for x in piv])
                rows = rest
                break
            rows = rest + [piv]
    return basis


def in_lattice(basis: list[list[int]], v: Sequence[int]) -> bool:
    v = list(v)
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def _pointed_functional(gens, dim):
    """A sign vector strictly positive on every nonzero generator, if one exists."""
    for w in itertools.product((1, 0, -1), repeat=dim):
        if any(w) and all(sum(a * b for a, b in zip(w, g)) > 0 for g in gens):
            return w
    return None


def _separating_functional(gens, v, dim):
    """A small integer vector nonnegative on every generator and negative on ``v``.

    Its existence proves ``v`` lies outside the monoid (Farkas certificate).
    """
    span = range(-2, 3) if dim <= 4 else range(-1, 2)
    for w in itertools.product(span, repeat=dim):
        if sum(a * b for a, b in zip(w, v)) < 0 and all(sum(a * b for a, b in zip(w, g)) >= 0 for g in gens):
            return w
    return None


def membership(spec: LatticeSubmonoidSpec, v: Sequence[int], bound: int = 16) -> bool:
    """Is ``v`` in the group (or monoid) generated by ``spec.generators``?

    Group mode is exact.  Monoid mode first looks for a separating functional,
    then searches sums of at most ``bound`` generators, and raises
    :class:`Inconclusive` when it can neither find ``v`` nor rule it out.
    """
    v = tuple(v)
    gens = [g for g in spec.generators if any(g)]
    if not any(v):
        return True
    if not gens:
        return False
    dim = len(v)
    if any(len(g) != dim for g in gens):
        raise ValueError("dimension mismatch")
    if not in_lattice(lattice_echelon(gens, dim), v):
        return False
    if spec.mode == "group":
        return True
    if _separating_functional(gens, v, dim) is not None:
        return False
    w = _pointed_functional(gens, dim)
    limit = bound
    if w is not None:
        wv = sum(a * b for a, b in zip(w, v))
        if wv <= 0:
            return False
        limit = wv // min(sum(a * b for a, b in zip(w, g)) for g in gens)
    seen = {tuple([0] * dim)}
    frontier = list(seen)
    for _ in range(min(limit, bound)):
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(a + b for a, b in zip(x, g))
                if y == v:
                    return True
                if y not in seen:
                    if w is not None and sum(a * b for a, b in zip(w, y)) > wv:
                        continue
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    if w is not None and limit <= bound:
        return False
    raise Inconclusive(f"{v} not reached within {bound} monoid steps")


def generates(elements: Sequence[SkewElement], spec: LatticeSubmonoidSpec, bound: int = 16) -> bool:
    """Do the supports of ``elements`` generate the same lattice object as ``spec``?"""
    supp = sorted({m for u in elements for m in u.support()})
    from_supports = LatticeSubmonoidSpec(tuple(supp) or ((0,) * len(spec.generators[0]),), spec.mode)
    return all(membership(from_supports, g, bound) for g in spec.generators) and all(
        membership(spec, m, bound) for m in supp
    )
