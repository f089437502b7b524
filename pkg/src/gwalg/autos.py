"""Automorphisms of the defining algebra, the lattice of sigma-words, and the
imprimitive reflection groups G(m, p, n)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .scalars import LaurentError, Poly, PolyRing, RationalFunction


class AutomorphismError(ValueError):
    pass


class Automorphism:
    """Substitution automorphism ``h_j -> forward[j]`` with explicit inverse.

    Parameters of the scalar field are fixed.  Application to a Poly is the
    ring homomorphism ``f(h) -> f(forward(h))``; composition follows function
    composition, ``(phi * psi)(f) == phi(psi(f))``.
    """

    _cache_limit = 50_000

    def __init__(self, ring: PolyRing, forward: Sequence, inverse: Sequence, name: str | None = None, check: bool = True):
        if len(forward) != ring.nvars or len(inverse) != ring.nvars:
            raise AutomorphismError(f"need {ring.nvars} images, got {len(forward)} / {len(inverse)}")
        self.ring = ring
        self.forward = tuple(ring.coerce(f) for f in forward)
        self.inverse_images = tuple(ring.coerce(f) for f in inverse)
        self.name = name
        self._cache: dict = {}
        self._hash = None
        if check:
            self._check_inverse()

    def _check_inverse(self):
        gens = self.ring.gens()
        for j, h in enumerate(gens):
            there = self.forward[j].substitute(list(self.inverse_images))
            back = self.inverse_images[j].substitute(list(self.forward))
            if there != h or back != h:
                raise AutomorphismError(
                    f"inverse check failed on {self.ring.names[j]}: got {there} and {back}"
                )

    @classmethod
    def identity(cls, ring: PolyRing) -> "Automorphism":
        gens = ring.gens()
        return cls(ring, gens, gens, name="id", check=False)

    @property
    def is_identity(self) -> bool:
        return all(f == h for f, h in zip(self.forward, self.ring.gens()))

    def __call__(self, f):
        return self.apply(f)

    def apply(self, f):
        if isinstance(f, RationalFunction):
            return RationalFunction(self.ring, self.apply(f.num), self.apply(f.den))
        if not isinstance(f, Poly):
            f = self.ring.coerce(f)
        if f.is_constant():
            return f
        out = self._cache.get(f)
        if out is None:
            out = f.substitute(list(self.forward))
            if isinstance(out, RationalFunction):
                p = out.as_poly()
                if p is None:
                    raise LaurentError(f"substituting a non-unit for a Laurent variable in {f}")
                out = p
            if len(self._cache) > self._cache_limit:
                self._cache.clear()
            self._cache[f] = out
        return out

    def inverse(self) -> "Automorphism":
        name = None if self.name is None else f"{self.name}^-1"
        return Automorphism(self.ring, self.inverse_images, self.forward, name=name, check=False)

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        if other.ring != self.ring:
            raise AutomorphismError("automorphisms of different rings")
        fwd = [self.apply(g) for g in other.forward]
        inv = [other.inverse().apply(g) for g in self.inverse_images]
        return Automorphism(self.ring, fwd, inv, check=False)

    def __pow__(self, k: int) -> "Automorphism":
        base = self if k >= 0 else self.inverse()
        result = Automorphism.identity(self.ring)
        for _ in range(abs(k)):
            result = base * result
        return result

    def commutes_with(self, other: "Automorphism") -> bool:
        return all(self.apply(other.apply(h)) == other.apply(self.apply(h)) for h in self.ring.gens())

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.ring == other.ring and self.forward == other.forward

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.forward)
        return self._hash

    def describe(self) -> str:
        return ", ".join(f"{v} -> {f}" for v, f in zip(self.ring.variables, self.forward))

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"Automorphism({label}{self.describe()})"


def auto_apply(phi: Automorphism, f):
    return phi.apply(f)


# -- catalog of automorphisms -------------------------------------------------


def _images(ring: PolyRing, i: int, fwd, inv):
    gens = ring.gens()
    forward = list(gens)
    inverse = list(gens)
    forward[i] = fwd
    inverse[i] = inv
    return forward, inverse


def shift(ring: PolyRing, i: int, step=1) -> Automorphism:
    """``h_i -> h_i - step``."""
    h = ring.gen(i)
    return Automorphism(ring, *_images(ring, i, h - step, h + step), name=f"shift_{ring.variables[i]}")


def q_scale(ring: PolyRing, i: int, q: str = "q") -> Automorphism:
    """``h_i -> q h_i``."""
    h, qq = ring.gen(i), ring.param(q)
    return Automorphism(ring, *_images(ring, i, qq * h, qq ** -1 * h), name=f"q_scale_{ring.variables[i]}")


def q_weyl(ring: PolyRing, i: int, q: str = "q") -> Automorphism:
    """``h_i -> q^-1 (h_i - 1)``, inverse ``h_i -> q h_i + 1``."""
    h, qq = ring.gen(i), ring.param(q)
    return Automorphism(ring, *_images(ring, i, qq ** -1 * (h - 1), qq * h + 1), name=f"q_weyl_{ring.variables[i]}")


def nagata(ring: PolyRing, x: int = 0, y: int = 1, z: int = 2) -> Automorphism:
    """The Nagata automorphism of k[x, y, z] on the given variable positions."""
    X, Y, Z = ring.gen(x), ring.gen(y), ring.gen(z)
    w = X * Z + Y * Y
    gens = ring.gens()
    forward, inverse = list(gens), list(gens)
    forward[x] = X - 2 * Y * w - Z * w * w
    forward[y] = Y + Z * w
    inverse[x] = X + 2 * Y * w - Z * w * w
    inverse[y] = Y - Z * w
    return Automorphism(ring, forward, inverse, name="nagata")


AUTOMORPHISM_CATALOG = {
    "shift": shift,
    "q_scale": q_scale,
    "q_weyl": q_weyl,
    "nagata": nagata,
}


# -- the lattice Z^n of sigma-words -------------------------------------------


def check_commuting(generators: Sequence[Automorphism]):
    for i, j in itertools.combinations(range(len(generators)), 2):
        if not generators[i].commutes_with(generators[j]):
            raise AutomorphismError(f"generators {i + 1} and {j + 1} do not commute")


def lattice_to_auto(alpha: Sequence[int], generators: Sequence[Automorphism], check: bool = True) -> Automorphism:
    """The automorphism ``prod sigma_i^alpha_i``."""
    if len(alpha) != len(generators):
        raise ValueError("lattice element and generator list differ in length")
    if not generators:
        raise ValueError("need at least one generator")
    if check:
        check_commuting(generators)
    result = Automorphism.identity(generators[0].ring)
    for a, g in zip(alpha, generators):
        if a:
            result = (g ** a) * result
    return result


class LatticeAction:
    """Cached action of Z^n on a ring through commuting automorphisms."""

    def __init__(self, generators: Sequence[Automorphism], check: bool = True):
        self.generators = tuple(generators)
        if check:
            check_commuting(self.generators)
        self._autos: dict = {}

    @property
    def rank(self) -> int:
        return len(self.generators)

    def auto(self, alpha) -> Automorphism:
        alpha = tuple(alpha)
        out = self._autos.get(alpha)
        if out is None:
            if not any(alpha):
                out = Automorphism.identity(self.generators[0].ring)
            else:
                # build from a neighbour to reuse cached work
                i = next(k for k, a in enumerate(alpha) if a)
                step = 1 if alpha[i] > 0 else -1
                prev = list(alpha)
                prev[i] -= step
                g = self.generators[i] if step > 0 else self.generators[i].inverse()
                out = g * self.auto(prev)
            self._autos[alpha] = out
        return out

    def apply(self, alpha, f):
        if not any(alpha):
            return f
        return self.auto(alpha).apply(f)


def act_on_point(phi: Automorphism, point: Sequence) -> tuple:
    """Point of the maximal ideal ``phi(m)`` given the point of ``m``.

    Coordinate j is ``phi^-1(h_j)`` evaluated at ``point``.
    """
    return tuple(normalize_coordinate(g.evaluate(tuple(point))) for g in phi.inverse_images)


def normalize_coordinate(x):
    if isinstance(x, RationalFunction):
        if x.den == 1:
            return x.num
    return x


# -- G(m, p, n) ---------------------------------------------------------------


@dataclass(frozen=True)
class ReflectionGroupElement:
    """``(c, pi)`` acting by ``X_i -> xi^{c_pi(i)} X_pi(i)``; ``perm[i]`` is ``pi(i)`` (0-based)."""

    m: int
    diag: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(c % self.m for c in self.diag))
        object.__setattr__(self, "perm", tuple(self.perm))
        if sorted(self.perm) != list(range(len(self.perm))) or len(self.diag) != len(self.perm):
            raise ValueError(f"invalid group element {self.diag}, {self.perm}")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, m: int, n: int) -> "ReflectionGroupElement":
        return cls(m, (0,) * n, tuple(range(n)))

    @classmethod
    def transposition(cls, m: int, n: int, i: int, j: int) -> "ReflectionGroupElement":
        perm = list(range(n))
        perm[i], perm[j] = j, i
        return cls(m, (0,) * n, tuple(perm))

    @classmethod
    def diagonal(cls, m: int, diag: Sequence[int]) -> "ReflectionGroupElement":
        return cls(m, tuple(diag), tuple(range(len(diag))))

    def __mul__(self, other: "ReflectionGroupElement") -> "ReflectionGroupElement":
        if other.m != self.m or other.n != self.n:
            raise ValueError("elements of different groups")
        inv = self.inverse_perm()
        diag = tuple(self.diag[k] + other.diag[inv[k]] for k in range(self.n))
        perm = tuple(self.perm[other.perm[i]] for i in range(self.n))
        return ReflectionGroupElement(self.m, diag, perm)

    def inverse_perm(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for i, j in enumerate(self.perm):
            inv[j] = i
        return tuple(inv)

    def inverse(self) -> "ReflectionGroupElement":
        return ReflectionGroupElement(self.m, tuple(-self.diag[self.perm[j]] for j in range(self.n)), self.inverse_perm())

    def is_identity(self) -> bool:
        return not any(self.diag) and self.perm == tuple(range(self.n))

    def in_gmpn(self, p: int) -> bool:
        return (sum(self.diag) * (self.m // p)) % self.m == 0

    def sign(self) -> int:
        seen, sgn = set(), 1
        for start in range(self.n):
            if start in seen:
                continue
            length, j = 0, start
            while j not in seen:
                seen.add(j)
                j = self.perm[j]
                length += 1
            if length % 2 == 0:
                sgn = -sgn
        return sgn

    def permute_lattice(self, alpha: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.n
        for i, a in enumerate(alpha):
            out[self.perm[i]] = a
        return tuple(out)

    def permute_poly(self, f):
        """``h_i -> h_pi(i)``, acting blockwise when the ring has ``n * b`` variables."""
        if isinstance(f, RationalFunction):
            return RationalFunction(f.ring, self.permute_poly(f.num), self.permute_poly(f.den))
        ring = f.ring
        if self.perm == tuple(range(self.n)) or f.is_constant():
            return f
        if ring.nvars % self.n:
            raise ValueError(f"{ring.nvars} variables cannot be split into {self.n} blocks")
        b = ring.nvars // self.n
        positions = [self.perm[i // b] * b + i % b for i in range(ring.nvars)]
        positions += list(range(ring.nvars, ring.ngens))
        return f.map_to(ring, positions)


class GroupTooLarge(ValueError):
    pass


def _check_mpn(m: int, p: int, n: int):
    if m < 1 or p < 1 or n < 1:
        raise ValueError("m, p, n must be positive")
    if m % p:
        raise ValueError(f"p={p} does not divide m={m}")


def group_order(m: int, p: int, n: int) -> int:
    _check_mpn(m, p, n)
    return m ** n * factorial(n) // p


def group_elements(m: int, p: int, n: int, bound: int = 100_000) -> list[ReflectionGroupElement]:
    """All elements of G(m, p, n), identity first."""
    size = group_order(m, p, n)
    if size > bound:
        raise GroupTooLarge(f"|G({m},{p},{n})| = {size} exceeds the enumeration bound {bound}")
    out = []
    for perm in itertools.permutations(range(n)):
        for diag in itertools.product(range(m), repeat=n):
            if sum(diag) % p == 0:
                out.append(ReflectionGroupElement(m, diag, perm))
    return out


def group_generators(m: int, p: int, n: int) -> list[ReflectionGroupElement]:
    """A generating set: adjacent transpositions and two diagonal elements."""
    _check_mpn(m, p, n)
    gens = [ReflectionGroupElement.transposition(m, n, i, i + 1) for i in range(n - 1)]
    if p % m:
        gens.append(ReflectionGroupElement.diagonal(m, (p,) + (0,) * (n - 1)))
    if n >= 2 and m > 1:
        gens.append(ReflectionGroupElement.diagonal(m, (1, m - 1) + (0,) * (n - 2)))
    if not gens:
        gens.append(ReflectionGroupElement.identity(m, n))
    return gens


def closure(generators: Sequence[ReflectionGroupElement], bound: int = 100_000) -> list[ReflectionGroupElement]:
    """The group generated by ``generators`` by breadth-first multiplication."""
    ident = ReflectionGroupElement.identity(generators[0].m, generators[0].n)
    seen = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = s * g
                if h not in seen:
                    seen[h] = None
                    nxt.append(h)
                    if len(seen) > bound:
                        raise GroupTooLarge("closure exceeds bound")
        frontier = nxt
    return list(seen)


def symmetric_group(n: int) -> list[ReflectionGroupElement]:
    return group_elements(1, 1, n)
