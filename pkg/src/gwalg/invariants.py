"""Reflection-group actions on D_n(a, sigma), invariant generators and their
skew images, the G(m,p,n) eigenspace decomposition, and principal / rational
Galois-order checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .autos import ReflectionGroupElement, group_elements, group_generators
from .gwa import GWA, GWAElement, gwa_embed
from .scalars import Poly, PolyRing
from .skewring import (
    LatticeSubmonoidSpec,
    SkewContext,
    SkewElement,
    generates,
    is_invariant,
    reynolds,
)


class NotInvariant(ValueError):
    pass


def _xi(field, m: int, k: int):
    if m == 1 or k % m == 0:
        return 1
    return field.root_of_unity(m, k)


def gwa_act(g: ReflectionGroupElement, u: GWAElement) -> GWAElement:
    """``h_i -> h_pi(i)``, ``X_i -> xi^c X_i``, ``Y_i -> xi^-c Y_i`` (permutation first)."""
    alg = u.alg
    if g.n != alg.rank:
        raise ValueError(f"group of rank {g.n} acting on a rank-{alg.rank} algebra")
    fld = alg.ring.field
    out = {}
    for alpha, d in u.terms.items():
        k = sum(g.diag[g.perm[i]] * a for i, a in enumerate(alpha))
        out[g.permute_lattice(alpha)] = g.permute_poly(d) * _xi(fld, g.m, k)
    return GWAElement(alg, out)


def transported_act(g: ReflectionGroupElement, w: SkewElement) -> SkewElement:
    """The action of ``g`` carried to the skew ring through ``X_i -> e_i``."""
    fld = w.ctx.ring.field
    out = {}
    for alpha, c in w.terms.items():
        k = sum(g.diag[g.perm[i]] * a for i, a in enumerate(alpha))
        out[g.permute_lattice(alpha)] = g.permute_poly(c) * _xi(fld, g.m, k)
    return SkewElement(w.ctx, out)


def gwa_is_invariant(group: Sequence[ReflectionGroupElement], u: GWAElement) -> bool:
    return all(gwa_act(g, u) == u for g in group)


def gwa_reynolds(group: Sequence[ReflectionGroupElement], u: GWAElement) -> GWAElement:
    total = u.alg.zero
    for g in group:
        total = total + gwa_act(g, u)
    return total * Fraction(1, len(group))


# -- cyclic invariants ----------------------------------------------------------


@dataclass
class CyclicInvariant:
    parent: GWA
    child: GWA
    m: int

    @property
    def images(self) -> dict:
        """Parent elements that the child generators X', Y' stand for."""
        return {"X": self.parent.X(0, self.m), "Y": self.parent.Y(0, self.m)}

    def to_parent(self, w: GWAElement) -> GWAElement:
        """``d X'^k -> d X^(mk)``, ``d Y'^k -> d Y^(mk)``."""
        return GWAElement(self.parent, {(a * self.m,): d for (a,), d in w.terms.items()})


def cyclic_invariant_gwa(p: GWA, m: int) -> CyclicInvariant:
    """D(a, sigma)^{G_m} as D(a_m, sigma^m), checked against the parent relations."""
    if p.rank != 1:
        raise ValueError("cyclic invariants are defined for rank-one presentations")
    if m < 1:
        raise ValueError("m must be positive")
    s = p.sigma[0]
    a_m = p.ring.one
    s_inv = s.inverse()
    step = p.a[0]
    for _ in range(m):
        a_m = a_m * step
        step = s_inv.apply(step)
    child = GWA(p.ring, [a_m], [s ** m], name=f"{p.name or 'gwa'}^G{m}",
                independent=p.sigma_independent())
    X, Y = p.X(0, m), p.Y(0, m)
    if Y * X != p.scalar(a_m):
        raise ArithmeticError("Y^m X^m does not reduce to a_m")
    if X * Y != p.scalar(child.sigma[0].apply(a_m)):
        raise ArithmeticError("X^m Y^m does not reduce to sigma^m(a_m)")
    return CyclicInvariant(p, child, m)


# -- invariant generators ----------------------------------------------------------


def elementary_symmetric(ring: PolyRing, n: int | None = None) -> list[Poly]:
    n = ring.nvars if n is None else n
    h = ring.gens()[:n]
    out = []
    for k in range(1, n + 1):
        total = ring.zero
        for combo in itertools.combinations(h, k):
            t = ring.one
            for x in combo:
                t = t * x
            total = total + t
        out.append(total)
    return out


def lattice_spec(m: int, p_div: int, n: int, mode: str = "group") -> LatticeSubmonoidSpec:
    """``<m e_1, ..., m e_n, (m/p)(e_1 + ... + e_n)>``."""
    gens = [tuple(m if j == i else 0 for j in range(n)) for i in range(n)]
    gens.append((m // p_div,) * n)
    return LatticeSubmonoidSpec(tuple(gens), mode)


@dataclass
class InvariantGeneratorSet:
    alg: GWA
    m: int
    p_div: int
    labels: list[str]
    gwa_side: list[GWAElement]
    expected_images: list[SkewElement]
    gamma: list[Poly]
    spec: LatticeSubmonoidSpec
    group_generators: list[ReflectionGroupElement] = field(repr=False)

    def images(self) -> list[SkewElement]:
        return [gwa_embed(u) for u in self.gwa_side]

    def invariance_failures(self) -> list[str]:
        return [lab for lab, u in zip(self.labels, self.gwa_side) if not gwa_is_invariant(self.group_generators, u)]

    def image_mismatches(self) -> list[str]:
        return [lab for lab, u, img in zip(self.labels, self.gwa_side, self.expected_images) if gwa_embed(u) != img]

    def supports_generate(self, bound: int = 16) -> bool:
        return generates(self.images(), self.spec, bound)


def invariant_generators(alg: GWA, m: int, p_div: int, mode: str = "group") -> InvariantGeneratorSet:
    """S_n-symmetrized generators of D_n(a, sigma)^{G(m,p,n)} over the symmetric part of D."""
    if m % p_div:
        raise ValueError(f"p={p_div} does not divide m={m}")
    n = alg.rank
    if alg.ring.nvars != n:
        raise ValueError("expected one variable per tensor factor")
    ring = alg.ring
    ctx = alg.skew_context()
    labels, gwa_side, images = [], [], []

    labels.append(f"sum X_i^{m}")
    gwa_side.append(sum((alg.X(i, m) for i in range(n)), alg.zero))
    images.append(sum((ctx.basis(i, m) for i in range(n)), ctx.zero))

    labels.append(f"sum Y_i^{m}")
    gwa_side.append(sum((alg.Y(i, m) for i in range(n)), alg.zero))
    # a_im = a_i sigma_i^-1(a_i) ... sigma_i^-(m-1)(a_i), straight from the automorphisms
    img = ctx.zero
    for i in range(n):
        a_im, step, back = ring.one, alg.a[i], alg.sigma[i].inverse()
        for _ in range(m):
            a_im = a_im * step
            step = back.apply(step)
        img = img + (ctx.one * a_im) * ctx.basis(i, -m)
    images.append(img)

    if p_div > 1:
        s = m // p_div
        labels.append(f"(X_1...X_n)^{s}")
        gwa_side.append(alg.word((s,) * n))
        images.append(ctx.e((s,) * n))

    gamma = elementary_symmetric(ring, n)
    for k, g in enumerate(gamma, start=1):
        labels.append(f"e_{k}(h)")
        gwa_side.append(alg.scalar(g))
        images.append(ctx.one * g)

    return InvariantGeneratorSet(
        alg, m, p_div, labels, gwa_side, images, gamma, lattice_spec(m, p_div, n, mode),
        group_generators(m, p_div, n),
    )


# -- G(m,p,n) decomposition ------------------------------------------------------


@dataclass
class Component:
    k: int
    part: GWAElement
    cofactor: GWAElement | SkewElement
    cofactor_in_gwa: bool


def xi_element(m: int, n: int) -> ReflectionGroupElement:
    """Representative of a generator of G(m,1,n)/G(m,p,n): diag(1, 0, ..., 0)."""
    return ReflectionGroupElement.diagonal(m, (1,) + (0,) * (n - 1))


def decomposition_check(u: GWAElement, m: int, p_div: int) -> list[Component]:
    """Split a G(m,p,n)-invariant into eigencomponents of the Xi operator.

    Component ``k`` has eigenvalue ``xi^(k m/p)`` and is written as
    ``(X_1...X_n)^(k m/p) * w`` with ``w`` fixed by G(m,1,n).  The cofactor is
    a GWA element when the left division is exact in D, otherwise it lives in
    Frac(D) * Z^n.
    """
    alg = u.alg
    n = alg.rank
    if m % p_div:
        raise ValueError(f"p={p_div} does not divide m={m}")
    gens = group_generators(m, p_div, n)
    if not gwa_is_invariant(gens, u):
        raise NotInvariant("element is not fixed by G(m,p,n)")
    step = m // p_div
    parts: dict[int, dict] = {}
    for alpha, d in u.terms.items():
        r = alpha[0] % m
        if r % step:
            raise NotInvariant(f"term {alpha} is not in any eigenspace")
        parts.setdefault(r // step, {})[alpha] = d
    full_gens = group_generators(m, 1, n)
    out = []
    for k in sorted(parts):
        part = GWAElement(alg, parts[k])
        s = k * step
        cof = _left_cofactor(alg, part, s)
        if cof is not None:
            if alg.word((s,) * n) * cof != part:
                raise ArithmeticError("cofactor does not reproduce the component")
            if not gwa_is_invariant(full_gens, cof):
                raise ArithmeticError(f"cofactor of component {k} is not G(m,1,n)-invariant")
            out.append(Component(k, part, cof, True))
        else:
            ctx = alg.skew_context()
            img = gwa_embed(part)
            w = ctx.e((-s,) * n) * img
            if ctx.e((s,) * n) * w != img:
                raise ArithmeticError("skew cofactor does not reproduce the component")
            if not all(transported_act(g, w) == w for g in full_gens):
                raise ArithmeticError(f"cofactor of component {k} is not G(m,1,n)-invariant")
            out.append(Component(k, part, w, False))
    return out


def _left_cofactor(alg: GWA, part: GWAElement, s: int) -> GWAElement | None:
    back = (-s,) * alg.rank
    terms = {}
    for alpha, d in part.terms.items():
        beta = tuple(a - s for a in alpha)
        c = alg.ring.one
        for i, b in enumerate(beta):
            c = c * alg.word_coefficient(i, s, b)
        q = d.exact_div(c)
        if q is None:
            return None
        terms[beta] = alg.action.apply(back, q)
    return GWAElement(alg, terms)


def xi_eigenvalue(alg: GWA, m: int, p_div: int, k: int):
    return _xi(alg.ring.field, m, k * (m // p_div))


def spectral_projection(u: GWAElement, m: int, p_div: int, k: int) -> GWAElement:
    """``(1/p) sum_j lambda_k^-j Xi^j u``, the projection onto eigenvalue ``lambda_k``."""
    xi = xi_element(m, u.alg.rank)
    lam_inv = xi_eigenvalue(u.alg, m, p_div, -k)
    total, cur, w = u.alg.zero, u, 1
    for _ in range(p_div):
        total = total + cur * w
        cur = gwa_act(xi, cur)
        w = w * lam_inv
    return total * Fraction(1, p_div)


def xi_polynomial(u: GWAElement, m: int, p_div: int, exclude: int | None = None) -> GWAElement:
    """``prod_{i != exclude} (Xi - lambda_i) u`` over the p eigenvalues ``lambda_i``."""
    xi = xi_element(m, u.alg.rank)
    cur = u
    for i in range(p_div):
        if i == exclude:
            continue
        cur = gwa_act(xi, cur) - cur * xi_eigenvalue(u.alg, m, p_div, i)
    return cur


# -- Galois-order checks ---------------------------------------------------------------


@dataclass
class PrincipalReport:
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def principal_check(gens: Sequence[SkewElement], gamma_samples: Sequence, group: Sequence[ReflectionGroupElement]) -> PrincipalReport:
    """Check ``u(gamma)`` is a G-invariant polynomial for every generator and sample."""
    report = PrincipalReport()
    for idx, u in enumerate(gens):
        for gamma in gamma_samples:
            report.checked += 1
            value = u.evaluate(gamma)
            poly = value.polynomial_in_variables()
            if poly is None:
                report.counterexamples.append((idx, str(gamma), str(value), "not a polynomial"))
                continue
            bad = next((g for g in group if g.permute_poly(poly) != poly), None)
            if bad is not None:
                report.counterexamples.append((idx, str(gamma), str(value), f"not fixed by {bad.perm}"))
    return report


def rational_witness_check(x: SkewElement, d_chi: Poly, group: Sequence[ReflectionGroupElement]) -> bool:
    """``x`` is G-invariant and ``d_chi * x`` has polynomial coefficients."""
    if d_chi.is_zero:
        raise ValueError("d_chi must be nonzero")
    if not is_invariant(group, x):
        return False
    y = x.ctx.one * d_chi * x
    return all(c.polynomial_in_variables() is not None for c in y.terms.values())


def dchi_sign_sn(n: int, ring: PolyRing | None = None) -> Poly:
    """Vandermonde product ``prod_{i<j} (h_i - h_j)``, checked to be anti-invariant."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if ring is None:
        from .scalars import ScalarField

        ring = PolyRing(ScalarField(), tuple(f"h{i + 1}" for i in range(n)))
    h = ring.gens()
    d = ring.one
    for i in range(n):
        for j in range(i + 1, n):
            d = d * (h[i] - h[j])
    for i in range(n - 1):
        tau = ReflectionGroupElement.transposition(1, n, i, i + 1)
        if tau.permute_poly(d) != -d:
            raise ArithmeticError("Vandermonde product is not anti-invariant")
    return d


def symmetrize(f: Poly, group: Sequence[ReflectionGroupElement]) -> Poly:
    total = f.ring.zero
    for g in group:
        total = total + g.permute_poly(f)
    return total


def random_poly(ring: PolyRing, rng: random.Random, degree: int = 3, terms: int = 4, coeff_range: int = 5,
                variables: Sequence[int] | None = None) -> Poly:
    idx = list(range(ring.nvars)) if variables is None else list(variables)
    out = ring.zero
    for _ in range(terms):
        e = [0] * ring.ngens
        for _ in range(rng.randint(0, degree)):
            e[rng.choice(idx)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            out = out + ring.monomial(e, c)
    return out


def gamma_samples(ring: PolyRing, n: int, rng: random.Random, count: int = 3, degree: int = 3) -> list[Poly]:
    """Elementary symmetric polynomials plus ``count`` random symmetrized polynomials."""
    sym = group_elements(1, 1, n)
    out = list(elementary_symmetric(ring, n)) if ring.nvars == n else []
    while len(out) < (n if ring.nvars == n else 0) + count:
        f = symmetrize(random_poly(ring, rng, degree), sym)
        if not f.is_zero and not f.is_constant():
            out.append(f)
    return out


def torus_invariant_generators(ctx: SkewContext) -> list[SkewElement]:
    """S_n orbit sums in k[t] * Z^n of e_i, e_i^-1, t_i e_i, t_i e_i^-1 and e_1...e_n."""
    n = ctx.rank
    sym = group_elements(1, 1, n)
    t1 = ctx.one * ctx.ring.gen(0)
    seeds = [ctx.basis(0), ctx.basis(0, -1), t1 * ctx.basis(0), t1 * ctx.basis(0, -1), ctx.e((1,) * n)]
    return [reynolds(sym, s) for s in seeds]
