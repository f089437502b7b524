"""Generalized Weyl algebras D(a, sigma): presentations, normal-form
arithmetic, tensor products, the embedding into Frac(D) * Z^n and a small
catalog of standard examples."""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Sequence

from .autos import Automorphism, LatticeAction, q_scale, q_weyl, shift
from .scalars import Cyclo, Poly, PolyRing, RationalFunction, ScalarField, monomial_key
from .skewring import SkewContext, SkewElement


class PresentationError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class GWA:
    """Presentation of D(a, sigma) of rank ``len(a)`` over ``ring``."""

    def __init__(self, ring: PolyRing, a: Sequence, sigma: Sequence[Automorphism], name: str | None = None,
                 independent: bool | None = None, validate: bool = True):
        if len(a) != len(sigma):
            raise PresentationError(f"{len(a)} elements a_i but {len(sigma)} automorphisms")
        self.ring = ring
        self.a = tuple(ring.coerce(x) for x in a)
        self.sigma = tuple(sigma)
        self.name = name
        self.asserted_independent = independent
        self._action = None
        self._skew = None
        self._products: dict = {}
        if validate:
            self.validate()

    @property
    def rank(self) -> int:
        return len(self.a)

    @property
    def action(self) -> LatticeAction:
        if self._action is None:
            self._action = LatticeAction(self.sigma, check=False)
        return self._action

    def validate(self) -> "GWA":
        for i, s in enumerate(self.sigma):
            if s.ring != self.ring:
                raise PresentationError(f"sigma_{i + 1} acts on a different ring", witness=(i + 1,))
        for i, ai in enumerate(self.a):
            if ai.is_zero:
                raise PresentationError(f"a_{i + 1} is zero", witness=(i + 1,))
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                if not self.sigma[i].commutes_with(self.sigma[j]):
                    raise PresentationError(f"sigma_{i + 1} and sigma_{j + 1} do not commute", witness=(i + 1, j + 1))
        for i in range(self.rank):
            for j in range(self.rank):
                if i != j and self.sigma[i].apply(self.a[j]) != self.a[j]:
                    raise PresentationError(f"sigma_{i + 1}(a_{j + 1}) != a_{j + 1}", witness=(i + 1, j + 1))
        return self

    def __eq__(self, other):
        if not isinstance(other, GWA):
            return NotImplemented
        return self is other or (self.ring == other.ring and self.a == other.a and self.sigma == other.sigma)

    def __hash__(self):
        return hash((self.ring, self.a, self.sigma))

    # -- elements ------------------------------------------------------------

    def element(self, terms: dict) -> "GWAElement":
        return GWAElement(self, {tuple(k): self.ring.coerce(v) for k, v in terms.items()})

    def scalar(self, d) -> "GWAElement":
        return self.element({(0,) * self.rank: d})

    def word(self, alpha, coeff=1) -> "GWAElement":
        """``coeff * v_alpha`` where ``v_alpha`` has X_i^alpha_i or Y_i^-alpha_i in slot i."""
        return self.element({tuple(alpha): coeff})

    def X(self, i: int, power: int = 1) -> "GWAElement":
        alpha = [0] * self.rank
        alpha[i] = power
        return self.word(alpha)

    def Y(self, i: int, power: int = 1) -> "GWAElement":
        return self.X(i, -power)

    @property
    def one(self) -> "GWAElement":
        return self.scalar(1)

    @property
    def zero(self) -> "GWAElement":
        return GWAElement(self, {})

    # -- rank-one structure constants ---------------------------------------

    def sigma_power_a(self, i: int, k: int) -> Poly:
        """``sigma_i^k(a_i)``."""
        key = ("s", i, k)
        out = self._products.get(key)
        if out is None:
            alpha = [0] * self.rank
            alpha[i] = k
            out = self.action.apply(tuple(alpha), self.a[i])
            self._products[key] = out
        return out

    def _range_product(self, i: int, exponents) -> Poly:
        out = self.ring.one
        for k in exponents:
            out = out * self.sigma_power_a(i, k)
        return out

    def twisted_product(self, i: int, m: int) -> Poly:
        """``a_i sigma_i^-1(a_i) ... sigma_i^-(m-1)(a_i)``, the normal form of ``Y_i^m X_i^m``."""
        key = ("t", i, m)
        out = self._products.get(key)
        if out is None:
            out = self._range_product(i, (-k for k in range(m)))
            self._products[key] = out
        return out

    def word_coefficient(self, i: int, s: int, t: int) -> Poly:
        """``c`` with ``w_i(s) w_i(t) = c w_i(s + t)``, ``w_i(k)`` being X_i^k or Y_i^-k."""
        if s >= 0 and t >= 0 or s <= 0 and t <= 0:
            return self.ring.one
        key = ("w", i, s, t)
        out = self._products.get(key)
        if out is None:
            if s > 0:
                u = -t
                out = self._range_product(i, range(max(s - u, 0) + 1, s + 1))
            else:
                u = -s
                out = self._range_product(i, (-j for j in range(max(u - t, 0), u)))
            self._products[key] = out
        return out

    # -- embedding -------------------------------------------------------------

    def sigma_independent(self) -> bool | None:
        """Z-linear independence of sigma when it can be decided, else ``None``."""
        if self.asserted_independent is not None:
            return self.asserted_independent
        return affine_independence(self.sigma)

    def skew_context(self) -> SkewContext:
        if self._skew is None:
            self._skew = SkewContext(self.ring, self.sigma, name=self.name)
        return self._skew

    def describe(self) -> str:
        lines = [f"D = {'Laurent' if self.ring.laurent else 'polynomial'} ring in {', '.join(self.ring.variables)}"]
        if self.ring.field.parameters:
            lines[0] += f" over Q(zeta_{self.ring.field.cyclotomic_order})({', '.join(self.ring.field.parameters)})"
        for i in range(self.rank):
            lines.append(f"a_{i + 1} = {self.a[i]};  sigma_{i + 1}: {self.sigma[i].describe()}")
        return "\n".join(lines)

    def __repr__(self):
        return f"GWA({self.name or 'custom'}, rank={self.rank})"


def affine_independence(sigma: Sequence[Automorphism]) -> bool | None:
    """Decide Z-independence for automorphisms that move disjoint variable sets
    by affine maps ``h -> c h + b``; ``None`` when outside that class."""
    if not sigma:
        return True
    ring = sigma[0].ring
    gens = ring.gens()
    moved = []
    for s in sigma:
        idx = {j for j, (f, h) in enumerate(zip(s.forward, gens)) if f != h}
        if not idx:
            return False
        moved.append(idx)
    for i in range(len(moved)):
        for j in range(i + 1, len(moved)):
            if moved[i] & moved[j]:
                return None
    order = ring.field.cyclotomic_order
    for s, idx in zip(sigma, moved):
        infinite = False
        for j in idx:
            f = s.forward[j]
            h = gens[j]
            lin = {e: c for e, c in f.terms.items() if e[: ring.nvars] == tuple(h.terms)[0][: ring.nvars]}
            rest = f - Poly(ring, lin)
            if not rest.is_free_of_variables():
                return None
            coeff = Poly(ring, {tuple(x - y for x, y in zip(e, next(iter(h.terms)))): c for e, c in lin.items()})
            if not coeff.is_free_of_variables() or coeff.is_zero:
                return None
            if coeff == 1:
                infinite = infinite or not rest.is_zero
            elif not coeff.is_constant():
                infinite = True  # a nonconstant monomial in transcendental parameters
            else:
                c = coeff.constant_value()
                infinite = infinite or (c ** (2 * order) != 1)
        if not infinite:
            return None
    return True


class GWAElement:
    """Normal form ``sum d_alpha v_alpha`` with coefficients on the left."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: GWA, terms: dict):
        self.alg = alg
        self.terms = {k: v for k, v in terms.items() if not v.is_zero}

    def _lift(self, other):
        if isinstance(other, GWAElement):
            if other.alg != self.alg:
                raise ValueError("elements of different presentations")
            return other
        if isinstance(other, (int, Fraction, Cyclo, Poly)):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return GWAElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return GWAElement(self.alg, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return GWAElement(self.alg, {k: v * other for k, v in self.terms.items()})
        o = self._lift(other)
        if o is None:
            return NotImplemented
        alg = self.alg
        out: dict = {}
        for al, d1 in self.terms.items():
            for be, d2 in o.terms.items():
                c = d1 * alg.action.apply(al, d2)
                for i, (s, t) in enumerate(zip(al, be)):
                    if (s > 0 > t) or (s < 0 < t):
                        c = c * alg.word_coefficient(i, s, t)
                k = tuple(x + y for x, y in zip(al, be))
                out[k] = out[k] + c if k in out else c
        return GWAElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Cyclo)):
            return self * other
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k: int):
        result = self.alg.one
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, alpha) -> Poly:
        return self.terms.get(tuple(alpha), self.alg.ring.zero)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def __repr__(self):
        return f"GWAElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for alpha, d in self.sorted_terms():
            word = format_word(alpha)
            if not word:
                parts.append(str(d))
            elif d == 1:
                parts.append(word)
            else:
                c = str(d)
                parts.append(f"({c})*{word}" if len(d.terms) > 1 else f"{c}*{word}")
        return " + ".join(parts)


def format_word(alpha) -> str:
    out = []
    for i, k in enumerate(alpha):
        if k:
            letter = "X" if k > 0 else "Y"
            out.append(f"{letter}{i + 1}" + (f"^{abs(k)}" if abs(k) > 1 else ""))
    return "*".join(out)


def gwa_validate(p: GWA) -> GWA:
    return p.validate()


def gwa_mul(u: GWAElement, v: GWAElement) -> GWAElement:
    return u * v


# -- rewriting oracle -----------------------------------------------------------


def rewrite_normal_form(alg: GWA, word: Sequence, rng: random.Random | None = None) -> GWAElement:
    """Normal form of a word by rewriting with the defining relations.

    ``word`` is a sequence of tokens ``("X", i)``, ``("Y", i)`` or a Poly.
    Every step picks a redex (at random when ``rng`` is given, otherwise the
    leftmost one); the relations used are exactly the defining ones plus
    commutation of letters with different indices.
    """
    coeff = alg.ring.one
    toks = list(word)
    while True:
        if toks and isinstance(toks[0], Poly):
            coeff = coeff * toks.pop(0)
            continue
        redexes = [k for k in range(len(toks) - 1) if _redex(toks[k], toks[k + 1])]
        if not redexes:
            break
        k = rng.choice(redexes) if rng is not None else redexes[0]
        left, right = toks[k], toks[k + 1]
        if isinstance(left, Poly):
            toks[k : k + 2] = [left * right]
        elif isinstance(right, Poly):
            sgn = 1 if left[0] == "X" else -1
            alpha = [0] * alg.rank
            alpha[left[1]] = sgn
            toks[k : k + 2] = [alg.action.apply(tuple(alpha), right), left]
        elif left[1] == right[1]:
            i = left[1]
            toks[k : k + 2] = [alg.a[i] if left[0] == "Y" else alg.sigma_power_a(i, 1)]
        else:
            toks[k : k + 2] = [right, left]
    alpha = [0] * alg.rank
    for letter, i in toks:
        alpha[i] += 1 if letter == "X" else -1
    return alg.word(alpha, coeff)


def _redex(left, right) -> bool:
    if isinstance(right, Poly):
        return True
    if isinstance(left, Poly):
        return False
    if left[1] == right[1]:
        return left[0] != right[0]
    return left[1] > right[1]


def element_words(u: GWAElement):
    """Each term of ``u`` as a token word ``[d, letters...]``."""
    for alpha, d in u.terms.items():
        toks = [d]
        for i, k in enumerate(alpha):
            toks.extend([("X" if k > 0 else "Y", i)] * abs(k))
        yield toks


def rewrite_product(u: GWAElement, v: GWAElement, rng: random.Random | None = None) -> GWAElement:
    total = u.alg.zero
    for w1 in element_words(u):
        for w2 in element_words(v):
            total = total + rewrite_normal_form(u.alg, w1 + w2, rng)
    return total


# -- tensor product and embedding ------------------------------------------------

_H_NAME = re.compile(r"^h(\d+)$")


def gwa_tensor(p: GWA, q: GWA) -> GWA:
    """Presentation of ``p (x) q``: variables, a and sigma concatenated."""
    if p.ring.field != q.ring.field:
        raise PresentationError("tensor factors live over different scalar fields")
    if p.ring.nvars == 0:
        return q
    if q.ring.nvars == 0:
        return p
    if p.ring.laurent != q.ring.laurent:
        raise PresentationError("cannot tensor a polynomial and a Laurent defining algebra")
    pv, qv = p.ring.variables, q.ring.variables
    if all(_H_NAME.match(v) for v in pv + qv):
        names = tuple(f"h{k + 1}" for k in range(len(pv) + len(qv)))
    else:
        names = pv + tuple(v if v not in pv else f"{v}_2" for v in qv)
    ring = PolyRing(p.ring.field, names, p.ring.laurent)
    np_, nq = len(pv), len(qv)
    nparams = len(p.ring.field.parameters)
    pos_p = list(range(np_)) + [np_ + nq + k for k in range(nparams)]
    pos_q = [np_ + k for k in range(nq)] + [np_ + nq + k for k in range(nparams)]
    gens = ring.gens()

    def extend(s: Automorphism, pos, offset, count):
        fwd, inv = list(gens), list(gens)
        for j in range(count):
            fwd[offset + j] = s.forward[j].map_to(ring, pos)
            inv[offset + j] = s.inverse_images[j].map_to(ring, pos)
        return Automorphism(ring, fwd, inv, name=s.name, check=False)

    a = [x.map_to(ring, pos_p) for x in p.a] + [x.map_to(ring, pos_q) for x in q.a]
    sigma = [extend(s, pos_p, 0, np_) for s in p.sigma] + [extend(s, pos_q, np_, nq) for s in q.sigma]
    indep = None
    if p.asserted_independent is not None or q.asserted_independent is not None:
        pi, qi = p.sigma_independent(), q.sigma_independent()
        indep = bool(pi and qi) if pi is not None and qi is not None else None
    name = f"{p.name}*{q.name}" if p.name and q.name else None
    return GWA(ring, a, sigma, name=name, independent=indep)


def trivial_gwa(field: ScalarField) -> GWA:
    return GWA(PolyRing(field, ()), [], [], name="trivial")


def gwa_embed(u: GWAElement) -> SkewElement:
    """Image under ``X_i -> e_i``, ``Y_i -> a_i e_i^-1``."""
    alg = u.alg
    if alg.sigma_independent() is not True:
        raise PresentationError(
            "linear independence of sigma over Z is not established; assert it in the presentation"
        )
    ctx = alg.skew_context()
    terms = {}
    for alpha, d in u.terms.items():
        c = d
        for i, k in enumerate(alpha):
            if k < 0:
                c = c * alg.twisted_product(i, -k)
        terms[alpha] = RationalFunction(alg.ring, c)
    return SkewElement(ctx, terms)


# -- catalog ------------------------------------------------------------------------

CATALOG = ("weyl", "quantum_plane", "quantum_weyl", "torus_diffops")

CATALOG_DESCRIPTIONS = {
    "weyl": "A_n: D = k[h1..hn], a_i = h_i, sigma_i(h_i) = h_i - 1",
    "quantum_plane": "k_q[x,y]^(x)n: D = k[h1..hn], a_i = h_i, sigma_i(h_i) = q*h_i",
    "quantum_weyl": "A_n^q: D = k[h1..hn], a_i = h_i, sigma_i(h_i) = q^-1*(h_i - 1)",
    "torus_diffops": "D(T^n) = k[t1..tn] * Z^n, e_i(t_j) = t_j - delta_ij (skew group ring)",
}


def catalog(name: str, n: int = 1, params: dict | None = None, field: ScalarField | None = None,
            laurent: bool = False):
    """Build a catalog algebra; ``torus_diffops`` yields a :class:`SkewContext`."""
    params = dict(params or {})
    if name not in CATALOG:
        raise KeyError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG)}")
    if n < 1:
        raise ValueError("rank must be at least 1")
    q = params.get("q", "q")
    needs_q = name in ("quantum_plane", "quantum_weyl")
    field = field or ScalarField()
    if needs_q and q not in field.parameters:
        field = field.extend(parameters=[q])
    if name == "torus_diffops":
        ring = PolyRing(field, tuple(f"t{i + 1}" for i in range(n)))
        return SkewContext(ring, [shift(ring, i) for i in range(n)], name=f"torus_diffops({n})")
    ring = PolyRing(field, tuple(f"h{i + 1}" for i in range(n)), laurent)
    maker = {"weyl": shift, "quantum_plane": lambda r, i: q_scale(r, i, q), "quantum_weyl": lambda r, i: q_weyl(r, i, q)}[name]
    sigma = [maker(ring, i) for i in range(n)]
    return GWA(ring, ring.gens(), sigma, name=f"{name}({n})")


# -- sampling and the relation suite -------------------------------------------------


def random_coefficient(ring: PolyRing, rng: random.Random, degree: int = 3, terms: int = 4,
                       coeff_range: int = 5) -> Poly:
    """Random element of D of total degree at most ``degree`` in the variables."""
    out = ring.zero
    for _ in range(terms):
        e = [0] * ring.ngens
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(ring.nvars)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        if c:
            out = out + ring.monomial(e, c)
    return out


def random_element(alg: GWA, rng: random.Random, terms: int = 3, degree: int = 2, max_power: int = 2) -> GWAElement:
    out = {}
    for _ in range(terms):
        alpha = tuple(rng.randint(-max_power, max_power) for _ in range(alg.rank))
        out[alpha] = random_coefficient(alg.ring, rng, degree, terms=2)
    return GWAElement(alg, {k: v for k, v in out.items() if not v.is_zero})


def relation_failures(alg: GWA, samples) -> list[tuple[str, int, str]]:
    """Defining relations checked as identities of the closed-form product.

    Returns ``(relation, generator index, sample)`` for every identity that fails.
    """
    bad = []
    n = alg.rank
    for i in range(n):
        X, Y, s = alg.X(i), alg.Y(i), alg.sigma[i]
        s_inv = s.inverse()
        a = alg.a[i]
        if Y * X != alg.scalar(a):
            bad.append(("Y X = a", i, ""))
        if X * Y != alg.scalar(s.apply(a)):
            bad.append(("X Y = sigma(a)", i, ""))
        for d in samples:
            D = alg.scalar(d)
            if X * D != alg.scalar(s.apply(d)) * X:
                bad.append(("X d = sigma(d) X", i, str(d)))
            if Y * D != alg.scalar(s_inv.apply(d)) * Y:
                bad.append(("Y d = sigma^-1(d) Y", i, str(d)))
        for j in range(n):
            if j == i:
                continue
            if alg.X(i) * alg.X(j) != alg.X(j) * alg.X(i):
                bad.append(("[X_i, X_j] = 0", i, f"j={j}"))
            if alg.Y(i) * alg.Y(j) != alg.Y(j) * alg.Y(i):
                bad.append(("[Y_i, Y_j] = 0", i, f"j={j}"))
            if alg.X(i) * alg.Y(j) != alg.Y(j) * alg.X(i):
                bad.append(("[X_i, Y_j] = 0", i, f"j={j}"))
    return bad
