"""Generalized-tableaux weight modules over a GWA.

Basis vectors T(n) are indexed by points of the sigma-orbit of a seed point
(maximal ideals of D via their zeros).  The module is infinite, so work
happens on a finite window ``|theta|_inf <= r`` of the orbit; operators
raise :class:`BoundaryEscape` when a result would leave the window.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .autos import act_on_point, normalize_coordinate
from .gwa import GWA
from .scalars import Poly, RationalFunction


class BoundaryEscape(LookupError):
    pass


@dataclass(frozen=True)
class Tableau:
    point: tuple
    provenance: tuple[int, ...]


def _is_zero(c) -> bool:
    if isinstance(c, (Poly, RationalFunction)):
        return c.is_zero
    return not c


def _key(point):
    if all(isinstance(x, Poly) for x in point):
        return point
    return None


class OrbitTruncation:
    """The window of the orbit of ``seed`` with ``|theta|_inf <= radius``."""

    def __init__(self, alg: GWA, seed: Sequence, radius: int):
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        self.alg = alg
        self.radius = radius
        ring = alg.ring
        self.seed = tuple(normalize_coordinate(RationalFunction.of(ring, x)) for x in seed)
        if len(self.seed) != ring.nvars:
            raise ValueError(f"seed has {len(self.seed)} coordinates, D has {ring.nvars} variables")
        self.tableaux: list[Tableau] = []
        self._index: dict = {}
        self._loose: list[int] = []
        self._expand()
        self.boundary = {
            k for k, t in enumerate(self.tableaux) if max((abs(x) for x in t.provenance), default=0) >= radius
        }
        self._neighbours()

    def lookup(self, point) -> int | None:
        key = _key(point)
        if key is not None:
            return self._index.get(key)
        for k in self._loose:
            if all(a == b for a, b in zip(self.tableaux[k].point, point)):
                return k
        return None

    def _add(self, point, theta):
        if self.lookup(point) is not None:
            return
        k = len(self.tableaux)
        self.tableaux.append(Tableau(point, theta))
        key = _key(point)
        if key is not None:
            self._index[key] = k
        else:
            self._loose.append(k)

    def _expand(self):
        n = self.alg.rank
        sig = self.alg.sigma
        sig_inv = [s.inverse() for s in sig]
        start = (0,) * n
        points = {start: self.seed}
        self._add(self.seed, start)
        queue = deque([start])
        while queue:
            theta = queue.popleft()
            for i in range(n):
                for step, phi in ((1, sig[i]), (-1, sig_inv[i])):
                    nxt = list(theta)
                    nxt[i] += step
                    nxt = tuple(nxt)
                    if abs(nxt[i]) > self.radius or nxt in points:
                        continue
                    points[nxt] = act_on_point(phi, points[theta])
                    self._add(points[nxt], nxt)
                    queue.append(nxt)

    def _neighbours(self):
        n = self.alg.rank
        self.up = [[None] * len(self.tableaux) for _ in range(n)]
        self.down = [[None] * len(self.tableaux) for _ in range(n)]
        self.y_coeff = [[None] * len(self.tableaux) for _ in range(n)]
        for i, s in enumerate(self.alg.sigma):
            s_inv = s.inverse()
            for k, t in enumerate(self.tableaux):
                self.up[i][k] = self.lookup(act_on_point(s, t.point))
                below = act_on_point(s_inv, t.point)
                self.down[i][k] = self.lookup(below)
                self.y_coeff[i][k] = normalize_coordinate(self.alg.a[i].evaluate(below))

    def interior(self) -> list[int]:
        return [k for k in range(len(self.tableaux)) if k not in self.boundary]

    def __len__(self):
        return len(self.tableaux)

    def vector(self, k: int, coeff=1) -> "WeightVector":
        return WeightVector(self, {k: coeff})

    def seed_index(self) -> int:
        return 0


class WeightVector:
    """Finite linear combination of tableaux of one truncation."""

    __slots__ = ("orbit", "terms")

    def __init__(self, orbit: OrbitTruncation, terms: dict):
        self.orbit = orbit
        self.terms = {k: c for k, c in terms.items() if not _is_zero(c)}

    def __add__(self, other: "WeightVector"):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return WeightVector(self.orbit, out)

    def __sub__(self, other: "WeightVector"):
        return self + other.scale(-1)

    def scale(self, c) -> "WeightVector":
        return WeightVector(self.orbit, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items()):
            pt = ", ".join(str(x) for x in self.orbit.tableaux[k].point)
            parts.append(f"({c})*T({pt})")
        return " + ".join(parts)


def orbit_expand(alg: GWA, seed: Sequence, radius: int) -> OrbitTruncation:
    return OrbitTruncation(alg, seed, radius)


def _move(table, i, k):
    target = table[i][k]
    if target is None:
        raise BoundaryEscape(f"generator {i + 1} leaves the window at tableau {k}")
    return target


def act_z(z, v: WeightVector) -> WeightVector:
    """``z.T(n) = f_n(z) T(n)``."""
    orbit = v.orbit
    z = orbit.alg.ring.coerce(z)
    return WeightVector(orbit, {
        k: normalize_coordinate(z.evaluate(orbit.tableaux[k].point)) * c for k, c in v.terms.items()
    })


def act_X(i: int, v: WeightVector) -> WeightVector:
    """``X_i.T(n) = T(sigma_i n)``."""
    return WeightVector(v.orbit, {_move(v.orbit.up, i, k): c for k, c in v.terms.items()})


def act_Y(i: int, v: WeightVector) -> WeightVector:
    """``Y_i.T(n) = f_{sigma_i^-1 n}(a_i) T(sigma_i^-1 n)``."""
    orbit = v.orbit
    out = {}
    for k, c in v.terms.items():
        out[_move(orbit.down, i, k)] = orbit.y_coeff[i][k] * c
    return WeightVector(orbit, out)


def act(gen, v: WeightVector) -> WeightVector:
    """Apply ``("X", i)``, ``("Y", i)`` or an element of D."""
    if isinstance(gen, tuple) and gen and gen[0] in ("X", "Y"):
        return act_X(gen[1], v) if gen[0] == "X" else act_Y(gen[1], v)
    return act_z(gen, v)


@dataclass
class RelationReport:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def verify_relations(orbit: OrbitTruncation, samples: Sequence) -> RelationReport:
    """Check every defining relation on every interior tableau."""
    alg = orbit.alg
    n = alg.rank
    report = RelationReport()
    samples = [alg.ring.coerce(z) for z in samples]

    def check(name, k, i, lhs, rhs):
        report.checked += 1
        if lhs != rhs:
            report.violations.append((name, tuple(str(x) for x in orbit.tableaux[k].point), i + 1))

    for k in orbit.interior():
        T = orbit.vector(k)
        for i in range(n):
            s, s_inv = alg.sigma[i], alg.sigma[i].inverse()
            for z in samples:
                check("X z = sigma(z) X", k, i, act_X(i, act_z(z, T)), act_z(s.apply(z), act_X(i, T)))
                check("Y z = sigma^-1(z) Y", k, i, act_Y(i, act_z(z, T)), act_z(s_inv.apply(z), act_Y(i, T)))
            check("Y X = a", k, i, act_Y(i, act_X(i, T)), act_z(alg.a[i], T))
            check("X Y = sigma(a)", k, i, act_X(i, act_Y(i, T)), act_z(s.apply(alg.a[i]), T))
            for j in range(n):
                if j == i:
                    continue
                check("[X_i, X_j]", k, i, act_X(i, act_X(j, T)), act_X(j, act_X(i, T)))
                check("[Y_i, Y_j]", k, i, act_Y(i, act_Y(j, T)), act_Y(j, act_Y(i, T)))
                check("[X_i, Y_j]", k, i, act_X(i, act_Y(j, T)), act_Y(j, act_X(i, T)))
    return report


def weight_table(orbit: OrbitTruncation) -> list[tuple]:
    """Eigenvalues of ``h_1..h_n`` on each tableau, read off from the D-action."""
    ring = orbit.alg.ring
    out = []
    for k in range(len(orbit)):
        T = orbit.vector(k)
        out.append(tuple(act_z(h, T).terms.get(k, 0) for h in ring.gens()))
    return out


def weight_lift_check(orbit: OrbitTruncation) -> bool:
    """T(seed) spans a nonzero weight space for the seed's maximal ideal."""
    ring = orbit.alg.ring
    k = orbit.seed_index()
    T = orbit.vector(k)
    for h, x in zip(ring.gens(), orbit.seed):
        if act_z(h, T) != T.scale(x) or T.is_zero:
            return False
        if act_z(h - x, T) != WeightVector(orbit, {}):
            return False
    return True


def is_multiplicity_free(orbit: OrbitTruncation) -> bool:
    weights = weight_table(orbit)
    keys = [tuple(str(x) for x in w) for w in weights]
    return len(set(keys)) == len(keys)


def reachability_edges(orbit: OrbitTruncation) -> list[tuple[int, int, str]]:
    """Edges ``T(n) -> T(sigma_i n)`` and, when the Y-coefficient is nonzero, ``T(n) -> T(sigma_i^-1 n)``."""
    edges = []
    for i in range(orbit.alg.rank):
        for k in range(len(orbit)):
            up = orbit.up[i][k]
            if up is not None:
                edges.append((k, up, f"X{i + 1}"))
            down = orbit.down[i][k]
            if down is not None and not _is_zero(orbit.y_coeff[i][k]):
                edges.append((k, down, f"Y{i + 1}"))
    return edges


def submodule_scan(orbit: OrbitTruncation) -> list[frozenset[int]]:
    """Distinct forward-closed sets generated by single tableaux, largest first.

    More than one set means the window contains a proper subset closed
    under every generator, a candidate support of a proper submodule.
    """
    adj: dict[int, list[int]] = {k: [] for k in range(len(orbit))}
    for a, b, _ in reachability_edges(orbit):
        adj[a].append(b)
    closures = set()
    for start in adj:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        closures.add(frozenset(seen))
    return sorted(closures, key=lambda s: (-len(s), sorted(s)))


def generic_seed(alg: GWA, offset=Fraction(1, 2)) -> tuple:
    """A seed with every coordinate at ``offset``."""
    return tuple(offset for _ in range(alg.ring.nvars))


def translate_points(orbit: OrbitTruncation, theta: Sequence[int], k: int) -> int:
    """Index of T(sigma^theta n) for n the point of tableau ``k``."""
    cur = k
    for i, t in enumerate(theta):
        table = orbit.up if t > 0 else orbit.down
        for _ in range(abs(t)):
            cur = _move(table, i, cur)
    return cur


def window_points(orbit: OrbitTruncation) -> list[tuple[str, ...]]:
    return [tuple(str(x) for x in t.point) for t in orbit.tableaux]


def theta_box(n: int, radius: int):
    return itertools.product(range(-radius, radius + 1), repeat=n)


def torus_as_gwa(n: int = 1) -> GWA:
    """D(T^n) seen as the GWA over k[t1..tn] with a_i = 1 and shifts."""
    from .gwa import catalog

    ctx = catalog("torus_diffops", n)
    ring = ctx.ring
    return GWA(ring, [ring.one] * n, ctx.sigma, name=f"torus_diffops({n})")
