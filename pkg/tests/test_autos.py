import random
from fractions import Fraction

import pytest
from conftest import polys, small_rationals
from hypothesis import given
from hypothesis import strategies as st

from gwalg.autos import (
    AutomorphismError, Automorphism, LatticeAction, ReflectionGroupElement, act_on_point, auto_apply, closure,
    group_elements, group_generators, group_order, lattice_to_auto, nagata, q_scale, q_weyl, shift,
)
from gwalg.scalars import LaurentError, PolyRing, ScalarField, poly_eval

Q = ScalarField()
R2 = PolyRing(Q, ("h1", "h2"))
Fq = ScalarField(1, ("q",))
Rq = PolyRing(Fq, ("h",))
h1, h2 = R2.gens()


def test_auto_apply_examples():
    assert auto_apply(shift(R2, 0), h1 ** 2) == (h1 - 1) ** 2
    f = R2.parse("h1^3 - 2*h1*h2")
    assert auto_apply(Automorphism.identity(R2), f) == f
    h = Rq.gen(0)
    assert auto_apply(q_weyl(Rq, 0), h) == Rq.parse("q^-1*(h - 1)")


def test_auto_apply_on_rational_functions():
    x = R2.frac(1, h1 - h2)
    assert auto_apply(shift(R2, 0), x) == R2.frac(1, h1 - h2 - 1)


def test_constructor_rejects_wrong_inverse():
    with pytest.raises(AutomorphismError):
        Automorphism(R2, [h1 - 1, h2], [h1 - 1, h2])


def test_nagata_passes_inverse_check():
    R3 = PolyRing(Q, ("x", "y", "z"))
    phi = nagata(R3)
    x, y, z = R3.gens()
    assert phi.name == "nagata"
    assert (phi * phi.inverse()).is_identity and (phi.inverse() * phi).is_identity
    f = x * y + z ** 2
    assert phi.inverse().apply(phi.apply(f)) == f


def test_laurent_substitution_requires_units():
    L = PolyRing(Q, ("h",), laurent=True)
    h = L.gen(0)
    phi = shift(L, 0)
    assert phi.apply(h) == h - 1
    with pytest.raises(LaurentError):
        phi.apply(h ** -1)


def test_lattice_to_auto_examples():
    gens = [shift(R2, 0), shift(R2, 1)]
    phi = lattice_to_auto((1, 0), gens)
    assert phi.apply(h1) == h1 - 1 and phi.apply(h2) == h2
    assert lattice_to_auto((0, 0), gens).is_identity
    Rq2 = PolyRing(Fq, ("h1", "h2"))
    sc = [q_scale(Rq2, 0), q_scale(Rq2, 1)]
    assert lattice_to_auto((2, 0), sc).apply(Rq2.gen(0)) == Rq2.parse("q^2*h1")


def test_lattice_to_auto_rejects_noncommuting():
    R3 = PolyRing(Q, ("x", "y", "z"))
    with pytest.raises(AutomorphismError):
        lattice_to_auto((1, 1), [nagata(R3), shift(R3, 1)])


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.lists(st.integers(-3, 3), min_size=2, max_size=2))
def test_lattice_action_is_group_homomorphism(a, b):
    act = LatticeAction([shift(R2, 0), q_free_shift := shift(R2, 1, 2)])
    f = h1 ** 2 * h2 + h2
    ab = tuple(x + y for x, y in zip(a, b))
    assert act.apply(ab, f) == act.apply(a, act.apply(b, f))
    assert q_free_shift.apply(h2) == h2 - 2


def test_act_on_point_examples():
    assert act_on_point(shift(R2, 0), (3, 5)) == (4, 5)
    assert act_on_point(Automorphism.identity(R2), (Fraction(1, 3), 2)) == (Fraction(1, 3), 2)
    p = Fraction(2, 5)
    assert act_on_point(q_weyl(Rq, 0), (p,)) == (Rq.parse("q*2/5 + 1"),)


@given(small_rationals, small_rationals, st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
def test_act_on_point_is_left_action(x, y, i, j, k):
    phi = lattice_to_auto((i, j), [shift(R2, 0), shift(R2, 1)])
    psi = lattice_to_auto((k, i), [shift(R2, 0), shift(R2, 1)])
    p = (x, y)
    assert act_on_point(phi * psi, p) == act_on_point(phi, act_on_point(psi, p))


@given(polys(R2), small_rationals, small_rationals, st.sampled_from(["shift0", "shift1", "mixed"]))
def test_dagger_identity(a, x, y, which):
    # f_m(phi(a)) at the point of m equals a evaluated at the point of phi^-1(m)
    phi = {"shift0": shift(R2, 0), "shift1": shift(R2, 1),
           "mixed": Automorphism(R2, [h1 + h2 ** 2, h2 - 1], [h1 - (h2 + 1) ** 2, h2 + 1])}[which]
    p = (x, y)
    assert poly_eval(phi.apply(a), p) == poly_eval(a, act_on_point(phi.inverse(), p))


@given(polys(R2), polys(R2))
def test_application_is_ring_homomorphism(f, g):
    phi = Automorphism(R2, [h1 + h2 ** 2, h2 - 1], [h1 - (h2 + 1) ** 2, h2 + 1])
    assert phi.apply(f * g) == phi.apply(f) * phi.apply(g)
    assert phi.apply(f + g) == phi.apply(f) + phi.apply(g)


# -- reflection groups -----------------------------------------------------------


def test_group_elements_examples():
    s3 = group_elements(1, 1, 3)
    assert len(s3) == 6 and all(not any(g.diag) for g in s3)
    g222 = group_elements(2, 2, 2)
    assert len(g222) == 4
    assert {g.diag for g in g222} == {(0, 0), (1, 1)}
    assert len(group_elements(2, 1, 2)) == 8


@pytest.mark.parametrize("m,p,n", [(1, 1, 3), (2, 1, 2), (2, 2, 2), (3, 3, 2), (4, 2, 2), (2, 2, 3), (3, 1, 3),
                                   (6, 3, 2)])
def test_group_order_and_generators(m, p, n):
    elems = group_elements(m, p, n)
    assert len(elems) == group_order(m, p, n) == m ** n * {1: 1, 2: 2, 3: 6}[n] // p
    assert all(g.in_gmpn(p) for g in elems)
    assert set(closure(group_generators(m, p, n))) == set(elems)


def test_p_must_divide_m():
    with pytest.raises(ValueError, match="divide"):
        group_elements(4, 3, 2)


def test_wreath_product_law():
    rng = random.Random(7)
    elems = group_elements(3, 1, 3)
    for _ in range(200):
        g, h = rng.choice(elems), rng.choice(elems)
        gh = g * h
        # composition of the actions on X_1..X_n agrees with the product
        for i in range(3):
            c1, j = h.diag[h.perm[i]], h.perm[i]
            c2, k = g.diag[g.perm[j]], g.perm[j]
            assert gh.perm[i] == k
            assert gh.diag[k] % 3 == (c1 + c2) % 3
        assert g * g.inverse() == ReflectionGroupElement.identity(3, 3)
