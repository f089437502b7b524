import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwalg.autos import Automorphism, q_weyl, shift
from gwalg.gwa import (
    CATALOG, GWA, PresentationError, catalog, element_words, gwa_embed, gwa_mul, gwa_tensor, gwa_validate,
    random_coefficient, random_element, relation_failures, rewrite_normal_form, rewrite_product, trivial_gwa,
)
from gwalg.scalars import PolyRing, ScalarField
from gwalg.skewring import SkewContext

Q = ScalarField()
A1 = catalog("weyl", 1)
h = A1.ring.gen(0)


def test_validate_weyl_and_quantum_plane():
    R = PolyRing(Q, ("h",))
    assert gwa_validate(GWA(R, [R.gen(0)], [shift(R, 0)], validate=False)) is not None
    qp = catalog("quantum_plane", 1)
    assert qp.sigma[0].apply(qp.ring.gen(0)) == qp.ring.parse("q*h1")


def test_validate_rejects_with_witness():
    R = PolyRing(Q, ("h1", "h2"))
    h1, h2 = R.gens()
    # sigma_1 moves a_2
    s1 = Automorphism(R, [h1, h2 + 1], [h1, h2 - 1])
    s2 = shift(R, 1)
    with pytest.raises(PresentationError) as info:
        GWA(R, [h1, h2], [s1, s2])
    assert info.value.witness == (1, 2)


def test_validate_rejects_zero_a_and_noncommuting():
    R = PolyRing(Q, ("x", "y"))
    x, y = R.gens()
    with pytest.raises(PresentationError):
        GWA(R, [R.zero], [shift(R, 0)])
    swap = Automorphism(R, [y, x], [y, x])
    with pytest.raises(PresentationError, match="commute"):
        GWA(R, [x * y, x * y], [swap, shift(R, 0)])


def test_gwa_mul_examples():
    X, Y = A1.X(0), A1.Y(0)
    assert gwa_mul(Y, X) == A1.scalar(h)
    assert gwa_mul(X, Y) == A1.scalar(h - 1)
    assert gwa_mul(A1.Y(0, 2), A1.X(0, 2)) == A1.scalar(h * (h + 1))


def test_twist_rule_direction():
    X = A1.X(0)
    assert X * A1.scalar(h) == A1.word((1,), h - 1)
    assert A1.Y(0) * A1.scalar(h) == A1.word((-1,), h + 1)


def test_normal_form_text():
    u = A1.word((2,), h) + A1.word((-1,), 3) + A1.scalar(h ** 2)
    assert str(u) == "h1*X1^2 + h1^2 + 3*Y1"


@pytest.mark.parametrize("name,n", [("weyl", 1), ("weyl", 2), ("weyl", 3), ("quantum_plane", 1),
                                    ("quantum_plane", 2), ("quantum_weyl", 1), ("quantum_weyl", 2)])
def test_relation_families(name, n):
    alg = catalog(name, n)
    rng = random.Random(n)
    assert relation_failures(alg, [random_coefficient(alg.ring, rng) for _ in range(15)]) == []


def test_relation_suite_detects_broken_algebra():
    alg = catalog("weyl", 1)
    broken = GWA(alg.ring, [alg.ring.gen(0)], [shift(alg.ring, 0)], validate=False)
    broken._products[("s", 0, 1)] = alg.ring.gen(0)  # corrupt sigma(a)
    assert any(r[0] == "X Y = sigma(a)" for r in relation_failures(broken, []))


@pytest.mark.parametrize("name,n", [("weyl", 2), ("quantum_plane", 1), ("quantum_weyl", 2)])
def test_associativity(name, n):
    alg = catalog(name, n)
    rng = random.Random(11)
    for _ in range(25):
        u, v, w = (random_element(alg, rng) for _ in range(3))
        assert (u * v) * w == u * (v * w)


@pytest.mark.parametrize("name,n", [("weyl", 2), ("quantum_weyl", 1), ("quantum_plane", 2)])
def test_rewriting_confluence(name, n):
    alg = catalog(name, n)
    rng = random.Random(5)
    for _ in range(20):
        u, v = random_element(alg, rng), random_element(alg, rng)
        closed = u * v
        assert rewrite_product(u, v) == closed
        assert rewrite_product(u, v, random.Random(rng.random())) == closed


def test_rewrite_of_element_words_is_identity():
    rng = random.Random(3)
    alg = catalog("weyl", 2)
    u = random_element(alg, rng)
    total = alg.zero
    for w in element_words(u):
        total = total + rewrite_normal_form(alg, w, rng)
    assert total == u


def test_tensor_examples():
    A2 = gwa_tensor(A1, A1)
    assert A2.rank == 2 and A2.ring.variables == ("h1", "h2")
    assert A2.a == tuple(A2.ring.gens())
    h1, h2 = A2.ring.gens()
    assert A2.sigma[0].apply(h1) == h1 - 1 and A2.sigma[0].apply(h2) == h2
    assert A2 == catalog("weyl", 2)
    assert gwa_tensor(A1, trivial_gwa(Q)) is A1


def test_tensor_of_quantum_weyl_is_catalog():
    q1 = catalog("quantum_weyl", 1)
    assert gwa_tensor(q1, q1) == catalog("quantum_weyl", 2)


def test_embed_examples():
    ctx = A1.skew_context()
    assert gwa_embed(A1.X(0)) == ctx.e(1)
    assert gwa_embed(A1.Y(0)) == ctx.e(-1, coeff="h1")
    assert gwa_embed(A1.scalar(h ** 2 + 1)) == ctx.e(0, coeff="h1^2 + 1")


def test_embed_requires_independence():
    R = PolyRing(Q, ("h",))
    H = R.gen(0)
    alg = GWA(R, [H], [Automorphism.identity(R)])
    assert alg.sigma_independent() is False
    with pytest.raises(PresentationError):
        gwa_embed(alg.X(0))
    assert GWA(R, [H], [Automorphism.identity(R)], independent=True).sigma_independent() is True


@pytest.mark.parametrize("name,n", [("weyl", 1), ("weyl", 2), ("quantum_plane", 2), ("quantum_weyl", 2)])
def test_embedding_is_homomorphism(name, n):
    alg = catalog(name, n)
    rng = random.Random(21)
    for _ in range(30):
        u, v = random_element(alg, rng), random_element(alg, rng)
        assert gwa_embed(u * v) == gwa_embed(u) * gwa_embed(v)


@given(st.integers(1, 4))
def test_cyclic_normal_form(m):
    for name in ("weyl", "quantum_plane", "quantum_weyl"):
        alg = catalog(name, 1)
        back = alg.sigma[0].inverse()
        expected, step = alg.ring.one, alg.a[0]
        for _ in range(m):
            expected, step = expected * step, back.apply(step)
        assert alg.Y(0, m) * alg.X(0, m) == alg.scalar(expected)


def test_catalog_examples():
    A2 = catalog("weyl", 2)
    assert A2.rank == 2
    qw = catalog("quantum_weyl", 1)
    hq = qw.ring.gen(0)
    assert qw.a == (hq,) and qw.sigma[0].apply(hq) == qw.ring.parse("q^-1*(h1 - 1)")
    torus = catalog("torus_diffops", 2)
    assert isinstance(torus, SkewContext)
    assert torus.ring.variables == ("t1", "t2")
    assert torus.sigma[0].apply(torus.ring.gen(0)) == torus.ring.parse("t1 - 1")
    assert set(CATALOG) == {"weyl", "quantum_plane", "quantum_weyl", "torus_diffops"}
    with pytest.raises(KeyError):
        catalog("heisenberg")


def test_quantum_weyl_sigma_is_independent():
    assert catalog("quantum_weyl", 2).sigma_independent() is True
    assert q_weyl(catalog("quantum_weyl", 1).ring, 0).name.startswith("q_weyl")
