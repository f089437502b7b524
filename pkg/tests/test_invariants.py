import random

import pytest

from gwalg.autos import ReflectionGroupElement, group_elements, group_generators, symmetric_group
from gwalg.gwa import catalog, gwa_embed, random_element
from gwalg.invariants import (
    NotInvariant, cyclic_invariant_gwa, dchi_sign_sn, decomposition_check, gamma_samples, gwa_act,
    gwa_reynolds, invariant_generators, principal_check, rational_witness_check,
    spectral_projection, torus_invariant_generators, xi_eigenvalue, xi_polynomial,
)
from gwalg.scalars import PolyRing, ScalarField
from gwalg.skewring import SkewContext, is_invariant, membership

GMPN = [(2, 1, 2), (2, 2, 2), (3, 3, 2), (4, 2, 2), (2, 2, 3)]


def weyl(n, m=1):
    return catalog("weyl", n, field=ScalarField(m))


# -- the group action -----------------------------------------------------------------


def test_gwa_act_examples():
    A = weyl(2, 2)
    tau = ReflectionGroupElement.transposition(2, 2, 0, 1)
    assert gwa_act(tau, A.X(0)) == A.X(1)
    assert gwa_act(ReflectionGroupElement.diagonal(2, (1, 0)), A.X(0)) == -A.X(0)
    u = A.word((1, -2), "h1*h2 + 3")
    assert gwa_act(ReflectionGroupElement.identity(2, 2), u) == u


@pytest.mark.parametrize("m,p,n", GMPN)
def test_gwa_act_is_algebra_automorphism(m, p, n):
    A = weyl(n, m)
    rng = random.Random(m * 100 + p * 10 + n)
    for g in group_generators(m, p, n):
        for _ in range(8):
            u, v = random_element(A, rng), random_element(A, rng)
            assert gwa_act(g, u * v) == gwa_act(g, u) * gwa_act(g, v)


def test_gwa_act_preserves_quantum_relations():
    A = catalog("quantum_weyl", 2, field=ScalarField(2))
    rng = random.Random(1)
    for g in group_elements(2, 1, 2):
        for _ in range(5):
            u, v = random_element(A, rng), random_element(A, rng)
            assert gwa_act(g, u * v) == gwa_act(g, u) * gwa_act(g, v)


# -- cyclic invariants --------------------------------------------------------------------


def test_cyclic_invariant_examples():
    A = catalog("weyl", 1)
    h = A.ring.gen(0)
    inv = cyclic_invariant_gwa(A, 2)
    assert inv.child.a[0] == h * (h + 1)
    assert inv.child.sigma[0].apply(h) == h - 2
    assert cyclic_invariant_gwa(A, 1).child.a == A.a
    qp = catalog("quantum_plane", 1)
    child = cyclic_invariant_gwa(qp, 2).child
    hq = qp.ring.gen(0)
    assert child.a[0] == qp.ring.parse("q^-1*h1^2")
    assert child.sigma[0].apply(hq) == qp.ring.parse("q^2*h1")


@pytest.mark.parametrize("name", ["weyl", "quantum_plane", "quantum_weyl"])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_cyclic_oracle(name, m):
    A = catalog(name, 1)
    inv = cyclic_invariant_gwa(A, m)
    assert A.Y(0, m) * A.X(0, m) == A.scalar(inv.child.a[0])
    # the child relations transported back land in the parent
    c = inv.child
    assert inv.to_parent(c.Y(0) * c.X(0)) == inv.images["Y"] * inv.images["X"]
    assert inv.to_parent(c.X(0) * c.Y(0)) == inv.images["X"] * inv.images["Y"]


def test_cyclic_invariant_rank_check():
    with pytest.raises(ValueError):
        cyclic_invariant_gwa(catalog("weyl", 2), 2)


# -- invariant generators --------------------------------------------------------------


def test_invariant_generators_sn_example():
    A = weyl(2)
    gens = invariant_generators(A, 1, 1)
    ctx = A.skew_context()
    assert gens.labels[:2] == ["sum X_i^1", "sum Y_i^1"]
    assert gens.gwa_side[0] == A.X(0) + A.X(1)
    assert gens.images()[0] == ctx.e(1, 0) + ctx.e(0, 1)
    assert gens.images()[1] == ctx.e(-1, 0, coeff="h1") + ctx.e(0, -1, coeff="h2")


def test_invariant_generators_g222_adds_product():
    A = weyl(2, 2)
    gens = invariant_generators(A, 2, 2)
    ctx = A.skew_context()
    k = gens.labels.index("(X_1...X_n)^1")
    assert gens.gwa_side[k] == A.word((1, 1))
    assert gens.images()[k] == ctx.e(1, 1)
    y = gens.labels.index("sum Y_i^2")
    assert gens.images()[y] == ctx.e(-2, 0, coeff="h1*(h1 + 1)") + ctx.e(0, -2, coeff="h2*(h2 + 1)")


def test_p_not_dividing_m():
    with pytest.raises(ValueError, match="divide"):
        invariant_generators(weyl(2, 4), 4, 3)


@pytest.mark.parametrize("m,p,n", GMPN)
def test_invariant_generator_properties(m, p, n):
    gens = invariant_generators(weyl(n, m), m, p)
    assert gens.invariance_failures() == []
    assert gens.image_mismatches() == []
    assert gens.supports_generate(16)


@pytest.mark.parametrize("m,p,n", GMPN)
def test_monoid_reading_excludes_y_supports(m, p, n):
    # -m e_i (the support of Y_i^m) is not a nonnegative combination of the generators of M
    gens = invariant_generators(weyl(n, m), m, p, "monoid")
    assert not gens.supports_generate(16)
    assert not membership(gens.spec, (-m,) + (0,) * (n - 1))


@pytest.mark.parametrize("name", ["quantum_plane", "quantum_weyl"])
def test_invariant_generators_quantum(name):
    A = catalog(name, 2, field=ScalarField(2))
    gens = invariant_generators(A, 2, 2)
    assert gens.invariance_failures() == [] and gens.image_mismatches() == []


# -- decomposition -------------------------------------------------------------------------


def test_decomposition_examples():
    A = weyl(2, 2)
    (c,) = decomposition_check(A.word((1, 1)), 2, 2)
    assert c.k == 1 and c.cofactor_in_gwa and c.cofactor == A.one
    (c,) = decomposition_check(A.X(0, 2) + A.X(1, 2), 2, 2)
    assert c.k == 0
    assert decomposition_check(A.zero, 2, 2) == []


def test_decomposition_rejects_non_invariant():
    A = weyl(2, 2)
    with pytest.raises(NotInvariant):
        decomposition_check(A.X(0), 2, 2)


def test_decomposition_skew_cofactor():
    # Y1 Y2 is invariant with eigenvalue -1, but is not X1 X2 times an element of A_2
    A = weyl(2, 2)
    (c,) = decomposition_check(A.word((-1, -1)), 2, 2)
    assert c.k == 1 and not c.cofactor_in_gwa
    ctx = A.skew_context()
    assert ctx.e(1, 1) * c.cofactor == gwa_embed(A.word((-1, -1)))


@pytest.mark.parametrize("m,p,n", GMPN)
def test_decomposition_properties(m, p, n):
    A = weyl(n, m)
    group = group_elements(m, p, n)
    rng = random.Random(m + p + n)
    for _ in range(6):
        u = gwa_reynolds(group, random_element(A, rng, max_power=m))
        comps = decomposition_check(u, m, p)
        assert len(comps) <= p
        total = A.zero
        for c in comps:
            total = total + c.part
            # Xi - lambda_k kills component k; the Lagrange product isolates it
            lam = xi_eigenvalue(A, m, p, c.k)
            xi = ReflectionGroupElement.diagonal(m, (1,) + (0,) * (n - 1))
            assert gwa_act(xi, c.part) == c.part * lam
            assert spectral_projection(u, m, p, c.k) == c.part
            others = [d.part for d in comps if d.k != c.k]
            for part in others:
                assert xi_polynomial(part, m, p, exclude=c.k).is_zero
            assert xi_polynomial(c.part, m, p, exclude=c.k) == c.part * _lagrange_scale(A, m, p, c.k)
        assert total == u


def _lagrange_scale(A, m, p, k):
    lam = xi_eigenvalue(A, m, p, k)
    out = 1
    for i in range(p):
        if i != k:
            out = out * (lam - xi_eigenvalue(A, m, p, i))
    return out


def test_full_xi_product_vanishes():
    A = weyl(2, 4)
    group = group_elements(4, 2, 2)
    u = gwa_reynolds(group, A.word((1, 1), "h1 + 2") + A.X(0, 2) + A.Y(1, 4))
    assert xi_polynomial(u, 4, 2).is_zero


# -- principal and rational checks ------------------------------------------------------


def test_principal_examples():
    A = weyl(2)
    ctx = A.skew_context()
    S2 = symmetric_group(2)
    gamma = A.ring.parse("h1 + h2")
    rep = principal_check([ctx.e(1, 0) + ctx.e(0, 1)], [gamma], S2)
    assert rep.passed
    assert (ctx.e(1, 0) + ctx.e(0, 1)).evaluate(gamma) == A.ring.parse("2*(h1 + h2) - 2")
    assert principal_check([ctx.one], [gamma], S2).passed
    probe = ctx.one * A.ring.frac(1, A.ring.parse("h1 - h2"))
    bad = principal_check([probe], [A.ring.one], S2)
    assert not bad.passed and "not a polynomial" in bad.counterexamples[0][-1]


@pytest.mark.parametrize("m,p,n", [(1, 1, 2), (1, 1, 3)] + GMPN)
def test_principal_weyl(m, p, n):
    A = weyl(n, m)
    gens = invariant_generators(A, m, p).images()
    rep = principal_check(gens, gamma_samples(A.ring, n, random.Random(0)), group_elements(m, p, n))
    assert rep.passed and rep.checked == len(gens) * (n + 3)


@pytest.mark.parametrize("n", [2, 3])
def test_principal_torus(n):
    ctx = catalog("torus_diffops", n)
    rep = principal_check(torus_invariant_generators(ctx), gamma_samples(ctx.ring, n, random.Random(1)),
                          symmetric_group(n))
    assert rep.passed


@pytest.mark.parametrize("name", ["quantum_plane", "quantum_weyl"])
def test_principal_quantum(name):
    A = catalog(name, 2, field=ScalarField(2))
    gens = invariant_generators(A, 2, 2).images()
    rep = principal_check(gens, gamma_samples(A.ring, 2, random.Random(2)), group_elements(2, 2, 2))
    assert rep.passed


def test_rational_witness_examples():
    A = weyl(2)
    ctx = A.skew_context()
    R = A.ring
    S2 = symmetric_group(2)
    x = ctx.one * R.frac(1, R.parse("h1 - h2")) * (ctx.e(1, 0) - ctx.e(0, 1))
    assert rational_witness_check(x, dchi_sign_sn(2, R), S2)
    assert rational_witness_check(ctx.e(1, 0) + ctx.e(0, 1), R.one, S2)
    assert not rational_witness_check(ctx.e(1, 0, coeff="h1"), dchi_sign_sn(2, R), S2)
    # without d_chi the coefficients are not polynomial
    assert not rational_witness_check(x, R.one, S2)


def test_dchi_examples():
    R3 = PolyRing(ScalarField(), ("h1", "h2", "h3"))
    assert dchi_sign_sn(2) == PolyRing(ScalarField(), ("h1", "h2")).parse("h1 - h2")
    assert dchi_sign_sn(3, R3) == R3.parse("(h1 - h2)*(h1 - h3)*(h2 - h3)")
    d = dchi_sign_sn(3, R3)
    for g in symmetric_group(3):
        assert g.permute_poly(d) == d * g.sign()


def test_gamma_samples_are_symmetric():
    R = PolyRing(ScalarField(), ("h1", "h2", "h3"))
    samples = gamma_samples(R, 3, random.Random(9))
    assert len(samples) == 6
    assert all(g.permute_poly(f) == f for f in samples for g in symmetric_group(3))


def test_torus_generators_are_invariant():
    ctx = catalog("torus_diffops", 2)
    assert all(is_invariant(symmetric_group(2), u) for u in torus_invariant_generators(ctx))
    assert isinstance(ctx, SkewContext)
