"""Exponent homomorphism, dot-action, Θ-elements, change of basis, relation."""

import random

import pytest

from parahecke.bernstein import Bernstein, GroupAlgElt
from parahecke.errors import NotAntidominant, UnsupportedParameters
from parahecke.hecke import IwahoriHecke
from parahecke.ringcore import LaurentPoly
from parahecke.rootdatum import load_bundled

Q = LaurentPoly.q()


@pytest.fixture(scope="module")
def B1():
    return Bernstein(IwahoriHecke.for_datum(load_bundled("a1")))


@pytest.fixture(scope="module")
def Bt2():
    return Bernstein(IwahoriHecke.for_datum(load_bundled("a1_torsion2")))


@pytest.fixture(scope="module")
def B2():
    return Bernstein(IwahoriHecke.for_datum(load_bundled("a2")))


@pytest.fixture(scope="module")
def Bc2():
    return Bernstein(IwahoriHecke.for_datum(load_bundled("c2")))


@pytest.fixture(scope="module")
def Bu():
    return Bernstein(IwahoriHecke.for_datum(load_bundled("a1_unequal")))


def lat(B, free, tors=None):
    return B.datum.lattice(free, tors)


def test_exponent_examples(B1, Bu):
    assert B1.exponent_E(lat(B1, [0])) == 0
    assert B1.exponent_E(lat(B1, [-1])) == 2
    assert B1.exponent_E(lat(B1, [1])) == -2
    # unequal parameters: L(t_{-coroot}) = L(s1) + L(s0) = 4
    assert Bu.exponent_E(lat(Bu, [-1])) == 4
    assert Bu.exponent_E(lat(Bu, [1])) == -4


def test_exponent_is_homomorphism(Bc2):
    d = Bc2.datum
    samples = [lat(Bc2, [a, b]) for a in (-2, -1, 0, 1, 2) for b in (-2, 0, 1)]
    for m1 in samples[:8]:
        for m2 in samples[:8]:
            assert Bc2.exponent_E(d.add(m1, m2)) == Bc2.exponent_E(m1) + Bc2.exponent_E(m2)


def test_dot_action_examples(B1):
    d = B1.datum
    r = GroupAlgElt.basis(d, lat(B1, [-1]))
    moved = B1.dot_act(1, r)  # the finite reflection has Weyl index 1
    assert moved == GroupAlgElt.basis(d, lat(B1, [1]), Q * Q)
    z = GroupAlgElt.basis(d, d.zero)
    assert B1.dot_act(1, z) == z


def test_dot_action_is_action(Bc2):
    d = Bc2.datum
    r = GroupAlgElt.basis(d, lat(Bc2, [-1, 0])) + GroupAlgElt.basis(d, lat(Bc2, [2, 1]), Q)
    for a in range(d.w_order):
        for b in range(d.w_order):
            ab = d.w_mult[a][b]
            assert Bc2.dot_act(a, Bc2.dot_act(b, r)) == Bc2.dot_act(ab, r)


def test_orbit_sums(B1, Bt2):
    d = B1.datum
    assert B1.orbit_sum_r(d.zero) == GroupAlgElt.basis(d, d.zero)
    r = B1.orbit_sum_r(lat(B1, [-1]))
    want = GroupAlgElt(d, {lat(B1, [-1]): LaurentPoly.one(), lat(B1, [1]): Q * Q})
    assert r == want
    dt = Bt2.datum
    rt = Bt2.orbit_sum_r(lat(Bt2, [-1], [1]))
    assert rt == GroupAlgElt(
        dt, {lat(Bt2, [-1], [1]): LaurentPoly.one(), lat(Bt2, [1], [1]): Q * Q}
    )
    with pytest.raises(NotAntidominant):
        B1.orbit_sum_r(lat(B1, [1]))


def test_orbit_sum_coefficients_nonneg_q_powers(Bc2):
    for m, _ in Bc2.datum.antidominant_set(2):
        for mu, p in Bc2.orbit_sum_r(m).d.items():
            assert len(p.d) == 1
            (e, c), = p.d.items()
            assert c == 1 and e >= 0 and e % 2 == 0


def test_theta_antidominant_is_basis(Bc2):
    H = Bc2.H
    for m, _ in Bc2.datum.antidominant_set(2):
        assert Bc2.theta(m) == H.basis_translation(m)
    assert Bc2.theta(Bc2.datum.zero) == H.one()


def test_theta_dominant_explicit_expansion(B1):
    """Θ at the positive coroot is the inverse of i at the negative one."""
    H, W = B1.H, B1.W
    got = B1.theta(lat(B1, [1]))
    inv, _ = H.im_invert_basis(W.elt([-1]))
    assert got == inv
    qinv2 = LaurentPoly.v_power(-4)
    want = (
        H.basis_translation(lat(B1, [1]))
        + (H.basis(W.gen(0)) + H.basis(W.gen(1))).scale(1 - Q)
        + (1 - Q) * (1 - Q)
    ).scale(qinv2)
    assert got == want


def test_theta_choice_independence(Bc2):
    d = Bc2.datum
    for m in [lat(Bc2, [1, 0]), lat(Bc2, [0, 1]), lat(Bc2, [2, -1]), lat(Bc2, [-1, 2])]:
        assert Bc2.theta_choice_independent(m)


def test_theta_multiplicative(Bc2):
    d = Bc2.datum
    samples = [lat(Bc2, [a, b]) for a in (-1, 0, 1) for b in (-1, 0, 1)]
    for m1 in samples:
        for m2 in samples:
            lhs = Bc2.H.mul(Bc2.theta(m1), Bc2.theta(m2))
            assert lhs == Bc2.theta(d.add(m1, m2))


def test_theta_two_sided(B2):
    """i_{m+m∘} * inv(i_{m∘}) = inv(i_{m∘}) * i_{m+m∘}."""
    d, H, W = B2.datum, B2.H, B2.W
    for m in [lat(B2, [1, 0]), lat(B2, [1, 1]), lat(B2, [-1, 2])]:
        mc = B2.m_circ(m)
        inv, _ = H.im_invert_basis(W.translation(mc))
        top = H.basis_translation(d.add(m, mc))
        assert H.mul(top, inv) == H.mul(inv, top) == B2.theta(m)


def test_im_to_bern_basics(Bc2):
    H, W = Bc2.H, Bc2.W
    for wi in range(Bc2.datum.w_order):
        b = Bc2.im_to_bern(H.basis(W.finite(wi)))
        assert b.d == {(Bc2.datum.zero, wi): LaurentPoly.one()}
    for m, _ in Bc2.datum.antidominant_set(2):
        b = Bc2.im_to_bern(H.basis_translation(m))
        assert b.d == {(m, 0): LaurentPoly.one()}


def test_change_basis_roundtrip(Bc2):
    H, W = Bc2.H, Bc2.W
    rng = random.Random(17)
    ball = W.ball(5)
    for _ in range(25):
        h = H.zero()
        for _ in range(rng.randint(1, 4)):
            h = h + H.basis(rng.choice(ball)).scale(LaurentPoly({rng.randint(-2, 2): rng.randint(-3, 3)}))
        assert Bc2.bern_to_im(Bc2.im_to_bern(h)) == h


def test_change_basis_roundtrip_with_omega(Bt2):
    H, W = Bt2.H, Bt2.W
    rng = random.Random(23)
    ball = W.ball(4)
    for _ in range(10):
        h = H.basis(rng.choice(ball)) + H.basis(rng.choice(ball)).scale(Q)
        assert Bt2.bern_to_im(Bt2.im_to_bern(h)) == h


def test_bernstein_slots_stay_in_bruhat_ideal(Bc2):
    """Coordinates of i_w live on pairs (m, u) with t_m·u ≤ w."""
    H, W = Bc2.H, Bc2.W
    for w in W.ball(3):
        b = Bc2.im_to_bern(H.basis(w))
        for (m, wi) in b.d:
            x = W.compose(W.translation(m), W.finite(wi))
            assert W.bruhat_le(x, w)


def test_vee_theta_identity(Bc2):
    """(Θ_m)∨ = (i_{w∘})^{-1} * Θ_{-w∘(m)} * i_{w∘}."""
    d, H, W = Bc2.datum, Bc2.H, Bc2.W
    w0 = d.longest_w
    inv_w0, _ = H.im_invert_basis(W.finite(w0))
    for m in [lat(Bc2, [-1, 0]), lat(Bc2, [1, 1]), lat(Bc2, [2, -1]), d.zero]:
        lhs = H.vee_involution(Bc2.theta(m))
        mm = d.neg(d.act(w0, m))
        rhs = H.mul(H.mul(inv_w0, Bc2.theta(mm)), H.basis(W.finite(w0)))
        assert lhs == rhs


def test_orbit_sums_are_central(B2):
    H, W = B2.H, B2.W
    for m, _ in B2.datum.antidominant_set(2):
        z = B2.theta_of(B2.orbit_sum_r(m))
        for i in range(1, B2.datum.n_simple + 1):
            s = H.basis(W.gen(i))
            assert H.mul(z, s) == H.mul(s, z)


def test_bernstein_relation(B1, B2):
    assert B1.bernstein_relation_check(B1.datum.zero, 1)
    assert B1.bernstein_relation_check(lat(B1, [-1]), 1)
    assert B1.bernstein_relation_check(lat(B1, [2]), 1)
    for m, _ in B2.datum.antidominant_set(2):
        for i in (1, 2):
            assert B2.bernstein_relation_check(m, i)


def test_bernstein_relation_rejects_unequal(Bu):
    with pytest.raises(UnsupportedParameters):
        Bu.bernstein_relation_check(lat(Bu, [-1]), 1)


def test_expand_over_orbit_sums(Bc2):
    d = Bc2.datum
    ms = [m for m, _ in d.antidominant_set(2)]
    combo = GroupAlgElt.zero(d)
    coeffs = {}
    rng = random.Random(4)
    for m in ms[:4]:
        c = LaurentPoly({rng.randint(-1, 2): rng.randint(1, 3)})
        coeffs[m] = c
        combo = combo + Bc2.orbit_sum_r(m).scale(c)
    got = Bc2.expand_over_orbit_sums(combo)
    assert got == coeffs


def test_c_integrality_on_equal_parameter_data(B2):
    d = B2.datum
    for m, _ in d.antidominant_set(2):
        for mu in d.orbit(m):
            for wi in range(d.w_order):
                diff = B2.exponent_E(mu) - B2.exponent_E(d.act(wi, mu))
                assert diff % 2 == 0
