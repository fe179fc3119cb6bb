"""Group law, length anchors, reduced words, Bruhat order."""

import pytest

from parahecke.affweyl import AffineWeylGroup
from parahecke.rootdatum import load_bundled


@pytest.fixture(scope="module")
def a1():
    return AffineWeylGroup(load_bundled("a1"))


@pytest.fixture(scope="module")
def a1t2():
    return AffineWeylGroup(load_bundled("a1_torsion2"))


@pytest.fixture(scope="module")
def gl2():
    return AffineWeylGroup(load_bundled("gl2"))


@pytest.fixture(scope="module")
def c2():
    return AffineWeylGroup(load_bundled("c2"))


def test_compose_examples(a1):
    s = a1.gen(1)
    s0 = a1.gen(0)
    assert a1.compose(s, s) == a1.identity
    # s · s0 = t_{-coroot}
    assert a1.compose(s, s0) == a1.elt([-1])
    x = a1.elt([3], w=1)
    assert a1.compose(a1.identity, x) == x


def test_inverse_examples(a1):
    s = a1.gen(1)
    assert a1.inverse(s) == s
    t = a1.elt([-1])
    assert a1.inverse(t) == a1.elt([1])
    s0 = a1.gen(0)
    assert a1.inverse(s0) == s0  # -s(coroot) = coroot
    for x in a1.ball(4):
        assert a1.compose(x, a1.inverse(x)) == a1.identity


def test_length_examples(a1):
    assert a1.lengths(a1.identity) == (0, 0)
    assert a1.length(a1.elt([-1])) == 2
    assert a1.length(a1.compose(a1.elt([-1]), a1.gen(1))) == 3


def test_weighted_length_unequal():
    g = AffineWeylGroup(load_bundled("a1_unequal"))
    t = g.elt([-1])  # reduced word s1 s0: L = 1 + 3
    assert g.lengths(t) == (2, 4)
    assert g.weighted_length(g.gen(0)) == 3


def test_reduced_word_examples(a1, a1t2, gl2):
    word, om = a1.reduced_word(a1.elt([-1]))
    assert word == (1, 0) and om == a1.identity
    tau = a1t2.elt([0], [1])
    assert a1t2.reduced_word(tau) == ((), tau)
    x = gl2.compose(gl2.elt([1, 0]), gl2.finite(1))
    assert gl2.length(x) == 0
    assert gl2.reduced_word(x) == ((), x)


def test_reduced_words_recompose(c2):
    for x in c2.ball(5):
        word, om = c2.reduced_word(x)
        assert len(word) == c2.length(x)
        assert c2.compose(c2.word_to_elt(word), om) == x


def test_length_inverse_invariance(c2):
    for x in c2.ball(4):
        assert c2.length(x) == c2.length(c2.inverse(x))


def test_antidominant_additivity(c2):
    d = c2.datum
    ms = [m for m, _ in d.antidominant_set(2)]
    for m1 in ms:
        for m2 in ms:
            t1, t2 = c2.translation(m1), c2.translation(m2)
            assert c2.length(c2.compose(t1, t2)) == c2.length(t1) + c2.length(t2)
        for wi in range(d.w_order):
            tw = c2.compose(c2.translation(m1), c2.finite(wi))
            assert c2.length(tw) == c2.length(c2.translation(m1)) + d.w_len[wi]


def test_conjugation_invariance(c2):
    d = c2.datum
    for m, _ in d.antidominant_set(2):
        base = c2.length(c2.translation(m))
        for wi in range(d.w_order):
            assert c2.length(c2.translation(d.act(wi, m))) == base


def test_bruhat_examples(a1):
    s0, s1 = a1.gen(0), a1.gen(1)
    s1s0 = a1.compose(s1, s0)
    assert a1.bruhat_le(a1.identity, s1s0)
    assert a1.bruhat_le(s0, s1s0)
    assert not a1.bruhat_le(s1, s0)


def test_bruhat_is_partial_order_refining_length(c2):
    ball = c2.ball(3)
    for x in ball:
        assert c2.bruhat_le(x, x)
        for y in ball:
            if c2.bruhat_le(x, y):
                assert c2.length(x) <= c2.length(y)
                if c2.length(x) == c2.length(y):
                    assert x == y
                for z in ball:
                    if c2.bruhat_le(y, z):
                        assert c2.bruhat_le(x, z)


def test_bruhat_needs_equal_omega(a1t2):
    tau = a1t2.elt([0], [1])
    s1 = a1t2.gen(1)
    assert not a1t2.bruhat_le(tau, s1)
    assert a1t2.bruhat_le(tau, a1t2.compose(s1, tau))


def test_omega_samples(gl2, a1, a1t2):
    oms = gl2.omega_samples()
    assert gl2.identity in oms
    assert any(x != gl2.identity for x in oms)
    assert all(gl2.length(x) == 0 for x in oms)
    assert a1.omega_samples() == [a1.identity]
    assert len(a1t2.omega_samples()) == 2


def test_parse_print_roundtrip(a1t2, gl2):
    for g in (a1t2, gl2):
        for x in g.ball(3):
            assert g.parse_elt(g.format_elt(x)) == x
    assert gl2.parse_elt("t[1,0]·w[1]") == gl2.compose(gl2.elt([1, 0]), gl2.finite(1))
    assert a1t2.parse_elt("s1*s0") == a1t2.compose(a1t2.gen(1), a1t2.gen(0))
