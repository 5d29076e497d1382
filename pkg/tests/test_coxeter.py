from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltapoly import exact as ex
from deltapoly.coxeter import (NAMES, RootSystemError, build_root_system, coset_representatives,
                               dominance_leq, dominant_representative, enumerate_weyl, sharp)

ORDERS = {"A2": 6, "B2": 8, "G2": 12}
LONGEST = {"A2": 3, "B2": 4, "G2": 6}


def rationals(lo=-6, hi=6):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, 4))


def vectors(rs):
    if rs.sum_zero:
        return st.tuples(rationals(), rationals()).map(lambda t: (t[0], t[1], -t[0] - t[1]))
    return st.tuples(rationals(), rationals())


def dominant(rs, v):
    return dominant_representative(rs, v)[0]


def test_unknown_name():
    with pytest.raises(RootSystemError):
        build_root_system("F4")


def test_c2_is_b2():
    assert build_root_system("C2") is build_root_system("B2")


def test_tabulated_fundamental_weights():
    a2 = build_root_system("A2")
    assert a2.parabolic_weights == ex.mat([[1, 0, 0], [0, 0, -1]])
    b2 = build_root_system("B2")
    assert b2.parabolic_weights == ex.mat([[1, 0], [1, 1]])


def test_g2_long_root_ratio():
    g2 = build_root_system("G2")
    assert g2.pairing((1, 0), (1, 0)) == 3 * g2.pairing((0, 1), (0, 1))


@pytest.mark.parametrize("name", NAMES)
def test_weyl_group(name):
    rs = build_root_system(name)
    ws = enumerate_weyl(rs)
    assert len(ws) == ORDERS[name]
    mats = {w.matrix for w in ws}
    assert len(mats) == len(ws)
    for u in ws:
        for w in ws:
            assert ex.matmul(u.matrix, w.matrix) in mats
    assert ws[0].length == 0 and ws[0].matrix == ex.identity(rs.ambient_dim)
    assert max(w.length for w in ws) == LONGEST[name]
    assert [w for w in ws if w.length == LONGEST[name]] == [rs.longest]


@pytest.mark.parametrize("name", NAMES)
def test_words_are_reduced(name):
    rs = build_root_system(name)
    for w in rs.weyl_group:
        m = ex.identity(rs.ambient_dim)
        for i in w.word:
            m = ex.matmul(m, rs.simple_reflections[i - 1])
        assert m == w.matrix
        # no shorter word gives the same element
        assert w == rs.element(w.word)


@pytest.mark.parametrize("name", NAMES)
def test_reflections_are_isometric_involutions(name):
    rs = build_root_system(name)
    for s in rs.simple_reflections:
        assert ex.matmul(s, s) == ex.identity(rs.ambient_dim)
        assert ex.matmul(ex.matmul(ex.transpose(s), rs.gram), s) == rs.gram


@pytest.mark.parametrize("name", NAMES)
def test_chamber_nonnegative_on_coweights(name):
    rs = build_root_system(name)
    for zeta in rs.fundamental_coweights:
        assert all(ex.dot(a, zeta) >= 0 for a in rs.chamber_inequalities)
        assert rs.is_dominant(zeta)


@pytest.mark.parametrize("name", NAMES)
def test_longest_flips_chamber(name):
    rs = build_root_system(name)
    w0 = rs.longest
    for zeta in rs.fundamental_coweights:
        for a in rs.chamber_inequalities:
            assert ex.dot(a, w0(zeta)) <= 0


@pytest.mark.parametrize("name", NAMES)
def test_coset_lengths(name):
    rs = build_root_system(name)
    for i in (1, 2):
        reps = coset_representatives(rs, i)
        assert sorted(w.length for w in reps) == list(range(LONGEST[name]))


def test_dominant_representative_examples():
    b2 = build_root_system("B2")
    d, w = dominant_representative(b2, (-1, 2))
    assert d == ex.vec((2, 1)) and w.length >= 1 and w(d) == ex.vec((-1, 2))
    a2 = build_root_system("A2")
    d, w = dominant_representative(a2, (-1, -1, 2))
    assert d == ex.vec((2, -1, -1))
    d, w = dominant_representative(a2, (2, 0, -2))
    assert d == ex.vec((2, 0, -2)) and w.length == 0


def test_sharp_examples():
    a2 = build_root_system("A2")
    assert sharp(a2, (2, -1, -1)) == ex.vec((1, 1, -2))
    assert sharp(a2, (0, 0, 0)) == ex.vec((0, 0, 0))
    b2 = build_root_system("B2")
    assert sharp(b2, (3, 1)) == ex.vec((3, 1))


def test_dominance_examples():
    b2 = build_root_system("B2")
    assert dominance_leq(b2, (0, 0), (1, 0))
    assert dominance_leq(b2, (1, 0), (1, 0))
    a2 = build_root_system("A2")
    assert not dominance_leq(a2, (2, -1, -1), (1, 1, -2))


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_pairing_is_weyl_invariant(name, data):
    rs = build_root_system(name)
    u = data.draw(vectors(rs))
    v = data.draw(vectors(rs))
    for w in rs.weyl_group:
        assert rs.pairing(w(u), w(v)) == rs.pairing(u, v)


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_dominant_part_is_orbit_invariant(name, data):
    rs = build_root_system(name)
    v = data.draw(vectors(rs))
    d = dominant(rs, v)
    assert rs.is_dominant(d)
    for w in rs.weyl_group:
        assert dominant(rs, w(v)) == d


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_sharp_is_involution_preserving_dominance(name, data):
    rs = build_root_system(name)
    a = dominant(rs, data.draw(vectors(rs)))
    b = dominant(rs, data.draw(vectors(rs)))
    assert sharp(rs, sharp(rs, a)) == a
    assert rs.is_dominant(sharp(rs, a))
    # -w0 permutes the fundamental weights, so the dominance order is preserved
    assert dominance_leq(rs, a, b) == dominance_leq(rs, sharp(rs, a), sharp(rs, b))


@pytest.mark.parametrize("name", NAMES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_dominance_matches_functionals(name, data):
    rs = build_root_system(name)
    a = data.draw(vectors(rs))
    b = data.draw(vectors(rs))
    expected = all(ex.dot(lam, ex.sub(b, a)) >= 0 for lam in rs.parabolic_weights)
    assert dominance_leq(rs, a, b) == expected
