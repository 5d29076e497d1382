import itertools
import random
from fractions import Fraction

import pytest

from deltapoly.coxeter import NAMES, build_root_system
from deltapoly.inequalities import (InequalityError, LinearInequality, membership, orbit_representatives,
                                    stability_system, system, weak_geometric_test, weak_ordered_test,
                                    weak_system)
from reference_tables import GENERATORS, ORBIT_GROUPS, REDUNDANT_GROUPS


def rep(rows):
    return LinearInequality.make(rows).orbit_representative()


def random_dominant(rs, rng, bound=6):
    while True:
        if rs.sum_zero:
            a, b = sorted((Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(2)),
                          reverse=True)
            c = -a - b
            v = tuple(sorted((a, b, c), reverse=True))
        else:
            v = tuple(Fraction(rng.randint(0, bound), rng.randint(1, 3)) for _ in range(2))
        if rs.is_dominant(v):
            return v


@pytest.mark.parametrize("key", sorted(ORBIT_GROUPS))
def test_orbit_groups_match_tables(key):
    rs = build_root_system(key[0])
    sys_ = stability_system(rs, 3, with_chamber=False)
    got = orbit_representatives(sys_, grassmannian=key[1])
    assert got == sorted(rep(r) for r in ORBIT_GROUPS[key])


def orbit(rows):
    return {tuple(rows[i] for i in p) for p in itertools.permutations(range(len(rows)))}


@pytest.mark.parametrize("name", NAMES)
def test_stability_system_is_union_of_orbits(name):
    rs = build_root_system(name)
    expected = set()
    for (rname, _), groups in ORBIT_GROUPS.items():
        if rname == name:
            for g in groups:
                expected |= orbit(LinearInequality.make(g).coefficients)
    assert stability_system(rs, 3, with_chamber=False).coefficient_set() == expected


@pytest.mark.parametrize("name", NAMES)
def test_weak_system_drops_exactly_redundant_orbits(name):
    # at n = 3 the weak inequalities are the stability ones minus the redundant orbits
    rs = build_root_system(name)
    dropped = set()
    for g in REDUNDANT_GROUPS[name]:
        dropped |= orbit(LinearInequality.make(g).coefficients)
    stab = stability_system(rs, 3, with_chamber=False).coefficient_set()
    assert weak_system(rs, 3, with_chamber=False).coefficient_set() == stab - dropped


@pytest.mark.parametrize("name", NAMES)
def test_generators_are_members(name):
    rs = build_root_system(name)
    sys_ = system(rs, 3)
    for g in GENERATORS[name]:
        assert membership(sys_, g).member


def test_member_example_b2():
    sys_ = system(build_root_system("B2"), 3)
    assert membership(sys_, [(1, 1), (1, 1), (2, 0)]).member
    res = membership(sys_, [(1, 1), (1, 1), (5, 0)])
    assert not res.member and res.violated


def test_named_violation_a2():
    # h = ((2,-1,-1), eps (1,0,-1), eps (1,0,-1)) breaks x_1 + z_2 + z_3 <= 0
    e = Fraction(1, 10)
    hs = [(2, -1, -1), (e, 0, -e), (e, 0, -e)]
    res = membership(system(build_root_system("A2"), 3), hs)
    named = LinearInequality.make([(1, 0, 0), (0, 0, 1), (0, 0, 1)])
    assert named in res.violated


def test_non_dominant_rejected():
    with pytest.raises(InequalityError):
        membership(system(build_root_system("B2"), 3), [(0, 1), (1, 0), (1, 0)])


def test_n_limits():
    rs = build_root_system("A2")
    with pytest.raises(InequalityError):
        system(rs, 2)
    with pytest.raises(InequalityError):
        system(rs, 9)
    assert len(system(rs, 9, max_sides=9, with_chamber=False)) > 0


@pytest.mark.parametrize("name", NAMES)
def test_permutation_invariance(name):
    rs = build_root_system(name)
    sys_ = system(rs, 4, with_chamber=False)
    coeffs = sys_.coefficient_set()
    for q in sys_:
        for perm in itertools.permutations(range(4)):
            assert q.permuted(perm).coefficients in coeffs


@pytest.mark.parametrize("name", NAMES)
def test_membership_invariances(name):
    rs = build_root_system(name)
    sys_ = system(rs, 3)
    rng = random.Random(7)
    for _ in range(50):
        hs = [random_dominant(rs, rng) for _ in range(3)]
        m = membership(sys_, hs).member
        for perm in itertools.permutations(range(3)):
            assert membership(sys_, [hs[i] for i in perm]).member == m
        t = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert membership(sys_, [tuple(t * x for x in h) for h in hs]).member == m


@pytest.mark.parametrize("name", NAMES)
def test_weak_tests_agree_on_random_triples(name):
    rs = build_root_system(name)
    sys12 = weak_system(rs, 3, with_chamber=False, roles=(1, 2))
    rng = random.Random(3)
    for _ in range(100):
        hs = [random_dominant(rs, rng) for _ in range(3)]
        expected = all(q.evaluate(hs) <= 0 for q in sys12)
        assert weak_geometric_test(rs, hs) == expected
        assert weak_ordered_test(rs, hs) == expected


def test_text_round_trip():
    for q in system(build_root_system("G2"), 3, "weak"):
        assert LinearInequality.from_text(q.to_text()) == q


def test_from_text_errors():
    with pytest.raises(InequalityError):
        LinearInequality.from_text("1 0 | 0 1 >= 0")
    with pytest.raises(InequalityError):
        LinearInequality.from_text("1 0 | 0 <= 0")
