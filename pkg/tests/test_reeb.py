import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcap import domains as dm
from symcap import reeb
from symcap.errors import EnumerationLimit, InvalidDomain
from symcap.reeb import SpectrumQuery

from conftest import ellipsoid_params
from oracles import cz_by_counting, random_nondegenerate, resonant, sorted_actions


def key(o):
    return (o.axis, o.multiplicity)


def test_orbit_examples():
    o = reeb.orbit(dm.ellipsoid(2, 3), 1, 2)
    assert (o.action, o.cz, o.degenerate) == (4, 7, False)
    assert reeb.orbit(dm.ellipsoid(1, F(5, 2)), 1, 2).cz == 5
    o = reeb.orbit(dm.ellipsoid(2, 3), 1, 3)
    assert o.action == 6 and o.degenerate


def test_orbit_rejects_bad_indices():
    E = dm.ellipsoid(1, 2)
    with pytest.raises(ValueError):
        reeb.orbit(E, 3, 1)
    with pytest.raises(ValueError):
        reeb.orbit(E, 1, 0)
    with pytest.raises(InvalidDomain):
        reeb.orbit(dm.polydisk(1, 2), 1, 1)


def test_enumerate_examples():
    got = reeb.enumerate_orbits(dm.ellipsoid(2, 3), SpectrumQuery(max_action=6))
    assert [(key(o), o.action) for o in got] == [
        ((1, 1), 2), ((2, 1), 3), ((1, 2), 4), ((1, 3), 6), ((2, 2), 6),
    ]
    got = reeb.enumerate_orbits(dm.ellipsoid(1), SpectrumQuery(max_count=3))
    assert [key(o) for o in got] == [(1, 1), (1, 2), (1, 3)]
    assert reeb.enumerate_orbits(dm.ellipsoid(2, 3), SpectrumQuery(max_action=1)) == []


def test_query_needs_exactly_one_bound():
    with pytest.raises(ValueError):
        SpectrumQuery()
    with pytest.raises(ValueError):
        SpectrumQuery(max_action=F(1), max_count=2)
    with pytest.raises(ValueError):
        SpectrumQuery(max_count=0)


def test_orbits_with_cz_examples():
    got = reeb.orbits_with_cz(dm.ellipsoid(1, F(5, 2)), 5, 10)
    assert [key(o) for o in got] == [(1, 2)]
    assert reeb.orbits_with_cz(dm.ellipsoid(2, 3), 2, 100) == []
    for m in range(1, 6):
        assert [key(o) for o in reeb.orbits_with_cz(dm.ellipsoid(1), 2 * m, m)] == [(1, m)]


def test_nondegeneracy_report_examples():
    assert reeb.nondegeneracy_report(dm.ellipsoid(2, 3), 6) == [(1, 3, 2), (2, 2, 1)]
    assert reeb.nondegeneracy_report(dm.ellipsoid(1, F(5, 2), F(13, 3)), 2) == []
    assert reeb.nondegeneracy_report(dm.ellipsoid(F(7, 3)), 100) == []


def test_enumeration_cap(monkeypatch):
    monkeypatch.setenv("SYMCAP_MAX_ENUM", "10")
    with pytest.raises(EnumerationLimit):
        reeb.enumerate_orbits(dm.ellipsoid(1, 2), SpectrumQuery(max_action=100))
    assert len(reeb.enumerate_orbits(dm.ellipsoid(1, 2), SpectrumQuery(max_action=5))) == 7


@given(ellipsoid_params(), st.integers(1, 40))
def test_sorted_spectrum_matches_heap_merge(a, count):
    E = dm.ellipsoid(*a)
    got = [o.action for o in reeb.enumerate_orbits(E, SpectrumQuery(max_count=count))]
    assert got == sorted_actions(E.shape.a, count)


@given(ellipsoid_params(), st.integers(1, 12))
def test_orbit_invariants(a, m):
    E = dm.ellipsoid(*a)
    n = E.n
    for j in range(1, n + 1):
        o = reeb.orbit(E, j, m)
        assert o.cz == cz_by_counting(E.shape.a, j, m)
        assert o.cz % 2 == (n - 1) % 2
        assert o.good
        assert o.action == m * reeb.orbit(E, j, 1).action
        assert reeb.orbit(E, j, m + 1).cz >= o.cz + 2


def test_bad_orbit_test_never_fires_on_ellipsoids():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(1, 4)
        E = dm.ellipsoid(*(F(rng.randint(1, 30), rng.randint(1, 7)) for _ in range(n)))
        j, m = rng.randint(1, n), rng.randint(1, 20)
        o = reeb.orbit(E, j, m)
        assert not reeb.is_bad(o.cz, reeb.orbit(E, j, 1).cz)


def test_bad_orbit_rule_itself():
    assert reeb.is_bad(4, 1)
    assert not reeb.is_bad(5, 1)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_kth_orbit_has_degree_n_minus_1_plus_2k(n, rng):
    E = dm.ellipsoid(*random_nondegenerate(rng, n, cap_count=50))
    orbits = reeb.enumerate_orbits(E, SpectrumQuery(max_count=50))
    for k, o in enumerate(orbits, 1):
        assert o.cz == n - 1 + 2 * k
        assert reeb.orbits_with_cz(E, o.cz, o.action) == [o]


@given(ellipsoid_params(3))
def test_report_agrees_with_brute_force_resonance(a):
    E = dm.ellipsoid(*a)
    cap = 4 * E.shape.a[-1]
    assert bool(reeb.nondegeneracy_report(E, cap)) == resonant(E.shape.a, cap)


@given(ellipsoid_params(3), st.integers(1, 25))
def test_degenerate_flag_matches_report(a, count):
    E = dm.ellipsoid(*a)
    orbits = reeb.enumerate_orbits(E, SpectrumQuery(max_count=count))
    flagged = {key(o) for o in orbits if o.degenerate}
    reported = {(j, m) for j, m, _ in reeb.nondegeneracy_report(E, orbits[-1].action)}
    assert flagged <= reported
    # the report also lists orbits past the count with the same top action
    assert {k for k in reported if k in {key(o) for o in orbits}} == flagged
