from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symcap import capacities as cap
from symcap import domains as dm
from symcap import lch

from conftest import ellipsoid_params, rationals
from oracles import random_nondegenerate


def table_keys(t):
    return {d: [(o.axis, o.multiplicity) for o in gens] for d, gens in t.generators_by_degree.items()}


def test_table_examples():
    t = lch.lch_table(dm.ellipsoid(1, F(3, 2)), F(5, 2))
    assert table_keys(t) == {3: [(1, 1)], 5: [(2, 1)], 7: [(1, 2)]}
    assert t.certificate.parity == 1 and t.certificate.differential_vanishes
    t = lch.lch_table(dm.ellipsoid(1, F(5, 2), F(7, 2)), 2)
    assert table_keys(t) == {4: [(1, 1)], 6: [(1, 2)]}
    t = lch.lch_table(dm.ellipsoid(2, 3), 1)
    assert t.generators_by_degree == {} and t.certificate.all_degrees_same_parity


def test_rank_examples():
    assert lch.lch_rank(dm.ellipsoid(1, F(5, 2)), 5, 10) == 1
    assert lch.lch_rank(dm.ellipsoid(1, F(3, 2)), 4, 100) == 0
    for k in range(1, 6):
        assert lch.lch_rank(dm.ellipsoid(1), 2 * k, k) == 1


def test_augmentation_examples():
    r = lch.augmentation(dm.ellipsoid(1, F(5, 2), F(7, 2)), 2)
    assert (r.witness_orbit.axis, r.witness_orbit.multiplicity) == (1, 2)
    assert r.curve_count == 1 and r.value_nonzero and r.hypothesis_met
    r = lch.augmentation(dm.ellipsoid(1, F(3, 2)), 1)
    assert r.witness_orbit.multiplicity == 1 and r.curve_count == 1
    r = lch.augmentation(dm.ellipsoid(1), 3)
    assert r.hypothesis_met and r.marker_weighted_count == 3
    with pytest.raises(ValueError):
        lch.augmentation(dm.ellipsoid(1), 0)


def test_augmentation_outside_hypothesis_is_flagged():
    r = lch.augmentation(dm.ellipsoid(1, F(3, 2)), 2)
    assert not r.hypothesis_met and r.value_nonzero
    assert r.curve_count is None and "extrapolated" in r.provenance
    assert (r.witness_orbit.axis, r.witness_orbit.multiplicity) == (2, 1)


def test_g_k_examples():
    assert lch.g_k_from_lch(dm.ellipsoid(1, F(3, 2)), 2) == F(3, 2)
    assert lch.g_k_from_lch(dm.ellipsoid(1, F(5, 2)), 2) == 2
    for k in range(1, 6):
        assert lch.g_k_from_lch(dm.ellipsoid(F(4, 3)), k) == k * F(4, 3)


def test_g_k_on_resonant_ellipsoid():
    E = dm.ellipsoid(1, 2)
    assert [lch.g_k_from_lch(E, k) for k in range(1, 8)] == [cap.cgh_ellipsoid(E, k) for k in range(1, 8)]


@given(ellipsoid_params(), rationals(1, 10, 3), rationals(0, 5, 3))
def test_table_monotone_in_cap(a, c1, extra):
    E = dm.ellipsoid(*a)
    small, big = lch.lch_table(E, c1), lch.lch_table(E, c1 + extra)
    for d, gens in small.generators_by_degree.items():
        assert set(gens) <= set(big.generators_by_degree[d])
        assert all(o.action <= c1 and o.good for o in gens)
    assert big.certificate.parity == (E.n - 1) % 2


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_g_k_equals_cgh_and_is_nondecreasing(n, rng):
    E = dm.ellipsoid(*random_nondegenerate(rng, n))
    values = [lch.g_k_from_lch(E, k) for k in range(1, 31)]
    assert values == [cap.cgh_ellipsoid(E, k) for k in range(1, 31)]
    assert values == sorted(values)
