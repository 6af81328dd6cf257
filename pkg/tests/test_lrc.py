"""Code parameters: distance, locality search, bounds, structure theorem."""

from itertools import combinations
from random import Random

import pytest

from lrcmat import construct, fixtures, lrc, zlattice
from lrcmat.bitset import full_mask, mask_of
from lrcmat.errors import CapacityError, DomainError, UndefinedParameterError
from lrcmat.matroid import UniformMatroid


def oracle_min_distance(m):
    """Definitional oracle: smallest erasure set that loses rank."""
    k = m.full_rank
    for t in range(1, m.n + 1):
        for combo in combinations(range(m.n), t):
            erased = mask_of(combo, m.n)
            if m.rank(full_mask(m.n) & ~erased) < k:
                return t
    raise AssertionError("no erasure reduced the rank")


@pytest.fixture(scope="module")
def storage():
    m = fixtures.storage12_matroid()
    m.precompute_ranks()
    return m


@pytest.fixture(scope="module")
def graph27_matroid():
    return construct.graph_construction(fixtures.graph27(), *fixtures.GRAPH27_PARAMS)


def test_min_distance_storage12(storage):
    assert lrc.min_distance(storage) == 3
    assert lrc.min_distance_bruteforce(storage) == 3
    assert oracle_min_distance(storage) == 3


def test_min_distance_uniform():
    for n, k in [(10, 4), (6, 5), (5, 1)]:
        u = UniformMatroid(n, k)
        assert lrc.min_distance(u) == n - k + 1
        assert oracle_min_distance(u) == n - k + 1


def test_min_distance_graph27(graph27_matroid):
    assert lrc.min_distance(graph27_matroid) == 11


def test_min_distance_routes_agree_on_fixtures():
    for name, m, _ in fixtures.fixture_matroids():
        try:
            d = lrc.min_distance(m)
        except UndefinedParameterError:
            continue
        assert d == oracle_min_distance(m), name


def test_min_distance_undefined():
    with pytest.raises(UndefinedParameterError):
        lrc.min_distance(UniformMatroid(5, 0))
    with pytest.raises(UndefinedParameterError):
        lrc.min_distance(UniformMatroid(5, 5))  # ground set not cyclic


def test_locality_storage12(storage):
    asg = lrc.has_locality(storage, 3, 3)
    assert asg is not None
    groups = {mask_of(g, 12) for g in fixtures.STORAGE12_GROUPS}
    assert set(asg.distinct_sets()) == groups
    assert not lrc.validate_assignment(storage, asg)


def test_no_tighter_locality_storage12(storage):
    assert lrc.has_locality(storage, 2, 3) is None
    # independent oracle: no subset of size <= 4 at all (cyclic or not)
    # can serve element 0 with local distance >= 3
    for size in range(1, 5):
        for combo in combinations(range(1, 12), size - 1):
            s = mask_of((0,) + combo, 12)
            if storage.rank(s) == 0:
                continue
            assert not lrc.restriction_distance_at_least(storage, s, 3) or \
                not storage.is_cyclic(s)


def test_locality_uniform_uses_everything():
    u = UniformMatroid(8, 3)
    asg = lrc.has_locality(u, 3, 6)
    assert asg is not None
    assert set(asg.sets) == {full_mask(8)}


def test_locality_rank_bounded_by_r(storage):
    asg = lrc.has_locality(storage, 3, 3)
    for s in asg.distinct_sets():
        assert storage.rank(s) <= 3


def test_locality_input_validation(storage):
    with pytest.raises(DomainError):
        lrc.has_locality(storage, 0, 3)
    with pytest.raises(DomainError):
        lrc.has_locality(storage, 7, 3)  # r > k
    with pytest.raises(DomainError):
        lrc.has_locality(storage, 3, 1)
    with pytest.raises(CapacityError):
        lrc.has_locality(UniformMatroid(21, 3), 3, 2)


def test_minimal_r(storage):
    assert lrc.minimal_r(storage, 3) == 3
    u = UniformMatroid(9, 4)
    assert lrc.minimal_r(u, 6) == 4
    # delta = 2: smallest cyclic set through any element has size 4 here
    assert lrc.minimal_r(storage, 2) == 3


def test_minimal_r_none_when_delta_too_big(storage):
    assert lrc.minimal_r(storage, 4) is None


def test_singleton_bound_values():
    assert lrc.singleton_bound(12, 6, 3, 3) == 5
    assert lrc.singleton_bound(27, 14, 4, 2) == 11
    assert lrc.singleton_bound(10, 4, 4, 3) == 7  # r = k: classical bound
    with pytest.raises(DomainError):
        lrc.singleton_bound(10, 0, 1, 2)


def test_aux_bounds():
    ok, reasons = lrc.aux_bounds_ok(12, 6, 3, 3)
    assert ok and not reasons
    ok, reasons = lrc.aux_bounds_ok(10, 8, 2, 3)
    assert not ok and reasons
    assert lrc.aux_bounds_ok(10, 8, 4, 2)[0]  # boundary k = n - ceil(k/r)(delta-1)


def test_is_perfect(storage, graph27_matroid):
    assert not lrc.is_perfect(storage, 3, 3)
    assert lrc.is_perfect(UniformMatroid(9, 4), 4, 6)
    asg = construct.flat_assignment(graph27_matroid)
    assert lrc.is_perfect(graph27_matroid, 4, 2, assignment=asg)




def test_delta_at_most_d_on_fixtures():
    for name, m, _ in fixtures.fixture_matroids():
        sysm = getattr(m, "set_system", None)
        if sysm is None:
            continue
        asg = construct.flat_assignment(m)
        assert not lrc.validate_assignment(m, asg), name
        assert asg.delta <= lrc.min_distance(m), name


def test_check_structure_graph27(graph27_matroid):
    report = lrc.check_structure(graph27_matroid, construct.flat_assignment(graph27_matroid))
    assert report.applicable and report.all_passed


def test_check_structure_graph122():
    m = construct.graph_construction(fixtures.graph122(), *fixtures.GRAPH122_PARAMS)
    report = lrc.check_structure(m, construct.flat_assignment(m))
    assert report.applicable and report.all_passed


def test_check_structure_not_applicable(storage):
    asg = lrc.has_locality(storage, 3, 3)
    report = lrc.check_structure(storage, asg)
    assert not report.applicable
    assert "bound" in report.reason


def test_check_structure_flags_defects(graph27_matroid):
    good = construct.flat_assignment(graph27_matroid)
    # swap one repair set for a larger non-atom: the assignment itself is
    # still valid, but the structural checks must notice
    sets = list(good.sets)
    flats = [f for f, _ in graph27_matroid.set_system.flats]
    sets[22] = flats[5] | 1 << 21  # oversized
    bad = lrc.LocalityAssignment(5, 2, tuple(sets))
    report = lrc.check_structure(graph27_matroid, bad)
    assert not report.applicable or not report.all_passed


def test_params_summary(storage):
    p = lrc.params(storage, delta=3)
    assert p.as_tuple() == (12, 6, 3, 3, 3)
    assert str(p) == "(12,6,3,3,3)"
    assert lrc.params(UniformMatroid(10, 4)).as_tuple() == (10, 4, 7)


def test_restriction_distance_helper(storage):
    block = mask_of(fixtures.STORAGE12_GROUPS[0], 12)
    assert lrc.restriction_distance_at_least(storage, block, 3)
    assert not lrc.restriction_distance_at_least(storage, block, 4)


def test_random_constructions_respect_bounds():
    rng = Random(321)
    for _ in range(60):
        m = construct.general_construction(construct.random_set_system(rng, n_max=9))
        dec = m.declared
        d = lrc.min_distance(m)
        assert d == dec.d
        assert d <= lrc.singleton_bound(dec.n, dec.k, dec.r, dec.delta)
        assert dec.delta <= d
