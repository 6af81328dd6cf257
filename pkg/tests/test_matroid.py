"""Rank oracle behavior, derived operations, and the axiom validator.

The storage12 fixture is the cross-oracle anchor: its matrix backing
(Gaussian elimination) and lattice backing (minimum over cyclic flats)
must agree everywhere.
"""

from random import Random

import pytest

from lrcmat import fixtures, zlattice
from lrcmat.bitset import full_mask, mask_of
from lrcmat.errors import CapacityError, DomainError
from lrcmat.matroid import (LatticeMatroid, Matroid, UniformMatroid, circuits,
                            cyclic_flat_members, cyclic_flats,
                            rank_functions_agree, validate_rank_axioms)


class FunctionMatroid(Matroid):
    """Test helper: wrap an arbitrary set function as a 'matroid'."""

    def __init__(self, n, fn):
        super().__init__(n)
        self.fn = fn

    def _rank(self, mask):
        return self.fn(mask)


def s12(*elements):
    return mask_of(elements, 12)


@pytest.fixture(scope="module")
def storage():
    m = fixtures.storage12_matroid()
    m.precompute_ranks()
    return m


def test_rank_examples(storage):
    assert storage.rank(s12(2, 3, 4)) == 3
    assert storage.rank(s12(2, 3, 4, 7, 10)) == 3
    assert storage.rank(0) == 0
    assert storage.full_rank == 6
    assert storage.rank(full_mask(12) & 0b111111) == 6  # first six columns


def test_rank_rejects_foreign_subset(storage):
    with pytest.raises(DomainError):
        storage.rank(1 << 12)


def test_lattice_and_matrix_backings_agree_everywhere(storage):
    lm = zlattice.matroid_from_lattice(fixtures.storage12_lattice())
    assert rank_functions_agree(storage, lm)


def test_nullity(storage):
    assert storage.nullity(s12(0, 1, 2, 6, 9)) == 2
    assert storage.nullity(0) == 0
    assert UniformMatroid(12, 6).nullity(full_mask(12)) == 6


def test_closure(storage):
    assert storage.closure(s12(0, 1, 2, 6)) == s12(0, 1, 2, 6, 9)
    assert storage.closure(full_mask(12)) == full_mask(12)
    u = UniformMatroid(7, 4)
    small = mask_of([1, 2], 7)
    assert u.closure(small) == small


def test_closure_idempotent_and_rank_preserving(storage):
    rng = Random(5)
    for _ in range(50):
        x = rng.randrange(1 << 12)
        cl = storage.closure(x)
        assert storage.closure(cl) == cl
        assert storage.rank(cl) == storage.rank(x)
        assert cl & x == x


def test_independence(storage):
    assert storage.is_independent(s12(1, 2, 6))
    assert not storage.is_independent(s12(0, 1, 2, 6))
    assert storage.is_independent(0)


def test_circuits_storage12(storage):
    cs = circuits(storage)
    assert s12(0, 1, 2, 6) in cs
    assert s12(3, 4, 7, 10) in cs
    # minimality: every circuit's proper subsets are independent
    for c in cs[:20]:
        for e in range(12):
            if c >> e & 1:
                assert storage.is_independent(c & ~(1 << e))


def test_circuits_uniform_and_free():
    u = UniformMatroid(4, 2)
    assert circuits(u) == [m for m in range(16) if m.bit_count() == 3]
    assert circuits(UniformMatroid(5, 5)) == []


def test_circuits_sorted_canonically(storage):
    cs = circuits(storage)
    assert cs == sorted(cs, key=lambda m: (m.bit_count(), m))


def test_circuits_cap():
    with pytest.raises(CapacityError):
        circuits(UniformMatroid(21, 3))


def oracle_cyclic_flats(m):
    """Independent route: a cyclic flat is a flat equal to the union of
    the circuits inside it."""
    cs = circuits(m)
    out = []
    for mask in range(1 << m.n):
        union = 0
        for c in cs:
            if c & ~mask == 0:
                union |= c
        if union == mask and m.closure(mask) == mask:
            out.append((mask, m.rank(mask)))
    return sorted(out, key=lambda p: (p[0].bit_count(), p[0]))


def test_cyclic_flats_storage12_match_oracle(storage):
    assert cyclic_flat_members(storage) == oracle_cyclic_flats(storage)
    assert cyclic_flats(storage).members == fixtures.storage12_lattice().members


def test_cyclic_flats_uniform_and_free():
    lat = cyclic_flats(UniformMatroid(6, 3))
    assert lat.members == ((0, 0), (full_mask(6), 3))
    assert cyclic_flats(UniformMatroid(4, 4)).members == ((0, 0),)


def test_restriction_uniform_behavior(storage):
    res = storage.restrict(s12(0, 1, 2, 6, 9))
    assert res.n == 5
    for mask in range(1 << 5):
        assert res.rank(mask) == min(mask.bit_count(), 3)


def test_restriction_to_ground_and_empty(storage):
    everything = storage.restrict(full_mask(12))
    assert rank_functions_agree(storage, everything)
    nothing = storage.restrict(0)
    assert nothing.n == 0 and nothing.rank(0) == 0


def test_restriction_circuits_are_parent_circuits(storage):
    carrier = s12(0, 1, 2, 3, 4, 6, 7, 9, 10)
    res = storage.restrict(carrier)
    inherited = {c for c in circuits(storage) if c & ~carrier == 0}
    assert {res.embed(c) for c in circuits(res)} == inherited


def test_nullity_supermodular(storage):
    rng = Random(11)
    for _ in range(300):
        x, y = rng.randrange(1 << 12), rng.randrange(1 << 12)
        assert storage.nullity(x | y) >= \
            storage.nullity(x) + storage.nullity(y) - storage.nullity(x & y)


def test_monotone_rank_and_nullity(storage):
    rng = Random(13)
    for _ in range(300):
        y = rng.randrange(1 << 12)
        x = y & rng.randrange(1 << 12)
        assert storage.rank(x) <= storage.rank(y)
        assert storage.nullity(x) <= storage.nullity(y)


def test_validate_rank_axioms_accepts_real_matroids(storage):
    assert validate_rank_axioms(storage).valid
    assert validate_rank_axioms(UniformMatroid(6, 3)).valid


def test_validate_rank_axioms_catches_parity_function():
    report = validate_rank_axioms(FunctionMatroid(3, lambda m: m.bit_count() % 2))
    assert not report.valid
    assert any(v.axiom == "R2" for v in report.violations)


def test_validate_rank_axioms_catches_r1_and_r3():
    too_big = FunctionMatroid(3, lambda m: m.bit_count() + 1 if m else 0)
    assert any(v.axiom == "R1" for v in validate_rank_axioms(too_big).violations)
    # convex-ish function: monotone but not submodular
    convex = FunctionMatroid(4, lambda m: max(0, m.bit_count() - 2))
    report = validate_rank_axioms(convex)
    assert any(v.axiom == "R3" for v in report.violations)


def test_validate_rank_axioms_cap():
    with pytest.raises(CapacityError):
        validate_rank_axioms(UniformMatroid(17, 2))


def test_memo_is_transparent(storage):
    fresh = fixtures.storage12_matroid()
    rng = Random(3)
    for _ in range(100):
        x = rng.randrange(1 << 12)
        assert fresh.rank(x) == storage.rank(x)


def test_lattice_matroid_prop1_rank_formula():
    lat = fixtures.storage12_lattice()
    m = LatticeMatroid(lat)
    rng = Random(17)
    for _ in range(200):
        x = rng.randrange(1 << 12)
        expected = min(r + (x & ~f).bit_count() for f, r in lat.members)
        assert m.rank(x) == expected
