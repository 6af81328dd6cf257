"""Lattice axioms, meet/join/atoms/coatoms, and lattice -> matroid."""

from random import Random

import pytest

from lrcmat import fixtures, zlattice
from lrcmat.bitset import full_mask, mask_of
from lrcmat.construct import general_construction, random_set_system
from lrcmat.errors import ConstructionError, DomainError, FormatError
from lrcmat.matroid import cyclic_flats, validate_rank_axioms
from lrcmat.zlattice import CyclicFlatLattice


@pytest.fixture(scope="module")
def fig():
    return fixtures.storage12_lattice()


def test_fixture_lattice_valid(fig):
    report = zlattice.validate(fig)
    assert report.valid and not report.violations


def test_uniform_two_member_lattice_valid():
    assert zlattice.validate(zlattice.uniform_lattice(9, 4)).valid


def test_duplicate_member_rejected():
    with pytest.raises(FormatError):
        CyclicFlatLattice.from_sets(4, [((), 0), ((0, 1), 1), ((1, 0), 1)])


def test_atom_rank_bump_fails_z3(fig):
    members = [list(p) for p in fig.members]
    for entry in members:
        if entry[0] == mask_of([0, 1, 2, 6, 9], 12):
            entry[1] = 4
    report = zlattice.validate(CyclicFlatLattice.from_pairs(12, members))
    assert not report.valid
    assert report.first_axiom() == "Z3"


def test_rank_drop_on_top_fails_z2(fig):
    members = [list(p) for p in fig.members]
    members[-1][1] = 5  # top rank 6 -> 5, ties the coatoms
    report = zlattice.validate(CyclicFlatLattice.from_pairs(12, members))
    assert not report.valid
    assert any(v.axiom == "Z2" for v in report.violations)


def test_missing_meet_fails_z0():
    # two overlapping members without their meet
    lat = CyclicFlatLattice.from_sets(
        6, [((0, 1, 2), 2), ((2, 3, 4), 2), ((0, 1, 2, 3, 4, 5), 4)])
    report = zlattice.validate(lat)
    assert not report.valid
    assert report.first_axiom() == "Z0"


def test_nonzero_bottom_fails_z1():
    lat = CyclicFlatLattice.from_sets(5, [((), 1), ((0, 1, 2, 3, 4), 3)])
    report = zlattice.validate(lat)
    assert any(v.axiom == "Z1" for v in report.violations)


def test_validation_reports_all_violations(fig):
    members = [list(p) for p in fig.members]
    members[1][1] = 5  # an atom outranks its size constraints downstream
    members[-1][1] = 2
    report = zlattice.validate(CyclicFlatLattice.from_pairs(12, members))
    assert len(report.violations) > 1


def test_meet_join_on_fixture(fig):
    a1 = mask_of([0, 1, 2, 6, 9], 12)
    a2 = mask_of([2, 3, 4, 7, 10], 12)
    assert zlattice.meet(fig, a1, a2) == 0
    assert zlattice.join(fig, a1, a2) == a1 | a2
    assert zlattice.meet(fig, a1, a1) == a1
    assert zlattice.join(fig, a1, a1) == a1
    c1, c2 = zlattice.coatoms(fig)[:2]
    assert zlattice.join(fig, c1, c2) == full_mask(12)


def test_meet_requires_membership(fig):
    with pytest.raises(DomainError):
        zlattice.meet(fig, 0b11, 0)


def test_atoms_coatoms_fixture(fig):
    assert [a.bit_count() for a in zlattice.atoms(fig)] == [5, 5, 5]
    assert [c.bit_count() for c in zlattice.coatoms(fig)] == [9, 9, 9]


def test_atoms_coatoms_two_member_lattice():
    # in a two-element chain the top covers the bottom, so the top is the
    # only atom and the bottom the only coatom; the distance formula needs
    # the empty set to be a coatom here
    lat = zlattice.uniform_lattice(7, 3)
    assert zlattice.atoms(lat) == [full_mask(7)]
    assert zlattice.coatoms(lat) == [0]


def test_atoms_coatoms_chain():
    lat = CyclicFlatLattice.from_sets(6, [((), 0), ((0, 1, 2), 2),
                                          ((0, 1, 2, 3, 4, 5), 4)])
    mid = mask_of([0, 1, 2], 6)
    assert zlattice.atoms(lat) == [mid]
    assert zlattice.coatoms(lat) == [mid]


def test_matroid_from_lattice_fixture_params(fig):
    m = zlattice.matroid_from_lattice(fig)
    assert (m.n, m.full_rank) == (12, 6)


def test_matroid_from_lattice_uniform():
    m = zlattice.matroid_from_lattice(zlattice.uniform_lattice(8, 3))
    for mask in range(1 << 8):
        assert m.rank(mask) == min(mask.bit_count(), 3)


def test_matroid_from_lattice_rejects_invalid():
    bad = CyclicFlatLattice.from_sets(5, [((), 1), ((0, 1, 2, 3, 4), 3)])
    with pytest.raises(ConstructionError):
        zlattice.matroid_from_lattice(bad)


def test_roundtrip_fixture_and_random_systems(fig):
    assert cyclic_flats(zlattice.matroid_from_lattice(fig)).members == fig.members
    rng = Random(99)
    for _ in range(10):
        sysm = random_set_system(rng, n_max=9)
        lat = general_construction(sysm).lattice
        m = zlattice.matroid_from_lattice(lat)
        assert cyclic_flats(m).members == lat.members
        assert validate_rank_axioms(m).valid


def test_json_roundtrip(fig):
    again = CyclicFlatLattice.from_json(fig.to_json())
    assert again == fig
    with pytest.raises(FormatError):
        CyclicFlatLattice.from_json('{"n": 3}')


def test_free_matroid_lattice():
    lat = zlattice.uniform_lattice(4, 4)
    assert lat.members == ((0, 0),)
    m = zlattice.matroid_from_lattice(lat)
    assert m.rank(full_mask(4)) == 4
