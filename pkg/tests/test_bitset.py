import pytest

from lrcmat import bitset
from lrcmat.errors import DomainError


def test_mask_roundtrip():
    m = bitset.mask_of([0, 3, 5], 6)
    assert m == 0b101001
    assert bitset.elements_of(m) == [0, 3, 5]
    assert list(bitset.iter_elements(m)) == [0, 3, 5]


def test_mask_rejects_out_of_range():
    with pytest.raises(DomainError):
        bitset.mask_of([6], 6)
    with pytest.raises(DomainError):
        bitset.mask_of([-1], 6)
    with pytest.raises(DomainError):
        bitset.check_subset(1 << 6, 6)


def test_submasks_complete():
    m = 0b1011
    subs = list(bitset.submasks(m))
    assert len(subs) == 8
    assert set(subs) == {s for s in range(16) if s & ~m == 0}


def test_masks_of_size_lexicographic():
    masks = list(bitset.masks_of_size(0b1111, 2))
    # ascending element tuples: (0,1), (0,2), (0,3), (1,2), (1,3), (2,3)
    assert masks == [0b11, 0b101, 0b1001, 0b110, 0b1010, 0b1100]


def test_sort_key_orders_by_size_then_pattern():
    masks = [0b111, 0b1, 0b110, 0b10]
    assert sorted(masks, key=bitset.sort_key) == [0b1, 0b10, 0b110, 0b111]


def test_format_set():
    assert bitset.format_set(0) == "{}"
    assert bitset.format_set(0b101) == "{0,2}"
