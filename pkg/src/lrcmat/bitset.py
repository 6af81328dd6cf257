"""Subsets of a ground set [n] = {0, ..., n-1} as plain int bitmasks.

Python ints are arbitrary-width, so the same helpers serve small ground
sets (where exhaustive 2^n loops run) and large ones (n > 100) alike.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError


def mask_of(elements: Iterable[int], n: int) -> int:
    """Bitmask of an element collection, validated against universe size n."""
    mask = 0
    for e in elements:
        if not 0 <= e < n:
            raise DomainError(f"element {e} outside ground set [{n}]")
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> list[int]:
    """Ascending list of the elements in a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_elements(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


def check_subset(mask: int, n: int) -> None:
    if mask < 0 or mask >> n:
        raise DomainError(f"subset {bin(mask)} exceeds ground set [{n}]")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All submasks of *mask*, including 0 and mask itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def masks_of_size(universe: int, size: int) -> Iterator[int]:
    """Submasks of *universe* with exactly *size* bits, in lexicographic
    order of their ascending element tuples."""
    elems = elements_of(universe)
    for combo in combinations(elems, size):
        m = 0
        for e in combo:
            m |= 1 << e
        yield m


def sort_key(mask: int) -> tuple[int, int]:
    """Canonical ordering for set collections: (cardinality, bit pattern)."""
    return (mask.bit_count(), mask)


def format_set(mask: int) -> str:
    return "{" + ",".join(str(e) for e in elements_of(mask)) + "}"
