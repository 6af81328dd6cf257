"""The lattice of cyclic flats as a standalone, validatable object.

A finite collection Z of subsets of [n] with an integer rank per member is
the family of cyclic flats of some matroid if and only if

    (Z0)  Z is a lattice under inclusion,
    (Z1)  rho(bottom) = 0,
    (Z2)  X < Y  =>  0 < rho(Y) - rho(X) < |Y| - |X|,
    (Z3)  rho(X) + rho(Y) >= rho(X v Y) + rho(X ^ Y) + |(X & Y) \\ (X ^ Y)|.

``validate`` checks the four axioms and reports every violation with a
witness; ``matroid_from_lattice`` turns a valid lattice into a rank oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import bitset
from .bitset import format_set, is_subset, sort_key
from .errors import ConstructionError, DomainError, FormatError


@dataclass(frozen=True)
class CyclicFlatLattice:
    """Members are (flat bitmask, rank) pairs, canonically ordered."""

    n: int
    members: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "CyclicFlatLattice":
        canon = sorted(((int(f), int(r)) for f, r in pairs), key=lambda p: sort_key(p[0]))
        seen = set()
        for flat, _ in canon:
            bitset.check_subset(flat, n)
            if flat in seen:
                raise FormatError(f"duplicate member set {format_set(flat)}")
            seen.add(flat)
        if not canon:
            raise FormatError("lattice needs at least one member")
        return cls(n, tuple(canon))

    @classmethod
    def from_sets(cls, n: int, pairs) -> "CyclicFlatLattice":
        """Like from_pairs but members given as (element iterable, rank)."""
        return cls.from_pairs(n, ((bitset.mask_of(els, n), r) for els, r in pairs))

    def rank_of(self, flat: int) -> int:
        for f, r in self.members:
            if f == flat:
                return r
        raise DomainError(f"{format_set(flat)} is not a lattice member")

    def member_masks(self) -> list[int]:
        return [f for f, _ in self.members]

    @property
    def bottom(self) -> int:
        mins = _minimal(self.member_masks())
        if len(mins) != 1:
            raise FormatError("lattice has no unique minimal member")
        return mins[0]

    @property
    def top(self) -> int:
        maxs = _maximal(self.member_masks())
        if len(maxs) != 1:
            raise FormatError("lattice has no unique maximal member")
        return maxs[0]

    # -- JSON interchange: 0-based ascending element lists -------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "members": [
                {"elements": bitset.elements_of(f), "rank": r} for f, r in self.members
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(), **kw)

    @classmethod
    def from_json_dict(cls, data: dict) -> "CyclicFlatLattice":
        try:
            n = int(data["n"])
            pairs = [(m["elements"], int(m["rank"])) for m in data["members"]]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad lattice JSON: {exc}") from exc
        return cls.from_sets(n, pairs)

    @classmethod
    def from_json(cls, text: str) -> "CyclicFlatLattice":
        return cls.from_json_dict(json.loads(text))


def _minimal(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(o != m and is_subset(o, m) for o in masks)]


def _maximal(masks: list[int]) -> list[int]:
    return [m for m in masks if not any(o != m and is_subset(m, o) for o in masks)]


# -- axiom validation ---------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    axiom: str  # "Z0" | "Z1" | "Z2" | "Z3"
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class AxiomReport:
    valid: bool
    violations: tuple[Violation, ...]

    def first_axiom(self) -> str | None:
        return self.violations[0].axiom if self.violations else None

    def __str__(self):
        if self.valid:
            return "valid lattice of cyclic flats"
        return "; ".join(f"{v.axiom} {v.detail}" for v in self.violations)


def _meet_in(masks: list[int], a: int, b: int) -> int | None:
    lower = [m for m in masks if is_subset(m, a) and is_subset(m, b)]
    if not lower:
        return None
    tops = _maximal(lower)
    return tops[0] if len(tops) == 1 else None


def _join_in(masks: list[int], a: int, b: int) -> int | None:
    upper = [m for m in masks if is_subset(a, m) and is_subset(b, m)]
    if not upper:
        return None
    bots = _minimal(upper)
    return bots[0] if len(bots) == 1 else None


def validate(z: CyclicFlatLattice, early_exit: bool = False) -> AxiomReport:
    """Check (Z0)-(Z3), collecting every violation unless *early_exit*.

    (Z0) is established by requiring, for every pair of members, that the
    set of common lower bounds has a unique maximum and the set of common
    upper bounds a unique minimum.  (Z3) is evaluated only on pairs whose
    meet and join exist, so its witnesses are meaningful even when (Z0)
    already failed elsewhere.
    """
    masks = z.member_masks()
    ranks = dict(z.members)
    bad: list[Violation] = []

    def done() -> bool:
        return early_exit and bool(bad)

    mins, maxs = _minimal(masks), _maximal(masks)
    if len(mins) != 1:
        bad.append(Violation("Z0", tuple(mins), f"{len(mins)} minimal members"))
    if len(maxs) != 1:
        bad.append(Violation("Z0", tuple(maxs), f"{len(maxs)} maximal members"))

    pairs = [(a, b) for i, a in enumerate(masks) for b in masks[i + 1:]]
    if not done():
        for a, b in pairs:
            if _meet_in(masks, a, b) is None:
                bad.append(Violation("Z0", (a, b),
                                     f"no meet for {format_set(a)}, {format_set(b)}"))
                if done():
                    break
            if _join_in(masks, a, b) is None:
                bad.append(Violation("Z0", (a, b),
                                     f"no join for {format_set(a)}, {format_set(b)}"))
                if done():
                    break

    if not done() and len(mins) == 1:
        bot = mins[0]
        if ranks[bot] != 0:
            bad.append(Violation("Z1", (bot,),
                                 f"rho({format_set(bot)}) = {ranks[bot]} != 0"))

    if not done():
        for a, b in pairs:
            x, y = (a, b) if is_subset(a, b) else (b, a)
            if x == y or not is_subset(x, y):
                continue
            dr = ranks[y] - ranks[x]
            ds = y.bit_count() - x.bit_count()
            if not 0 < dr < ds:
                bad.append(Violation(
                    "Z2", (x, y),
                    f"{format_set(x)} < {format_set(y)}: rank step {dr}, size step {ds}"))
                if done():
                    break

    if not done():
        for a, b in pairs:
            mt = _meet_in(masks, a, b)
            jn = _join_in(masks, a, b)
            if mt is None or jn is None:
                continue
            slack = ranks[a] + ranks[b] - ranks[jn] - ranks[mt] - ((a & b) & ~mt).bit_count()
            if slack < 0:
                bad.append(Violation(
                    "Z3", (a, b),
                    f"{format_set(a)}, {format_set(b)}: deficit {-slack}"))
                if done():
                    break

    return AxiomReport(not bad, tuple(bad))


# -- lattice operations -------------------------------------------------------


def _require_member(z: CyclicFlatLattice, mask: int) -> None:
    if mask not in z.member_masks():
        raise DomainError(f"{format_set(mask)} is not a lattice member")


def meet(z: CyclicFlatLattice, a: int, b: int) -> int:
    _require_member(z, a)
    _require_member(z, b)
    m = _meet_in(z.member_masks(), a, b)
    if m is None:
        raise DomainError(f"no meet of {format_set(a)} and {format_set(b)}")
    return m


def join(z: CyclicFlatLattice, a: int, b: int) -> int:
    _require_member(z, a)
    _require_member(z, b)
    j = _join_in(z.member_masks(), a, b)
    if j is None:
        raise DomainError(f"no join of {format_set(a)} and {format_set(b)}")
    return j


def atoms(z: CyclicFlatLattice) -> list[int]:
    """Members covering the bottom (members != bottom with nothing between)."""
    masks = z.member_masks()
    bot = z.bottom
    out = [m for m in masks
           if m != bot and not any(o != bot and o != m and is_subset(bot, o)
                                   and is_subset(o, m) for o in masks)]
    return sorted(out, key=sort_key)


def coatoms(z: CyclicFlatLattice) -> list[int]:
    """Members covered by the top (members != top with nothing between)."""
    masks = z.member_masks()
    top = z.top
    out = [m for m in masks
           if m != top and not any(o != top and o != m and is_subset(m, o)
                                   and is_subset(o, top) for o in masks)]
    return sorted(out, key=sort_key)


def matroid_from_lattice(z: CyclicFlatLattice):
    """Validated lattice -> LatticeMatroid; rejects invalid input."""
    report = validate(z)
    if not report.valid:
        raise ConstructionError(f"lattice rejected: {report}")
    from .matroid import LatticeMatroid

    return LatticeMatroid(z)


def uniform_lattice(n: int, k: int) -> CyclicFlatLattice:
    """Cyclic flats of U_n^k: {empty, E} for 0 < k < n, degenerate otherwise."""
    if not 0 <= k <= n:
        raise DomainError("need 0 <= k <= n")
    if k == n:  # free matroid: no circuits
        return CyclicFlatLattice.from_pairs(n, [(0, 0)])
    if k == 0:  # every element a loop
        return CyclicFlatLattice.from_pairs(n, [(bitset.full_mask(n), 0)])
    return CyclicFlatLattice.from_pairs(n, [(0, 0), (bitset.full_mask(n), k)])
