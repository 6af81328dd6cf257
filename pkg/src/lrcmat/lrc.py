"""Code parameters (n, k, d, r, delta) of a matroid.

n is the ground set size and k the rank.  The minimum distance is

    d = min { |X| : rho(E \\ X) < k },

defined whenever k > 0 and E is itself a cyclic flat; equivalently

    d = n - k + 1 - max { eta(Z) : Z a coatom of the cyclic-flat lattice }.

An (r, delta)-locality assignment gives every element x a repair set S_x
with x in S_x, |S_x| <= r + delta - 1 and d(M|S_x) >= delta.  The search
for assignments enumerates cyclic sets only, which is sufficient: any
qualifying set shrinks to a cyclic one with the same nullity.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import bitset, zlattice
from .bitset import format_set, full_mask, iter_elements
from .errors import CapacityError, DomainError, UndefinedParameterError
from .matroid import LatticeMatroid, Matroid, UniformMatroid, cyclic_flats

LOCALITY_CAP = 20  # locality search and brute-force distance are exponential


@dataclass(frozen=True)
class LrcParams:
    n: int
    k: int
    d: int
    r: int | None = None
    delta: int | None = None

    def as_tuple(self) -> tuple:
        if self.r is None:
            return (self.n, self.k, self.d)
        return (self.n, self.k, self.d, self.r, self.delta)

    def __str__(self):
        return "(" + ",".join(str(v) for v in self.as_tuple()) + ")"


@dataclass(frozen=True)
class LocalityAssignment:
    """Repair set per ground element, as bitmasks indexed by element."""

    r: int
    delta: int
    sets: tuple[int, ...]

    def distinct_sets(self) -> list[int]:
        return sorted(set(self.sets), key=bitset.sort_key)


def ground_is_cyclic(m: Matroid) -> bool:
    """True iff E is a cyclic flat (the lattice's top equals E)."""
    if isinstance(m, LatticeMatroid):
        return m.lattice.top == m.ground
    if isinstance(m, UniformMatroid):
        return 0 < m.k < m.n or m.n == 0
    k = m.full_rank
    return all(m.rank(m.ground & ~(1 << x)) == k for x in range(m.n))


def _check_d_defined(m: Matroid) -> int:
    k = m.full_rank
    if k == 0:
        raise UndefinedParameterError("d undefined: matroid has rank 0")
    if not ground_is_cyclic(m):
        raise UndefinedParameterError("d undefined: ground set is not a cyclic flat")
    return k


def min_distance(m: Matroid) -> int:
    """Minimum distance, via the coatom formula when the lattice is at hand
    (any n), otherwise by exhaustive scan (n <= 20)."""
    k = _check_d_defined(m)
    if isinstance(m, UniformMatroid):
        return m.n - k + 1
    if isinstance(m, LatticeMatroid):
        lat = m.lattice
        ranks = dict(lat.members)
        worst = max(c.bit_count() - ranks[c] for c in zlattice.coatoms(lat))
        return m.n - k + 1 - worst
    return min_distance_bruteforce(m)


def min_distance_bruteforce(m: Matroid) -> int:
    """Definitional route: n minus the largest set of rank below k."""
    k = _check_d_defined(m)
    if m.n > LOCALITY_CAP:
        raise CapacityError(f"brute-force distance capped at n <= {LOCALITY_CAP}")
    best = max(mask.bit_count() for mask in range(1 << m.n) if m.rank(mask) < k)
    return m.n - best


def restriction_distance_at_least(m: Matroid, smask: int, delta: int) -> bool:
    """Decide d(M|S) >= delta.

    By monotonicity it suffices to delete exactly delta-1 elements: a
    smaller rank-dropping deletion extends to one of size delta-1.
    A rank-0 restriction has no rank-dropping deletion at all.
    """
    r = m.rank(smask)
    if r == 0:
        return True
    size = smask.bit_count()
    if delta - 1 > size:
        return False
    elems = bitset.elements_of(smask)
    for combo in combinations(elems, delta - 1):
        drop = 0
        for e in combo:
            drop |= 1 << e
        if m.rank(smask & ~drop) < r:
            return False
    return True


def smallest_locality_set(m: Matroid, x: int, delta: int,
                          max_size: int) -> int | None:
    """First cyclic set containing x with d(M|S) >= delta, scanning sizes
    upward and, within a size, ascending element tuples."""
    others = [e for e in range(m.n) if e != x]
    xbit = 1 << x
    for size in range(1, max_size + 1):
        for combo in combinations(others, size - 1):
            s = xbit
            for e in combo:
                s |= 1 << e
            if not m.is_cyclic(s):
                continue
            if restriction_distance_at_least(m, s, delta):
                return s
    return None


def has_locality(m: Matroid, r: int, delta: int) -> LocalityAssignment | None:
    """An (r, delta)-locality assignment, or None if no cyclic repair sets
    of size <= r + delta - 1 cover every element."""
    k = m.full_rank
    if not 1 <= r <= k:
        raise DomainError(f"need 1 <= r <= k = {k}, got r = {r}")
    if delta < 2:
        raise DomainError(f"need delta >= 2, got {delta}")
    if m.n > LOCALITY_CAP:
        raise CapacityError(f"locality search capped at n <= {LOCALITY_CAP}")
    sets = []
    for x in range(m.n):
        s = smallest_locality_set(m, x, delta, min(r + delta - 1, m.n))
        if s is None:
            return None
        sets.append(s)
    return LocalityAssignment(r, delta, tuple(sets))


def validate_assignment(m: Matroid, assignment: LocalityAssignment) -> list[str]:
    """Problems with an assignment; empty list means it is valid."""
    problems = []
    r, delta = assignment.r, assignment.delta
    if len(assignment.sets) != m.n:
        return [f"assignment covers {len(assignment.sets)} of {m.n} elements"]
    for x, s in enumerate(assignment.sets):
        if not s & (1 << x):
            problems.append(f"element {x} not in its repair set {format_set(s)}")
        if s.bit_count() > r + delta - 1:
            problems.append(f"repair set {format_set(s)} larger than r+delta-1")
        if not restriction_distance_at_least(m, s, delta):
            problems.append(f"d(M|{format_set(s)}) < {delta}")
    return problems


def minimal_r(m: Matroid, delta: int) -> int | None:
    """Smallest r for which has_locality succeeds, or None.

    Qualifying repair sets do not depend on r, so it is enough to find,
    per element, the smallest qualifying cyclic set; the answer is the
    largest such size minus delta - 1 (at least 1), or None if it
    exceeds k or some element has no qualifying set at all.
    """
    k = m.full_rank
    if delta < 2:
        raise DomainError(f"need delta >= 2, got {delta}")
    if m.n > LOCALITY_CAP:
        raise CapacityError(f"locality search capped at n <= {LOCALITY_CAP}")
    worst = 0
    for x in range(m.n):
        s = smallest_locality_set(m, x, delta, m.n)
        if s is None:
            return None
        worst = max(worst, s.bit_count())
    r = max(1, worst - (delta - 1))
    return r if r <= k else None


def singleton_bound(n: int, k: int, r: int, delta: int) -> int:
    """Upper bound n - k + 1 - (ceil(k/r) - 1)(delta - 1) on d."""
    if k < 1 or r < 1 or delta < 2:
        raise DomainError("need k >= 1, r >= 1, delta >= 2")
    return n - k + 1 - (-(-k // r) - 1) * (delta - 1)


def aux_bounds_ok(n: int, k: int, r: int, delta: int) -> tuple[bool, list[str]]:
    """Feasibility of a parameter tuple: k <= n - ceil(k/r)(delta-1) and
    rate k/n <= r/(r+delta-1)."""
    if k < 1 or r < 1 or delta < 2 or n < 1:
        raise DomainError("need n, k, r >= 1 and delta >= 2")
    reasons = []
    if k > n - -(-k // r) * (delta - 1):
        reasons.append(f"k = {k} > n - ceil(k/r)(delta-1) = {n - -(-k // r) * (delta - 1)}")
    if k * (r + delta - 1) > n * r:
        reasons.append(f"rate {k}/{n} exceeds local rate {r}/{r + delta - 1}")
    return (not reasons, reasons)


def is_perfect(m: Matroid, r: int, delta: int,
               assignment: LocalityAssignment | None = None) -> bool:
    """True iff the matroid has (r, delta)-locality and d meets the bound."""
    if assignment is None:
        assignment = has_locality(m, r, delta)
        if assignment is None:
            raise DomainError(f"no ({r},{delta})-locality assignment exists")
    else:
        problems = validate_assignment(m, assignment)
        if problems:
            raise DomainError("invalid assignment: " + "; ".join(problems))
    return min_distance(m) == singleton_bound(m.n, m.full_rank, r, delta)


def params(m: Matroid, delta: int | None = None) -> LrcParams:
    """Measured (n, k, d) and, when delta is requested, the minimal r."""
    n, k = m.n, m.full_rank
    d = min_distance(m)
    if delta is None:
        return LrcParams(n, k, d)
    r = minimal_r(m, delta)
    if r is None:
        raise DomainError(f"no locality assignment exists for delta = {delta}")
    return LrcParams(n, k, d, r, delta)


# -- structure of matroids meeting the bound ----------------------------------


@dataclass(frozen=True)
class StructureCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class StructureReport:
    applicable: bool
    perfect: bool
    checks: tuple[StructureCheck, ...]
    reason: str = ""

    @property
    def all_passed(self) -> bool:
        return self.applicable and all(c.passed for c in self.checks)

    def failures(self) -> list[StructureCheck]:
        return [c for c in self.checks if not c.passed]


def check_structure(m: Matroid, assignment: LocalityAssignment) -> StructureReport:
    """Verify the structural consequences of meeting the bound with r < k:
    empty bottom flat, repair sets are atoms of nullity delta - 1, and the
    join/union/rank and intersection laws for non-trivial-union families of
    up to ceil(k/r) repair sets."""
    r, delta = assignment.r, assignment.delta
    n, k = m.n, m.full_rank
    if not r < k:
        return StructureReport(False, False, (), reason="requires r < k")
    problems = validate_assignment(m, assignment)
    if problems:
        return StructureReport(False, False, (), reason="; ".join(problems))
    perfect = min_distance(m) == singleton_bound(n, k, r, delta)
    if not perfect:
        return StructureReport(False, False, (), reason="matroid does not meet the bound")

    lat = cyclic_flats(m)
    lat_ranks = dict(lat.members)
    atom_masks = set(zlattice.atoms(lat))
    h = -(-k // r)
    checks: list[StructureCheck] = []

    checks.append(StructureCheck("bottom_flat_empty", lat.bottom == 0,
                                 format_set(lat.bottom)))
    checks.append(StructureCheck(
        "ground_nullity", n - k >= h * (delta - 1),
        f"n-k = {n - k}, ceil(k/r)(delta-1) = {h * (delta - 1)}"))

    family = sorted(set(assignment.sets), key=bitset.sort_key)
    for s in family:
        eta = m.nullity(s)
        checks.append(StructureCheck(f"nullity{format_set(s)}", eta == delta - 1,
                                     f"eta = {eta}"))
        checks.append(StructureCheck(f"atom{format_set(s)}", s in atom_masks))

    def nontrivial_union(sets: tuple[int, ...]) -> bool:
        for i, s in enumerate(sets):
            rest = 0
            for j, t in enumerate(sets):
                if j != i:
                    rest |= t
            if s & ~rest == 0:
                return False
        return True

    for j in range(2, h + 1):
        for sub in combinations(family, j):
            if not nontrivial_union(sub):
                continue
            union = 0
            for s in sub:
                union |= s
            join = m.closure(union)
            label = ",".join(format_set(s) for s in sub)
            if j < h:
                checks.append(StructureCheck(
                    f"join_is_union[{label}]", join == union))
                checks.append(StructureCheck(
                    f"union_nullity[{label}]",
                    m.nullity(union) == j * (delta - 1),
                    f"eta = {m.nullity(union)}, expected {j * (delta - 1)}"))
                checks.append(StructureCheck(
                    f"join_rank[{label}]",
                    m.rank(join) == union.bit_count() - j * (delta - 1)))
            else:
                checks.append(StructureCheck(
                    f"join_is_ground[{label}]", join == m.ground))
                checks.append(StructureCheck(
                    f"join_rank[{label}]", m.rank(join) == k))
            # each member must overshoot the union of the others by >= delta
            for i, s in enumerate(sub):
                rest = 0
                for jj, t in enumerate(sub):
                    if jj != i:
                        rest |= t
                inter = (s & rest).bit_count()
                checks.append(StructureCheck(
                    f"intersection_bound[{format_set(s)} in {label}]",
                    inter <= s.bit_count() - delta,
                    f"|overlap| = {inter}"))
                if j == h:
                    bound = (rest.bit_count() + s.bit_count()
                             - h * (delta - 1) - inter)
                    checks.append(StructureCheck(
                        f"rank_cover_bound[{format_set(s)} in {label}]",
                        k <= bound, f"k = {k}, bound = {bound}"))

    return StructureReport(True, True, tuple(checks))


def uniform_matroid(n: int, k: int) -> UniformMatroid:
    return UniformMatroid(n, k)


def coatom_distance(lat: zlattice.CyclicFlatLattice) -> int:
    """Coatom formula evaluated directly on a lattice whose top is E."""
    if lat.top != full_mask(lat.n):
        raise UndefinedParameterError("d undefined: lattice top is not the ground set")
    k = dict(lat.members)[lat.top]
    if k == 0:
        raise UndefinedParameterError("d undefined: rank 0")
    ranks = dict(lat.members)
    worst = max(c.bit_count() - ranks[c] for c in zlattice.coatoms(lat))
    return lat.n - k + 1 - worst
