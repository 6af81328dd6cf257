"""Matroids as rank oracles over bitmask subsets of [n].

A matroid is any function rho: 2^[n] -> Z obeying the rank axioms

    (R1)  0 <= rho(X) <= |X|
    (R2)  X <= Y  =>  rho(X) <= rho(Y)
    (R3)  rho(X) + rho(Y) >= rho(X | Y) + rho(X & Y)

Concrete backings provided here and elsewhere in the package:

    UniformMatroid      rho(X) = min(|X|, k)
    LatticeMatroid      rho recovered from the cyclic flats and their ranks
    RestrictionMatroid  a parent matroid restricted to a carrier subset
    MatrixMatroid       column rank over a prime field   (gfrep module)
    GammoidMatroid      vertex-disjoint linkage rank     (gammoid module)

Derived operations (closure, circuits, cyclic flats, the axiom validator)
work uniformly through the rank oracle.  Exhaustive operations carry
documented ground-set caps; everything else works for any n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import bitset, zlattice
from .bitset import check_subset, full_mask, iter_elements, sort_key
from .errors import CapacityError, DomainError

CIRCUIT_CAP = 20  # exhaustive subset scans
AXIOM_CAP = 16  # submodularity over all local triples


class Matroid:
    """Rank oracle base class.

    Subclasses implement ``_rank(mask)``.  Instances are immutable after
    construction apart from the rank memo, whose entries are idempotent,
    so sharing across threads is safe.
    """

    def __init__(self, n: int):
        if n < 0:
            raise DomainError("ground set size must be nonnegative")
        self.n = n
        self._memo: dict[int, int] = {}

    # -- rank oracle -------------------------------------------------------

    def _rank(self, mask: int) -> int:
        raise NotImplementedError

    def rank(self, mask: int) -> int:
        check_subset(mask, self.n)
        r = self._memo.get(mask)
        if r is None:
            r = self._rank(mask)
            self._memo[mask] = r
        return r

    def precompute_ranks(self) -> None:
        """Memoize the full rank table (used before exhaustive scans)."""
        for mask in range(1 << self.n):
            self.rank(mask)

    # -- derived quantities --------------------------------------------------

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    @property
    def full_rank(self) -> int:
        """rho(E), traditionally k."""
        return self.rank(self.ground)

    def nullity(self, mask: int) -> int:
        return mask.bit_count() - self.rank(mask)

    def is_independent(self, mask: int) -> bool:
        return self.rank(mask) == mask.bit_count()

    def closure(self, mask: int) -> int:
        """Smallest flat containing *mask*: all x with rho(X + x) = rho(X)."""
        check_subset(mask, self.n)
        r = self.rank(mask)
        out = mask
        for x in iter_elements(self.ground & ~mask):
            if self.rank(mask | (1 << x)) == r:
                out |= 1 << x
        return out

    def is_flat(self, mask: int) -> bool:
        return self.closure(mask) == mask

    def is_cyclic(self, mask: int) -> bool:
        """True iff no element of *mask* is a coloop of the restriction,
        i.e. the set is a (possibly empty) union of circuits."""
        check_subset(mask, self.n)
        r = self.rank(mask)
        return all(self.rank(mask & ~(1 << x)) == r for x in iter_elements(mask))

    def restrict(self, mask: int) -> "RestrictionMatroid":
        return RestrictionMatroid(self, mask)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"


class UniformMatroid(Matroid):
    """U_n^k: every set of at most k elements is independent."""

    def __init__(self, n: int, k: int):
        if not 0 <= k <= n:
            raise DomainError(f"uniform matroid needs 0 <= k <= n, got k={k}, n={n}")
        super().__init__(n)
        self.k = k

    def _rank(self, mask: int) -> int:
        return min(mask.bit_count(), self.k)

    def __repr__(self):
        return f"UniformMatroid(n={self.n}, k={self.k})"


class LatticeMatroid(Matroid):
    """Matroid recovered from its cyclic flats:

        rho(X) = min { rho(F) + |X \\ F| : F a cyclic flat }.

    The lattice is trusted here; build instances through
    ``zlattice.matroid_from_lattice`` to get it validated first.
    """

    def __init__(self, lattice: "zlattice.CyclicFlatLattice"):
        super().__init__(lattice.n)
        self.lattice = lattice
        self._members = lattice.members

    def _rank(self, mask: int) -> int:
        return min(r + (mask & ~flat).bit_count() for flat, r in self._members)

    def __repr__(self):
        return f"LatticeMatroid(n={self.n}, members={len(self._members)})"


class RestrictionMatroid(Matroid):
    """Restriction to a carrier set, re-indexed to 0..|carrier|-1 in
    ascending order of the original elements."""

    def __init__(self, parent: Matroid, carrier: int):
        check_subset(carrier, parent.n)
        super().__init__(carrier.bit_count())
        self.parent = parent
        self.carrier = carrier
        self.positions = tuple(bitset.elements_of(carrier))

    def embed(self, mask: int) -> int:
        """Map a re-indexed subset back into the parent ground set."""
        check_subset(mask, self.n)
        out = 0
        for i in iter_elements(mask):
            out |= 1 << self.positions[i]
        return out

    def _rank(self, mask: int) -> int:
        return self.parent.rank(self.embed(mask))

    def __repr__(self):
        return f"RestrictionMatroid(carrier={bitset.format_set(self.carrier)})"


# -- exhaustive derived collections -----------------------------------------


def _check_cap(m: Matroid, cap: int, what: str) -> None:
    if m.n > cap:
        raise CapacityError(f"{what} is exhaustive; capped at n <= {cap}, got n={m.n}")


def circuits(m: Matroid) -> list[int]:
    """All minimal dependent sets, ascending by (cardinality, bit pattern)."""
    _check_cap(m, CIRCUIT_CAP, "circuit enumeration")
    m.precompute_ranks()
    found: list[int] = []
    for mask in sorted(range(1 << m.n), key=sort_key):
        if m.is_independent(mask):
            continue
        if all(m.is_independent(mask & ~(1 << x)) for x in iter_elements(mask)):
            found.append(mask)
    return found


def cyclic_flat_members(m: Matroid) -> list[tuple[int, int]]:
    """All cyclic flats with their ranks, canonically ordered."""
    _check_cap(m, CIRCUIT_CAP, "cyclic flat enumeration")
    m.precompute_ranks()
    out = []
    for mask in sorted(range(1 << m.n), key=sort_key):
        if m.is_cyclic(mask) and m.is_flat(mask):
            out.append((mask, m.rank(mask)))
    return out


def cyclic_flats(m: Matroid) -> "zlattice.CyclicFlatLattice":
    """The lattice of cyclic flats (validated)."""
    if isinstance(m, LatticeMatroid):
        return m.lattice
    lat = zlattice.CyclicFlatLattice(m.n, tuple(cyclic_flat_members(m)))
    report = zlattice.validate(lat)
    # A rank oracle that satisfies (R1)-(R3) always yields a valid lattice.
    assert report.valid, f"cyclic flats of {m!r} violate lattice axioms: {report}"
    return lat


@dataclass(frozen=True)
class RankViolation:
    axiom: str  # "R1" | "R2" | "R3"
    sets: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class RankAxiomReport:
    valid: bool
    violations: tuple[RankViolation, ...] = field(default=())

    def __str__(self):
        if self.valid:
            return "rank axioms hold"
        lines = [f"{v.axiom}: {v.detail}" for v in self.violations]
        return "; ".join(lines)


def validate_rank_axioms(m: Matroid, max_violations: int = 50) -> RankAxiomReport:
    """Exhaustively check (R1)-(R3).

    (R3) over all pairs is 4^n work; it is checked in the equivalent local
    form rho(X+a) + rho(X+b) >= rho(X+a+b) + rho(X) over all X and distinct
    a, b outside X, which is 2^n * n^2 and equivalent for any set function.
    Each local failure is reported as an (R3) witness pair (X+a, X+b).
    """
    _check_cap(m, AXIOM_CAP, "rank axiom validation")
    m.precompute_ranks()
    bad: list[RankViolation] = []

    def push(v: RankViolation) -> bool:
        bad.append(v)
        return len(bad) >= max_violations

    n = m.n
    for mask in range(1 << n):
        r = m.rank(mask)
        if not 0 <= r <= mask.bit_count():
            if push(RankViolation("R1", (mask,),
                                  f"rho({bitset.format_set(mask)}) = {r}")):
                return RankAxiomReport(False, tuple(bad))
        outside = list(iter_elements(m.ground & ~mask))
        for i, a in enumerate(outside):
            ra = m.rank(mask | (1 << a))
            if ra < r:
                if push(RankViolation("R2", (mask, mask | (1 << a)),
                                      f"rho drops from {r} to {ra} when adding {a}")):
                    return RankAxiomReport(False, tuple(bad))
            for b in outside[i + 1:]:
                rb = m.rank(mask | (1 << b))
                rab = m.rank(mask | (1 << a) | (1 << b))
                if ra + rb < rab + r:
                    x, y = mask | (1 << a), mask | (1 << b)
                    if push(RankViolation(
                            "R3", (x, y),
                            f"rho{bitset.format_set(x)} + rho{bitset.format_set(y)}"
                            f" = {ra}+{rb} < {rab}+{r}")):
                        return RankAxiomReport(False, tuple(bad))
    return RankAxiomReport(not bad, tuple(bad))


def rank_functions_agree(m1: Matroid, m2: Matroid) -> bool:
    """Exhaustive rank comparison on every subset (same ground size)."""
    if m1.n != m2.n:
        return False
    _check_cap(m1, CIRCUIT_CAP, "exhaustive rank comparison")
    return all(m1.rank(mask) == m2.rank(mask) for mask in range(1 << m1.n))
