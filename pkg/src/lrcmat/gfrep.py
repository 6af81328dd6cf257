"""Prime-field generator matrices and randomized representation search.

A k x n matrix over GF(p) induces a matroid on its columns (rank of a
subset = rank of the column submatrix); the minimum distance of the row
span matches the matroid distance.  ``find_representation`` searches for
a matrix whose matroid equals a given target, certifying every candidate
by exhaustive rank comparison over all 2^n subsets before accepting it.

Candidates are drawn through the layered-digraph realization whenever the
target admits one (its flats steer which column patterns can be nonzero:
the candidate is a random sink layer times a random arc layer), which
keeps the success probability bounded away from zero for large p; targets
without such structure fall back to uniform sampling.  Certification is
identical either way.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from random import Random

from . import zlattice
from .bitset import full_mask, iter_elements, mask_of
from .construct import SetSystem, general_construction, validate_set_system
from .errors import CapacityError, DomainError, FormatError, UndefinedParameterError
from .gammoid import GammoidGraph, GammoidMatroid, build_graph
from .matroid import Matroid, UniformMatroid, cyclic_flats, rank_functions_agree

REP_CAP = 14
DISTANCE_CAP = 20
DEFAULT_ATTEMPTS = 10_000


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not 2 <= self.p < 2 ** 31 or not is_prime(self.p):
            raise DomainError(f"{self.p} is not a prime in [2, 2^31)")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)


@dataclass(frozen=True)
class FieldMatrix:
    """k x n matrix over GF(p); rows are information symbols, columns nodes."""

    p: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, p: int, rows) -> "FieldMatrix":
        field = PrimeField(p)
        canon = tuple(tuple(int(v) % field.p for v in row) for row in rows)
        if not canon or not canon[0]:
            raise FormatError("matrix needs at least one row and one column")
        width = len(canon[0])
        if any(len(r) != width for r in canon):
            raise FormatError("ragged matrix rows")
        return cls(field.p, canon)

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.rows)

    def to_json_dict(self) -> dict:
        return {"p": self.p, "k": self.k, "n": self.n,
                "rows": [list(r) for r in self.rows]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(), **kw)

    @classmethod
    def from_json_dict(cls, data: dict) -> "FieldMatrix":
        try:
            mat = cls.make(int(data["p"]), data["rows"])
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad matrix JSON: {exc}") from exc
        if mat.k != int(data.get("k", mat.k)) or mat.n != int(data.get("n", mat.n)):
            raise FormatError("matrix JSON shape disagrees with rows")
        return mat

    @classmethod
    def from_json(cls, text: str) -> "FieldMatrix":
        return cls.from_json_dict(json.loads(text))

    def to_csv(self) -> str:
        return "\n".join(",".join(str(v) for v in row) for row in self.rows)


def _reduce_insert(basis: list[tuple[int, tuple[int, ...]]],
                   vec: tuple[int, ...], p: int) -> tuple[int, tuple[int, ...]] | None:
    """Reduce vec against a pivot-normalized basis; return the new
    (pivot, normalized vector) or None if vec lies in the span."""
    v = list(vec)
    for pivot, bv in basis:
        c = v[pivot]
        if c:
            v = [(x - c * y) % p for x, y in zip(v, bv)]
    for i, x in enumerate(v):
        if x:
            inv = pow(x, p - 2, p)
            return i, tuple((val * inv) % p for val in v)
    return None


def matrix_rank(mat: FieldMatrix, cols: int) -> int:
    """Rank of the column submatrix selected by the bitmask *cols*."""
    if cols < 0 or cols >> mat.n:
        raise DomainError(f"column set {bin(cols)} exceeds width {mat.n}")
    basis: list[tuple[int, tuple[int, ...]]] = []
    for j in iter_elements(cols):
        got = _reduce_insert(basis, mat.column(j), mat.p)
        if got is not None:
            basis.append(got)
            if len(basis) == mat.k:
                break
    return len(basis)


def subset_ranks(mat: FieldMatrix) -> list[int]:
    """Ranks of every column subset, by dynamic programming on bitmasks
    (each mask extends the mask without its highest column by one vector)."""
    if mat.n > REP_CAP:
        raise CapacityError(f"all-subset ranks capped at n <= {REP_CAP}")
    p = mat.p
    cols = [mat.column(j) for j in range(mat.n)]
    bases: list[tuple] = [()] * (1 << mat.n)
    ranks = [0] * (1 << mat.n)
    for mask in range(1, 1 << mat.n):
        top = mask.bit_length() - 1
        prev = mask ^ (1 << top)
        basis = bases[prev]
        got = _reduce_insert(list(basis), cols[top], p)
        if got is None:
            bases[mask] = basis
            ranks[mask] = ranks[prev]
        else:
            bases[mask] = basis + (got,)
            ranks[mask] = ranks[prev] + 1
    return ranks


class MatrixMatroid(Matroid):
    """Column matroid of a generator matrix over GF(p)."""

    def __init__(self, mat: FieldMatrix):
        super().__init__(mat.n)
        self.matrix = mat

    def _rank(self, mask: int) -> int:
        return matrix_rank(self.matrix, mask)

    def precompute_ranks(self) -> None:
        if len(self._memo) < (1 << self.n):
            for mask, r in enumerate(subset_ranks(self.matrix)):
                self._memo[mask] = r

    def __repr__(self):
        return f"MatrixMatroid(k={self.matrix.k}, n={self.n}, p={self.matrix.p})"


def matroid_from_matrix(mat: FieldMatrix) -> MatrixMatroid:
    return MatrixMatroid(mat)


def code_min_distance(mat: FieldMatrix) -> int:
    """Minimum distance of the row-span code: the smallest number of
    columns whose removal drops the rank.  Ascending-size erasure scan."""
    if mat.n > DISTANCE_CAP:
        raise CapacityError(f"distance scan capped at n <= {DISTANCE_CAP}")
    k = matrix_rank(mat, full_mask(mat.n))
    if k == 0:
        raise UndefinedParameterError("distance undefined: zero matrix")
    for t in range(1, mat.n + 1):
        for combo in combinations(range(mat.n), t):
            erased = mask_of(combo, mat.n)
            if matrix_rank(mat, full_mask(mat.n) & ~erased) < k:
                return t
    raise AssertionError("unreachable: removing all columns drops rank")


# -- representation search -----------------------------------------------------


@dataclass(frozen=True)
class RepresentationResult:
    found: bool
    matrix: FieldMatrix | None
    attempts: int
    seed: int


def representation_graph(m: Matroid) -> GammoidGraph | None:
    """A layered digraph realizing the target, when one can be derived:
    directly for gammoid/uniform backings or matroids that remember their
    generating set system, otherwise from the atoms of the cyclic-flat
    lattice when those regenerate the matroid exactly."""
    if isinstance(m, GammoidMatroid):
        return m.graph
    sys = getattr(m, "set_system", None)
    if sys is not None:
        return build_graph(sys)
    if isinstance(m, UniformMatroid):
        if 0 < m.k < m.n:
            sys = SetSystem.from_sets(m.n, [(range(m.n), m.k)], m.k)
            return build_graph(sys)
        return None
    if m.n > REP_CAP:
        return None
    lat = cyclic_flats(m)
    if lat.bottom != 0 or lat.top != m.ground:
        return None
    ranks = dict(lat.members)
    flats = [(atom, ranks[atom]) for atom in zlattice.atoms(lat)]
    if not flats:
        return None
    sys = SetSystem(m.n, tuple(flats), m.full_rank)
    if validate_set_system(sys):
        return None
    if not rank_functions_agree(general_construction(sys), m):
        return None
    return build_graph(sys)


def _ranks_agree(mat: FieldMatrix, target: list[int]) -> bool:
    """Early-exit comparison of the candidate's subset ranks with the target."""
    p = mat.p
    cols = [mat.column(j) for j in range(mat.n)]
    bases: list[tuple] = [()] * (1 << mat.n)
    ranks = [0] * (1 << mat.n)
    for mask in range(1, 1 << mat.n):
        top = mask.bit_length() - 1
        prev = mask ^ (1 << top)
        got = _reduce_insert(list(bases[prev]), cols[top], p)
        if got is None:
            bases[mask] = bases[prev]
            ranks[mask] = ranks[prev]
        else:
            bases[mask] = bases[prev] + (got,)
            ranks[mask] = ranks[prev] + 1
        if ranks[mask] != target[mask]:
            return False
    return True


def find_representation(m: Matroid, p: int, seed: int = 0,
                        max_attempts: int = DEFAULT_ATTEMPTS) -> RepresentationResult:
    """Search for a GF(p) generator matrix with exactly the target matroid.

    Acceptance is certified by rank agreement on all 2^n subsets, never
    sampled.  A found=False result only means the attempt budget ran out.
    """
    if m.n > REP_CAP:
        raise CapacityError(f"representation search capped at n <= {REP_CAP}")
    field = PrimeField(p)
    n = m.n
    m.precompute_ranks()
    target = [m.rank(mask) for mask in range(1 << n)]
    k = target[full_mask(n)]
    if k == 0 or n == 0:
        mat = FieldMatrix.make(p, [[0] * max(n, 1)])
        ok = n == 0 or _ranks_agree(mat, target)
        return RepresentationResult(ok, mat if ok else None, 1, seed)

    graph = representation_graph(m)
    for attempt in range(1, max_attempts + 1):
        # per-attempt stream: results do not depend on evaluation order
        rng = Random(seed * 1_000_003 + attempt)
        if graph is not None:
            hnodes = len(graph.h_labels)
            arc_layer = [[0] * n for _ in range(hnodes)]
            for e in range(n):
                for i in graph.out_arcs[e]:
                    arc_layer[i][e] = rng.randrange(1, field.p) if field.p > 2 else 1
            sink_layer = [[rng.randrange(field.p) for _ in range(hnodes)]
                          for _ in range(k)]
            rows = [[sum(sink_layer[row][i] * arc_layer[i][col] for i in range(hnodes)) % field.p
                     for col in range(n)] for row in range(k)]
        else:
            rows = [[rng.randrange(field.p) for _ in range(n)] for _ in range(k)]
        cand = FieldMatrix.make(p, rows)
        if _ranks_agree(cand, target):
            return RepresentationResult(True, cand, attempt, seed)
    return RepresentationResult(False, None, max_attempts, seed)


def min_field_scan(m: Matroid, primes, seed: int = 0,
                   max_attempts: int = 1000) -> list[tuple[int, bool, int]]:
    """Run the representation search over a list of primes; purely
    empirical evidence about the smallest workable field."""
    out = []
    for p in primes:
        res = find_representation(m, p, seed=seed, max_attempts=max_attempts)
        out.append((p, res.found, res.attempts))
    return out
