"""Matroid constructions with prescribed (n, k, d, r, delta).

The general construction takes flats F_1..F_m with local ranks and a
global rank k, subject to

    (i)    0 < rho(F_i) < |F_i|
    (ii)   the flats cover the ground set
    (iii)  k <= n - sum of local nullities
    (iv)   |F_I & F_j| < rho(F_j) whenever j is outside I,

and produces the matroid whose cyclic flats are the unions F_J of rank
|F_J| - sum_{i in J} eta(F_i) below k, together with E at rank k.

The weighted-graph specialization realizes flats of size r + delta - 1 and
rank r whose pairwise intersections have prescribed sizes gamma({i,j}),
one flat per vertex, intersections per edge (triangle-free, so triple
intersections vanish).

``dmax_decide`` classifies a parameter tuple by the defects
a = ceil(k/r)*r - k and b = ceil(n/(r+delta-1))*(r+delta-1) - n and either
certifies the largest achievable distance with a generated witness, proves
the bound unreachable, or reports the open subregime.  All witnesses get
their distance measured; claimed formulas are never trusted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from random import Random

from . import bitset, lrc, zlattice
from .bitset import elements_of, format_set, full_mask, mask_of
from .errors import CapacityError, ConstructionError, DomainError, FormatError
from .lrc import LrcParams
from .matroid import LatticeMatroid, Matroid, UniformMatroid

LATTICE_MEMBER_CAP = 200_000
SEARCH_CAP = 16


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


# -- set systems ---------------------------------------------------------------


@dataclass(frozen=True)
class SetSystem:
    """Flats with local ranks plus the global rank k, on ground set [n]."""

    n: int
    flats: tuple[tuple[int, int], ...]  # (bitmask, local rank)
    k: int

    @classmethod
    def from_sets(cls, n: int, flats, k: int) -> "SetSystem":
        return cls(n, tuple((mask_of(els, n), int(r)) for els, r in flats), int(k))

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "flats": [
                {"elements": elements_of(f), "rank": r} for f, r in self.flats
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(), **kw)

    @classmethod
    def from_json_dict(cls, data: dict) -> "SetSystem":
        try:
            n = int(data["n"])
            k = int(data["k"])
            flats = [(f["elements"], int(f["rank"])) for f in data["flats"]]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad set system JSON: {exc}") from exc
        return cls.from_sets(n, flats, k)

    @classmethod
    def from_json(cls, text: str) -> "SetSystem":
        return cls.from_json_dict(json.loads(text))


def validate_set_system(sys: SetSystem) -> list[str]:
    """Violated construction conditions, named; empty list means valid."""
    problems = []
    if not sys.flats:
        return ["no flats given"]
    union = 0
    for idx, (f, r) in enumerate(sys.flats):
        bitset.check_subset(f, sys.n)
        union |= f
        if not 0 < r < f.bit_count():
            problems.append(f"(i) flat {idx}: rank {r} not strictly between 0 and {f.bit_count()}")
    if union != full_mask(sys.n):
        problems.append(f"(ii) flats cover {format_set(union)}, not the full ground set")
    total_eta = sum(f.bit_count() - r for f, r in sys.flats)
    if sys.k > union.bit_count() - total_eta:
        problems.append(f"(iii) k = {sys.k} exceeds {union.bit_count() - total_eta}")
    # (iv) is monotone in I, so the union of all other flats is the worst case
    for j, (fj, rj) in enumerate(sys.flats):
        others = 0
        for i, (fi, _) in enumerate(sys.flats):
            if i != j:
                others |= fi
        if (fj & others).bit_count() >= rj:
            problems.append(
                f"(iv) flat {j}: shared part {format_set(fj & others)} has size"
                f" >= local rank {rj}")
    return problems


def general_construction(sys: SetSystem) -> LatticeMatroid:
    """Build the matroid of a valid set system.

    The returned matroid carries the generating system as ``set_system``
    and the closed-form parameters as ``declared``; its measured distance
    comes from the coatom formula through the usual lrc entry points.
    """
    problems = validate_set_system(sys)
    if problems:
        raise ConstructionError("set system rejected: " + "; ".join(problems))
    flats = sys.flats
    etas = [f.bit_count() - r for f, r in flats]
    members: dict[int, int] = {0: 0}

    def grow(start: int, mask: int, eta: int) -> None:
        for j in range(start, len(flats)):
            nm = mask | flats[j][0]
            ne = eta + etas[j]
            rank = nm.bit_count() - ne
            if rank < sys.k:
                if len(members) > LATTICE_MEMBER_CAP:
                    raise CapacityError("cyclic-flat family exceeds size cap")
                members[nm] = rank
                grow(j + 1, nm, ne)

    grow(0, 0, 0)
    members[full_mask(sys.n)] = sys.k

    lat = zlattice.CyclicFlatLattice.from_pairs(sys.n, members.items())
    m = LatticeMatroid(lat)
    worst = max(f.bit_count() - r for f, r in members.items() if r < sys.k)
    m.set_system = sys
    m.declared = LrcParams(
        n=sys.n,
        k=sys.k,
        d=sys.n - sys.k + 1 - worst,
        r=max(r for _, r in flats),
        delta=1 + min(etas),
    )
    return m


# -- weighted graphs -----------------------------------------------------------


@dataclass(frozen=True)
class WeightedGraph:
    """Simple graph on vertices [m] with positive integer edge weights."""

    m: int
    edges: tuple[tuple[int, int, int], ...]  # (i, j, gamma), i < j

    def __post_init__(self):
        seen = set()
        for i, j, g in self.edges:
            if not 0 <= i < j < self.m:
                raise FormatError(f"bad edge ({i},{j}) on {self.m} vertices")
            if g < 1:
                raise FormatError(f"edge ({i},{j}) has weight {g} < 1")
            if (i, j) in seen:
                raise FormatError(f"duplicate edge ({i},{j})")
            seen.add((i, j))

    def weight_sum(self) -> int:
        return sum(g for _, _, g in self.edges)

    def incident_weight(self, v: int) -> int:
        return sum(g for i, j, g in self.edges if v in (i, j))

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.m)]
        for i, j, _ in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def to_json_dict(self) -> dict:
        return {"m": self.m, "edges": [[i, j, g] for i, j, g in self.edges]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(), **kw)

    @classmethod
    def from_json_dict(cls, data: dict) -> "WeightedGraph":
        try:
            m = int(data["m"])
            edges = tuple(tuple(int(v) for v in e) for e in data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad graph JSON: {exc}") from exc
        return cls(m, edges)

    @classmethod
    def from_json(cls, text: str) -> "WeightedGraph":
        return cls.from_json_dict(json.loads(text))

    def to_dot(self) -> str:
        lines = ["graph blocks {"]
        for v in range(self.m):
            lines.append(f'  v{v} [label="F{v}"];')
        for i, j, g in self.edges:
            lines.append(f'  v{i} -- v{j} [label="{g}"];')
        lines.append("}")
        return "\n".join(lines)


def validate_graph(g: WeightedGraph, k: int, r: int, delta: int) -> list[str]:
    """Violated graph-construction conditions: (i) triangle-free,
    (ii) k <= r*m - total weight, (iii) per-vertex weight below r."""
    problems = []
    if delta < 2:
        problems.append(f"delta = {delta} < 2")
    if r < 1 or k < 1:
        problems.append(f"need r, k >= 1, got r={r}, k={k}")
    adj = g.adjacency()
    for i, j, _ in g.edges:
        common = adj[i] & adj[j]
        if common:
            problems.append(f"(i) triangle on vertices {i}, {j}, {min(common)}")
            break
    if k > r * g.m - g.weight_sum():
        problems.append(f"(ii) k = {k} > r*m - total weight = {r * g.m - g.weight_sum()}")
    for v in range(g.m):
        if g.incident_weight(v) >= r:
            problems.append(f"(iii) vertex {v} carries weight {g.incident_weight(v)} >= r")
    return problems


def graph_to_set_system(g: WeightedGraph, k: int, r: int, delta: int) -> SetSystem:
    """Materialize the flats of a weighted graph.

    Vertices receive fresh element indices in order.  For an edge {i, j}
    with i < j, the shared elements are the lowest-indexed elements of
    F_i not yet shared with any other flat; sharing only unshared elements
    keeps triple intersections empty, which triangle-freeness requires.
    """
    problems = validate_graph(g, k, r, delta)
    if problems:
        raise ConstructionError("graph rejected: " + "; ".join(problems))
    size = r + delta - 1
    by_vertex: list[list[tuple[int, int]]] = [[] for _ in range(g.m)]
    for i, j, w in g.edges:
        by_vertex[i].append((j, w))
        by_vertex[j].append((i, w))
    reserved: dict[tuple[int, int], list[int]] = {}
    flats: list[list[int]] = []
    next_free = 0
    for v in range(g.m):
        elems: list[int] = []
        for u, _ in sorted(by_vertex[v]):
            if u < v:
                elems.extend(reserved.pop((u, v)))
        fresh = list(range(next_free, next_free + size - len(elems)))
        next_free += len(fresh)
        elems.extend(fresh)
        avail = list(fresh)
        for u, w in sorted(by_vertex[v]):
            if u > v:
                reserved[(v, u)] = avail[:w]
                avail = avail[w:]
        flats.append(sorted(elems))
    n = next_free
    return SetSystem.from_sets(n, [(f, r) for f in flats], k)


def graph_construction(g: WeightedGraph, k: int, r: int, delta: int) -> LatticeMatroid:
    return general_construction(graph_to_set_system(g, k, r, delta))


def graph_formulas(g: WeightedGraph, k: int, r: int, delta: int) -> tuple[int, int]:
    """Closed-form (n, d) of the graph construction, as an independent
    cross-check of the measured values.  Exhaustive over vertex subsets."""
    if g.m > SEARCH_CAP:
        raise CapacityError(f"formula evaluation capped at m <= {SEARCH_CAP}")
    n = g.m * (r + delta - 1) - g.weight_sum()
    edge_masks = [((1 << i) | (1 << j), w) for i, j, w in g.edges]
    best = 0
    for vmask in range(1 << g.m):
        inner = sum(w for em, w in edge_masks if em & vmask == em)
        if r * vmask.bit_count() - inner < k:
            best = max(best, vmask.bit_count())
    return n, n - k + 1 - (delta - 1) * best


# -- d_max decision ------------------------------------------------------------


@dataclass(frozen=True)
class DmaxVerdict:
    """Outcome of the d_max classification for one parameter tuple.

    ``perfect`` is True when the distance bound is achieved (d_max equals
    the bound, witnessed), False when provably unreachable, None when the
    tuple falls in the open subregime.  d_lower always comes from a
    measured witness; d_upper is the bound (minus one on nonexistence).
    """

    n: int
    k: int
    r: int
    delta: int
    a: int
    b: int
    case_tag: str
    perfect: bool | None
    d_upper: int
    d_lower: int
    d_lower_rule: str = ""
    witness: Matroid | None = field(default=None, compare=False, repr=False)
    witness_params: LrcParams | None = None
    notes: str = ""

    def to_json_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "r": self.r, "delta": self.delta,
            "a": self.a, "b": self.b, "case": self.case_tag,
            "perfect": self.perfect,
            "d_upper": self.d_upper, "d_lower": self.d_lower,
            "d_lower_rule": self.d_lower_rule,
            "witness_params": list(self.witness_params.as_tuple()) if self.witness_params else None,
            "notes": self.notes,
        }


def defects(n: int, k: int, r: int, delta: int) -> tuple[int, int]:
    """a = ceil(k/r)*r - k and b = ceil(n/(r+delta-1))*(r+delta-1) - n."""
    return (ceil_div(k, r) * r - k,
            ceil_div(n, r + delta - 1) * (r + delta - 1) - n)


def _blocks_system(n: int, sizes_ranks: list[tuple[int, int]], k: int) -> SetSystem:
    flats = []
    at = 0
    for size, rank in sizes_ranks:
        flats.append((range(at, at + size), rank))
        at += size
    if at != n:
        raise ConstructionError(f"blocks cover {at} elements, expected {n}")
    return SetSystem.from_sets(n, flats, k)


def gen_blocks_case_i(n: int, k: int, r: int, delta: int) -> LatticeMatroid:
    """Disjoint full blocks plus one short tail block of rank r - b.
    Requires a >= b; the witness meets the distance bound."""
    a, b = defects(n, k, r, delta)
    if a < b:
        raise DomainError(f"requires a >= b, got a={a}, b={b}")
    size = r + delta - 1
    mhat = ceil_div(n, size)
    blocks = [(size, r)] * (mhat - 1) + [(size - b, r - b)]
    return general_construction(_blocks_system(n, blocks, k))


def gen_blocks_case_ii(n: int, k: int, r: int, delta: int) -> LatticeMatroid:
    """Disjoint full blocks plus one double-length tail block of rank r.
    Requires b > a; for b >= r the measured distance is
    n - k + 1 - ceil(k/r)(delta-1) + (b - r)."""
    a, b = defects(n, k, r, delta)
    if b <= a:
        raise DomainError(f"requires b > a, got a={a}, b={b}")
    size = r + delta - 1
    m = ceil_div(n, size) - 1
    blocks = [(size, r)] * (m - 1) + [(2 * size - b, r)]
    return general_construction(_blocks_system(n, blocks, k))


def _short_tail_blocks(n: int, k: int, r: int, delta: int) -> LatticeMatroid:
    """The case-i block shape used as a distance floor when b <= r - 1."""
    _, b = defects(n, k, r, delta)
    if b > r - 1:
        raise DomainError(f"requires b <= r - 1, got b={b}")
    size = r + delta - 1
    mhat = ceil_div(n, size)
    blocks = [(size, r)] * (mhat - 1) + [(size - b, r - b)]
    return general_construction(_blocks_system(n, blocks, k))


def _path_graph(path_sizes: list[int], weights: list[int], m: int) -> WeightedGraph:
    """Vertex-disjoint paths with the given vertex counts, consecutive edge
    weights drawn from *weights* in order, padded with isolated vertices."""
    edges = []
    at = 0
    wi = 0
    for size in path_sizes:
        for step in range(size - 1):
            edges.append((at + step, at + step + 1, weights[wi]))
            wi += 1
        at += size
    if at > m:
        raise ConstructionError(f"paths need {at} vertices, only {m} available")
    return WeightedGraph(m, tuple(edges))


def gen_paths_case_iii(n: int, k: int, r: int, delta: int) -> LatticeMatroid:
    """Unit-weight vertex-disjoint paths witnessing the bound in the regime
    b > a, floor(h/2) <= a < h - 1 (h = ceil(k/r)) when the ground set is
    long enough."""
    h = ceil_div(k, r)
    a, b = defects(n, k, r, delta)
    mhat = ceil_div(n, r + delta - 1)
    if not (b > a and a < h - 1):
        raise DomainError(f"requires b > a and a < h-1, got a={a}, b={b}, h={h}")
    if a < h // 2:
        raise ConstructionError(f"bound unreachable here: a={a} < floor(h/2)={h // 2}")
    t = a // (h - 1 - a)
    if t * (mhat - (h - 1) - (b - a)) < b - a:
        raise ConstructionError(
            f"vertex budget too small: ceil(n/(r+delta-1)) = {mhat}"
            f" < h - 1 + (b-a)(1 + 1/t) with t = {t}")
    s = (h - 1) // (h - 1 - a)
    u = (h - 1 - a) + ceil_div(b - a, s - 1)
    x = (h - 1) - s * (h - 1 - a)
    rem = (b - a) % (s - 1)
    sizes = [s + 1] * x + [s] * (u - 1 - x)
    sizes.append(s if rem == 0 else rem + 1)
    graph = _path_graph(sizes, [1] * b, mhat)
    assert graph.weight_sum() == b
    return graph_construction(graph, k, r, delta)


def gen_theta_case_iv(n: int, k: int, r: int, delta: int) -> LatticeMatroid:
    """Glued-path (theta) blocks witnessing the bound in the regime
    b > a >= h - 1, h >= 3, when the vertex budget suffices.

    The building block glues t paths of u + 1 vertices at a common start p
    and end q; edges are numbered path by path, start to end.  The graph is
    floor(b/(stu)) whole blocks plus the first x edges of one more block,
    all edges at weight s except the x-th, which absorbs b mod s.
    """
    h = ceil_div(k, r)
    a, b = defects(n, k, r, delta)
    mhat = ceil_div(n, r + delta - 1)
    if not (b > a and a >= h - 1 and h >= 3):
        raise DomainError(f"requires b > a >= h-1 and h >= 3, got a={a}, b={b}, h={h}")
    s = a // (h - 1)
    t = (r - 1) // s
    u = ceil_div(h + 1, 2)
    copies, rem = divmod(b, s * t * u)
    if rem == 0:
        x = 0
        y = 0
    else:
        x = ceil_div(rem, s)
        y = x - x // u + 1 + min(x // u, 1)
    if mhat < copies * (t * (u - 1) + 2) + y:
        raise ConstructionError(
            f"vertex budget too small: ceil(n/(r+delta-1)) = {mhat}"
            f" < {copies * (t * (u - 1) + 2) + y}")

    edges: list[tuple[int, int, int]] = []
    at = 0

    def add_block(edge_count: int, last_weight: int) -> None:
        """One glued block (or its first edge_count edges)."""
        nonlocal at
        p = at
        at += 1
        q = None
        local = 0
        for path in range(t):
            prev = p
            for step in range(u):
                local += 1
                if local > edge_count:
                    return
                if step == u - 1:
                    if q is None:
                        q = at
                        at += 1
                    node = q
                else:
                    node = at
                    at += 1
                w = last_weight if local == edge_count else s
                edges.append((min(prev, node), max(prev, node), w))
                prev = node

    for _ in range(copies):
        add_block(t * u, s)
    if rem:
        add_block(x, s if b % s == 0 else b % s)
    if at > mhat:
        raise ConstructionError(f"blocks need {at} vertices, only {mhat} available")
    graph = WeightedGraph(mhat, tuple(sorted(edges)))
    assert graph.weight_sum() == b
    return graph_construction(graph, k, r, delta)


def gen_path_case_v(n: int, k: int, r: int, delta: int) -> LatticeMatroid:
    """Single weighted path witnessing the bound when h = ceil(k/r) = 2 and
    b > a >= 1, with edge weights a (if 2a <= r-1) or floor((r-1)/2)."""
    h = ceil_div(k, r)
    a, b = defects(n, k, r, delta)
    mhat = ceil_div(n, r + delta - 1)
    if not (h == 2 and b > a and a >= 1):
        raise DomainError(f"requires h = 2 and b > a >= 1, got a={a}, b={b}, h={h}")
    c = a if 2 * a <= r - 1 else (r - 1) // 2
    if c < 1:
        raise ConstructionError("no admissible edge weight (r too small)")
    if mhat < ceil_div(b, c) + 1:
        raise ConstructionError(
            f"vertex budget too small: ceil(n/(r+delta-1)) = {mhat}"
            f" < ceil(b/c) + 1 = {ceil_div(b, c) + 1}")
    count = ceil_div(b, c)
    weights = [c] * count
    if b % c:
        weights[-1] = b % c
    graph = _path_graph([count + 1], weights, mhat)
    assert graph.weight_sum() == b
    return graph_construction(graph, k, r, delta)


def _measured(m: Matroid, r: int, delta: int) -> LrcParams:
    return LrcParams(m.n, m.full_rank, lrc.min_distance(m), r, delta)


def _paths_sufficient(n: int, k: int, r: int, delta: int) -> bool:
    """Exact test for the regime b > a, a < h - 1: the bound is reachable
    iff floor(h/2) <= a and the vertex budget covers the path layout."""
    h = ceil_div(k, r)
    a, b = defects(n, k, r, delta)
    if a < h // 2:
        return False
    t = a // (h - 1 - a)
    mhat = ceil_div(n, r + delta - 1)
    return t * (mhat - (h - 1) - (b - a)) >= b - a


def _theta_sufficient(n: int, k: int, r: int, delta: int) -> bool:
    h = ceil_div(k, r)
    a, b = defects(n, k, r, delta)
    s = a // (h - 1)
    t = (r - 1) // s
    u = ceil_div(h + 1, 2)
    copies, rem = divmod(b, s * t * u)
    if rem == 0:
        y = 0
    else:
        x = ceil_div(rem, s)
        y = x - x // u + 1 + min(x // u, 1)
    return ceil_div(n, r + delta - 1) >= copies * (t * (u - 1) + 2) + y


def _path_v_sufficient(n: int, k: int, r: int, delta: int) -> bool:
    a, b = defects(n, k, r, delta)
    c = a if 2 * a <= r - 1 else (r - 1) // 2
    if c < 1:
        return False
    return ceil_div(n, r + delta - 1) >= ceil_div(b, c) + 1


def dmax_decide(n: int, k: int, r: int, delta: int,
                with_witness: bool = True) -> DmaxVerdict:
    """Classify (n, k, r, delta) and report the best knowledge about d_max."""
    if not 1 <= r <= k <= n:
        raise DomainError(f"need 1 <= r <= k <= n, got ({n},{k},{r},{delta})")
    ok, reasons = lrc.aux_bounds_ok(n, k, r, delta)
    if not ok:
        raise DomainError("infeasible parameters: " + "; ".join(reasons))
    h = ceil_div(k, r)
    a, b = defects(n, k, r, delta)
    bound = lrc.singleton_bound(n, k, r, delta)
    floor_claim = n - k + 1 - h * (delta - 1) + (b - r if b >= r else 0)

    def verdict(tag, perfect, d_upper, claim, builder, rule, notes=""):
        witness = builder(n, k, r, delta) if with_witness else None
        wp = _measured(witness, r, delta) if witness is not None else None
        d_lower = wp.d if wp is not None else claim
        return DmaxVerdict(n, k, r, delta, a, b, tag, perfect, d_upper,
                           d_lower, rule, witness, wp, notes)

    def floor_rule():
        if b <= r - 1:
            return _short_tail_blocks, "short_tail_blocks"
        return gen_blocks_case_ii, "double_tail_blocks"

    if r == k:
        return verdict("r_eq_k", True, n - k + 1, n - k + 1,
                       lambda *args: UniformMatroid(n, k), "uniform")
    if a >= b:
        return verdict("i", True, bound, bound, gen_blocks_case_i,
                       "short_tail_blocks")

    # b > a from here on
    if a < h - 1:
        if _paths_sufficient(n, k, r, delta):
            return verdict("iii_yes", True, bound, bound,
                           gen_paths_case_iii, "unit_paths")
        builder, rule = floor_rule()
        if a < h // 2:
            return verdict("nonexist_i", False, bound - 1, floor_claim,
                           builder, rule, notes="a below floor(h/2)")
        return verdict("nonexist_ii", False, bound - 1, floor_claim,
                       builder, rule,
                       notes="vertex budget below the path threshold")

    # b > a >= h - 1: only sufficient tests are known
    if h >= 3:
        if _theta_sufficient(n, k, r, delta):
            return verdict("iv_yes", True, bound, bound,
                           gen_theta_case_iv, "theta_blocks")
        builder, rule = floor_rule()
        return verdict("unknown", None, bound, floor_claim, builder, rule,
                       notes="theta-block budget test failed; subregime open")
    if _path_v_sufficient(n, k, r, delta):
        return verdict("v_yes", True, bound, bound,
                       gen_path_case_v, "weighted_path")
    builder, rule = floor_rule()
    return verdict("unknown", None, bound, floor_claim, builder, rule,
                   notes="weighted-path budget test failed; subregime open")


def feasible_tuples(n_max: int, delta: int = 2):
    """All (n, k, r) with r <= k <= n - ceil(k/r)(delta-1) for n <= n_max."""
    for n in range(2, n_max + 1):
        for k in range(1, n):
            for r in range(1, k + 1):
                if k <= n - ceil_div(k, r) * (delta - 1):
                    yield (n, k, r)


# -- exhaustive nonexistence oracle --------------------------------------------


def find_perfect_set_system(n: int, k: int, r: int, delta: int,
                            node_limit: int = 5_000_000) -> list[int] | None:
    """Search for flats F_1..F_m that a bound-achieving matroid would have:

        (c1) every flat keeps a private element (non-trivial union)
        (c2) delta <= |F_i| <= r + delta - 1
        (c3) the flats cover [n]
        (c4) |F & F_I| <= |F| - delta for F outside I, |I| < h
        (c5) |F_I| >= k + |I|(delta - 1) for |I| >= h
        (c6) sum of (|F_i| - delta + 1) >= k   (rank subadditivity)

    Returns the flat masks of the first system found in canonical order,
    or None when none exists, which certifies that no matroid attains the
    distance bound for these parameters.  Elements are introduced in
    canonical blocks: generation is complete up to isomorphism.
    """
    if n > SEARCH_CAP:
        raise CapacityError(f"set-system search capped at n <= {SEARCH_CAP}")
    h = ceil_div(k, r)
    size_cap = r + delta - 1
    m_max = (n - k) // (delta - 1)
    if m_max < h:
        return None
    nodes = 0

    def check_new_flat(flats: list[int], f_new: int) -> bool:
        t = len(flats)
        # (c4) with the new flat distinguished
        top = min(h - 1, t)
        for isize in range(1, top + 1):
            for combo in combinations(range(t), isize):
                fi = 0
                for c in combo:
                    fi |= flats[c]
                if (f_new & fi).bit_count() > f_new.bit_count() - delta:
                    return False
        # (c4) with an old flat distinguished, I containing the new one
        for oi, old in enumerate(flats):
            rest = [flats[i] for i in range(t) if i != oi]
            for isize in range(0, min(h - 2, len(rest)) + 1):
                for combo in combinations(range(len(rest)), isize):
                    fi = f_new
                    for c in combo:
                        fi |= rest[c]
                    if (old & fi).bit_count() > old.bit_count() - delta:
                        return False
        # (c5) for every family through the new flat
        if t + 1 >= h:
            for isize in range(h - 1, t + 1):
                for combo in combinations(range(t), isize):
                    fi = f_new
                    for c in combo:
                        fi |= flats[c]
                    if fi.bit_count() < k + (isize + 1) * (delta - 1):
                        return False
        return True

    def old_part_choices(flats: list[int], used: int, count: int):
        """Canonical submasks of the used prefix: within each class of
        elements sharing a membership signature, take a prefix."""
        if count == 0:
            yield 0
            return
        classes: dict[tuple, list[int]] = {}
        for e in range(used):
            sig = tuple(i for i, f in enumerate(flats) if f >> e & 1)
            classes.setdefault(sig, []).append(e)
        groups = list(classes.values())

        def rec(gi: int, remaining: int, mask: int):
            if remaining == 0:
                yield mask
                return
            if gi == len(groups):
                return
            group = groups[gi]
            for take in range(min(remaining, len(group)) + 1):
                sub = mask
                for e in group[:take]:
                    sub |= 1 << e
                yield from rec(gi + 1, remaining - take, sub)

        yield from rec(0, count, 0)

    def private_ok(flats: list[int]) -> bool:
        for i, f in enumerate(flats):
            rest = 0
            for j, g in enumerate(flats):
                if j != i:
                    rest |= g
            if f & ~rest == 0:
                return False
        return True

    def complete(flats: list[int], used: int) -> bool:
        if used != n or len(flats) < h:
            return False
        if sum(f.bit_count() - delta + 1 for f in flats) < k:
            return False
        return private_ok(flats)

    def dfs(flats: list[int], used: int) -> list[int] | None:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise CapacityError("set-system search exceeded its node limit")
        if complete(flats, used):
            return list(flats)
        t = len(flats)
        if t >= m_max:
            return None
        # remaining flats can introduce at most size_cap fresh elements each
        if n - used > (m_max - t) * size_cap:
            return None
        for total in range(delta, size_cap + 1):
            max_old = min(total - 1, used)
            for old_count in range(0, max_old + 1):
                fresh = total - old_count
                if used + fresh > n:
                    continue
                fresh_mask = ((1 << fresh) - 1) << used
                for old_mask in old_part_choices(flats, used, old_count):
                    f_new = old_mask | fresh_mask
                    if not check_new_flat(flats, f_new):
                        continue
                    flats.append(f_new)
                    if private_ok(flats):
                        got = dfs(flats, used + fresh)
                        if got is not None:
                            return got
                    flats.pop()
        return None

    return dfs([], 0)


def flat_assignment(m: LatticeMatroid) -> lrc.LocalityAssignment:
    """Locality assignment of a constructed matroid: each element repairs
    inside the first flat containing it, trimmed to local rank + delta - 1
    elements (the restriction to a flat is uniform, so any such subset has
    local distance exactly delta)."""
    sysm = getattr(m, "set_system", None)
    if sysm is None:
        raise DomainError("matroid does not carry a generating set system")
    r = m.declared.r
    delta = m.declared.delta
    sets = []
    for x in range(m.n):
        flat, rank = next(p for p in sysm.flats if p[0] >> x & 1)
        s = 1 << x
        for e in elements_of(flat):
            if s.bit_count() >= rank + delta - 1:
                break
            s |= 1 << e
        sets.append(s)
    return lrc.LocalityAssignment(r, delta, tuple(sets))


# -- random systems for invariant sweeps ---------------------------------------


def random_set_system(rng: Random, n_max: int = 10, m_max: int = 3,
                      max_tries: int = 1000) -> SetSystem:
    """A random valid set system, for seeded invariant sweeps."""
    for _ in range(max_tries):
        n = rng.randint(4, n_max)
        m = rng.randint(1, m_max)
        cells = [rng.randrange(m) for _ in range(n)]
        flats = [[e for e in range(n) if cells[e] == i] for i in range(m)]
        for f in flats:
            extras = [e for e in range(n) if e not in f and rng.random() < 0.15]
            f.extend(extras)
        if any(len(f) < 2 for f in flats):
            continue
        pairs = []
        for f in flats:
            pairs.append((f, rng.randint(1, len(f) - 1)))
        total_eta = sum(len(f) - r for f, r in pairs)
        if n - total_eta < 1:
            continue
        k = rng.randint(1, n - total_eta)
        sys = SetSystem.from_sets(n, pairs, k)
        if not validate_set_system(sys):
            return sys
    raise CapacityError("failed to sample a valid set system")
