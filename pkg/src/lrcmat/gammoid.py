"""Layered gammoid realization of a set-system matroid.

The digraph has three layers: one source per ground element, a middle
layer H, and k sinks, with every H node wired to every sink.  H holds one
node u_e per element e shared by two or more flats (scoped to exactly the
flats containing e) and, per flat i, enough single-flat nodes v_i_j to
bring the count of H nodes scoped to i up to the local rank rho(F_i).
A source e reaches an H node u iff every flat containing e also scopes u.

Independence of X then means |X| <= k and X matches into H, and the
resulting matroid coincides with the one built directly from the set
system; ``equivalence_check`` verifies that exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitset import elements_of, format_set, iter_elements
from .construct import SetSystem, general_construction
from .errors import CapacityError, ConstructionError
from .matroid import Matroid, rank_functions_agree

EQUIV_CAP = 14


@dataclass(frozen=True)
class GammoidGraph:
    """Sources 0..n-1, middle layer H, k sinks; H x sinks is complete."""

    n: int
    k: int
    h_labels: tuple[str, ...]
    h_scopes: tuple[frozenset[int], ...]  # flats served by each H node
    out_arcs: tuple[tuple[int, ...], ...]  # H indices reachable per source

    def arc_count(self) -> int:
        return sum(len(a) for a in self.out_arcs) + len(self.h_labels) * self.k

    def to_dot(self) -> str:
        lines = [
            "digraph gammoid {",
            "  rankdir=TB;",
            '  { rank=source; ' + " ".join(f"e{e};" for e in range(self.n)) + " }",
            '  { rank=same; ' + " ".join(f"h{i};" for i in range(len(self.h_labels))) + " }",
            '  { rank=sink; ' + " ".join(f"t{j};" for j in range(self.k)) + " }",
        ]
        for e in range(self.n):
            lines.append(f'  e{e} [label="{e}"];')
        for i, label in enumerate(self.h_labels):
            lines.append(f'  h{i} [label="{label}" shape=box];')
        for j in range(self.k):
            lines.append(f'  t{j} [label="t{j}" shape=doublecircle];')
        for e, targets in enumerate(self.out_arcs):
            for i in targets:
                lines.append(f"  e{e} -> h{i};")
        for i in range(len(self.h_labels)):
            for j in range(self.k):
                lines.append(f"  h{i} -> t{j};")
        lines.append("}")
        return "\n".join(lines)


def build_graph(sys: SetSystem) -> GammoidGraph:
    """Layered digraph for a set system (flats, local ranks, global rank)."""
    flat_masks = [f for f, _ in sys.flats]
    scopes_of_element = []
    for e in range(sys.n):
        scopes_of_element.append(frozenset(
            i for i, f in enumerate(flat_masks) if f >> e & 1))

    labels: list[str] = []
    scopes: list[frozenset[int]] = []
    for e in range(sys.n):
        if len(scopes_of_element[e]) >= 2:
            labels.append(f"u{e}")
            scopes.append(scopes_of_element[e])
    for i, (f, rho) in enumerate(sys.flats):
        covered = sum(1 for s in scopes if i in s)
        l_i = rho - covered
        if l_i < 0:
            raise ConstructionError(
                f"flat {i} ({format_set(f)}) has {covered} shared elements,"
                f" above its local rank {rho}")
        for j in range(l_i):
            labels.append(f"v{i}_{j}")
            scopes.append(frozenset({i}))

    out_arcs = []
    for e in range(sys.n):
        se = scopes_of_element[e]
        out_arcs.append(tuple(i for i, hs in enumerate(scopes) if se <= hs))
    return GammoidGraph(sys.n, sys.k, tuple(labels), tuple(scopes), tuple(out_arcs))


def max_matching(g: GammoidGraph, x_mask: int) -> int:
    """Size of a maximum matching between the sources in X and H,
    by augmenting paths in ascending source and H order."""
    owner = [-1] * len(g.h_labels)  # H index -> matched source

    def augment(e: int, seen: list[bool]) -> bool:
        for i in g.out_arcs[e]:
            if not seen[i]:
                seen[i] = True
                if owner[i] < 0 or augment(owner[i], seen):
                    owner[i] = e
                    return True
        return False

    size = 0
    for e in iter_elements(x_mask):
        if augment(e, [False] * len(g.h_labels)):
            size += 1
    return size


def independence(g: GammoidGraph, x_mask: int) -> bool:
    """True iff X routes disjointly to the sinks: |X| <= k and X matches
    fully into H."""
    size = x_mask.bit_count()
    if size > g.k:
        return False
    return max_matching(g, x_mask) == size


def hall_violation(g: GammoidGraph, x_mask: int) -> int | None:
    """For a deficient X (matching smaller than |X|), a witness A <= X with
    fewer H neighbours than members; None when X matches fully."""
    owner = [-1] * len(g.h_labels)
    matched_to: dict[int, int] = {}

    def augment(e: int, seen: list[bool]) -> bool:
        for i in g.out_arcs[e]:
            if not seen[i]:
                seen[i] = True
                if owner[i] < 0 or augment(owner[i], seen):
                    owner[i] = e
                    matched_to[e] = i
                    return True
        return False

    unmatched = []
    for e in iter_elements(x_mask):
        if not augment(e, [False] * len(g.h_labels)):
            unmatched.append(e)
    if not unmatched:
        return None
    # alternating BFS from the unmatched sources
    reach_src = set(unmatched)
    reach_h: set[int] = set()
    frontier = list(unmatched)
    while frontier:
        nxt = []
        for e in frontier:
            for i in g.out_arcs[e]:
                if i not in reach_h:
                    reach_h.add(i)
                    o = owner[i]
                    if o >= 0 and o not in reach_src:
                        reach_src.add(o)
                        nxt.append(o)
        frontier = nxt
    a_mask = 0
    for e in reach_src:
        a_mask |= 1 << e
    neighbours = set()
    for e in reach_src:
        neighbours.update(g.out_arcs[e])
    assert len(neighbours) < len(reach_src)
    return a_mask


class GammoidMatroid(Matroid):
    """Rank = size of a maximum X-to-H matching, capped at k by the sinks."""

    def __init__(self, graph: GammoidGraph):
        super().__init__(graph.n)
        self.graph = graph

    def _rank(self, mask: int) -> int:
        return min(max_matching(self.graph, mask), self.graph.k)

    def __repr__(self):
        return f"GammoidMatroid(n={self.n}, k={self.graph.k}, |H|={len(self.graph.h_labels)})"


def gammoid_matroid(g: GammoidGraph) -> GammoidMatroid:
    return GammoidMatroid(g)


def equivalence_check(sys: SetSystem) -> bool:
    """Exhaustively compare the gammoid with the directly built matroid."""
    if sys.n > EQUIV_CAP:
        raise CapacityError(f"equivalence check capped at n <= {EQUIV_CAP}")
    direct = general_construction(sys)
    via_graph = gammoid_matroid(build_graph(sys))
    return rank_functions_agree(direct, via_graph)
