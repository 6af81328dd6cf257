"""Canonical worked instances used by the test suite and the CLI docs.

The storage12 family is a (12,6,3,3,3) code on twelve storage nodes:
three local groups of five nodes, each group a rank-3 MDS block, glued
pairwise on one shared node.  The generator matrix lives over GF(7), the
smallest prime field carrying this matroid (an exhaustive search over
canonical forms rules out GF(5), and the rank-3 blocks need five points
in general position in a projective plane, ruling out GF(2) and GF(3)).
graph27 and graph122 are the weighted block-intersection graphs of a
(27,14,11,4,2) and a (122,19,96,9,5) construction.
"""

from __future__ import annotations

from random import Random

from .construct import (SetSystem, WeightedGraph, general_construction,
                        gen_paths_case_iii, graph_to_set_system,
                        random_set_system)
from .gfrep import FieldMatrix, matroid_from_matrix
from .matroid import Matroid, UniformMatroid
from .zlattice import CyclicFlatLattice

STORAGE12_P = 7

STORAGE12_ROWS = (
    (1, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1),
    (0, 1, 0, 0, 0, 0, 1, 0, 0, 3, 0, 0),
    (0, 0, 1, 0, 0, 0, 1, 1, 0, 2, 1, 0),
    (0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 3, 0),
    (0, 0, 0, 0, 1, 0, 0, 1, 1, 0, 2, 2),
    (0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 3),
)

STORAGE12_GROUPS = (
    (0, 1, 2, 6, 9),
    (2, 3, 4, 7, 10),
    (0, 4, 5, 8, 11),
)


def storage12_matrix() -> FieldMatrix:
    return FieldMatrix.make(STORAGE12_P, STORAGE12_ROWS)


def storage12_matroid() -> Matroid:
    return matroid_from_matrix(storage12_matrix())


def storage12_system() -> SetSystem:
    return SetSystem.from_sets(12, [(g, 3) for g in STORAGE12_GROUPS], 6)


def storage12_lattice() -> CyclicFlatLattice:
    g1, g2, g3 = STORAGE12_GROUPS
    pairs = [((), 0), (g1, 3), (g2, 3), (g3, 3),
             (sorted(set(g1) | set(g2)), 5),
             (sorted(set(g1) | set(g3)), 5),
             (sorted(set(g2) | set(g3)), 5),
             (range(12), 6)]
    return CyclicFlatLattice.from_sets(12, pairs)


GRAPH27_PARAMS = (14, 4, 2)  # (k, r, delta)


def graph27() -> WeightedGraph:
    """Two unit-weight paths (3 + 2 vertices) plus an isolated block."""
    return WeightedGraph(6, ((0, 1, 1), (1, 2, 1), (3, 4, 1)))


GRAPH122_PARAMS = (19, 9, 5)


def graph122() -> WeightedGraph:
    """A four-cycle of weight-4 edges, a 4,1-weighted path, four isolated
    blocks; total weight 21 on eleven vertices."""
    edges = ((0, 1, 4), (0, 3, 4), (1, 2, 4), (2, 3, 4), (4, 5, 4), (5, 6, 1))
    return WeightedGraph(11, edges)


def blocks_12_7() -> SetSystem:
    """Three disjoint 4-element blocks of ranks 3, 3, 2 with k = 7;
    measured parameters (12,7,3) with (r, delta) = (3, 2)."""
    return SetSystem.from_sets(
        12, [(range(0, 4), 3), (range(4, 8), 3), (range(8, 12), 2)], 7)


def equivalence_suite() -> list[tuple[str, SetSystem]]:
    """At least twenty set systems with n <= 12 for the layered-digraph
    equivalence sweep; deterministic."""
    suite: list[tuple[str, SetSystem]] = [
        ("storage12", storage12_system()),
        ("blocks_12_7", blocks_12_7()),
        ("uniform_8_3", SetSystem.from_sets(8, [(range(8), 3)], 3)),
        ("uniform_5_2", SetSystem.from_sets(5, [(range(5), 2)], 2)),
        ("two_blocks_8_5", SetSystem.from_sets(
            8, [(range(0, 4), 3), (range(4, 8), 3)], 5)),
        ("three_blocks_9_5", SetSystem.from_sets(
            9, [(range(0, 3), 2), (range(3, 6), 2), (range(6, 9), 2)], 5)),
        ("paths_10_5", graph_to_set_system(
            WeightedGraph(4, ((0, 1, 1), (2, 3, 1))), 5, 2, 2)),
        ("chain_overlap", SetSystem.from_sets(
            9, [((0, 1, 2, 3), 3), ((3, 4, 5, 6), 3), ((6, 7, 8), 2)], 6)),
    ]
    rng = Random(20240 + 1)
    while len(suite) < 20:
        sys = random_set_system(rng, n_max=10)
        suite.append((f"random_{len(suite)}", sys))
    return suite


def fixture_matroids() -> list[tuple[str, Matroid, tuple[int, int] | None]]:
    """Named matroids with n <= 12 for representation and invariant sweeps.
    The third entry is an (r, delta) pair meeting the distance bound, for
    fixtures that are perfect, else None."""
    out: list[tuple[str, Matroid, tuple[int, int] | None]] = [
        ("storage12", storage12_matroid(), None),
        ("blocks_12_7", general_construction(blocks_12_7()), None),
        ("uniform_4_2", UniformMatroid(4, 2), (2, 3)),
        ("uniform_6_3", UniformMatroid(6, 3), (3, 4)),
        ("free_5", UniformMatroid(5, 5), None),
        ("rank1_5", UniformMatroid(5, 1), (1, 5)),
        ("paths_10_5", gen_paths_case_iii(10, 5, 2, 2), (2, 2)),
        ("two_blocks_8_5", general_construction(SetSystem.from_sets(
            8, [(range(0, 4), 3), (range(4, 8), 3)], 5)), None),
    ]
    rng = Random(77)
    while len(out) < 12:
        sys = random_set_system(rng, n_max=9)
        out.append((f"random_{len(out)}", general_construction(sys), None))
    return out
