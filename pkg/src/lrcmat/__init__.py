"""lrcmat: exact combinatorics of locally repairable codes.

Matroids as rank oracles, the lattice of cyclic flats with its axioms,
code parameters (n, k, d, r, delta) and the generalized distance bound,
set-system and weighted-graph constructions with the largest-d decision
procedure, layered gammoid realizations, and randomized searches for
generator matrices over prime fields.
"""

from .errors import (CapacityError, ConstructionError, DomainError,
                     FormatError, LrcmatError, UndefinedParameterError)
from .matroid import (LatticeMatroid, Matroid, RestrictionMatroid,
                      UniformMatroid, circuits, cyclic_flats,
                      rank_functions_agree, validate_rank_axioms)
from .zlattice import CyclicFlatLattice, matroid_from_lattice, validate

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "ConstructionError", "CyclicFlatLattice", "DomainError",
    "FormatError", "LatticeMatroid", "LrcmatError", "Matroid",
    "RestrictionMatroid", "UndefinedParameterError", "UniformMatroid",
    "circuits", "cyclic_flats", "matroid_from_lattice",
    "rank_functions_agree", "validate", "validate_rank_axioms", "__version__",
]
