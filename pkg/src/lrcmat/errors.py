"""Exception hierarchy shared by all lrcmat modules."""


class LrcmatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LrcmatError, ValueError):
    """An argument is outside the mathematical domain of the operation
    (subset not contained in the ground set, parameters out of range,
    element not a lattice member, ...)."""


class CapacityError(LrcmatError, ValueError):
    """An exhaustive operation was requested beyond its documented size cap."""


class FormatError(LrcmatError, ValueError):
    """Malformed input data (duplicate lattice members, bad JSON shape, ...)."""


class ConstructionError(LrcmatError, ValueError):
    """A construction precondition failed; the message names the condition."""


class UndefinedParameterError(LrcmatError, ValueError):
    """A code parameter is undefined for this matroid (e.g. minimum distance
    when the rank is zero or the ground set is not a cyclic flat)."""
