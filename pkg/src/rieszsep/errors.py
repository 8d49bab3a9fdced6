"""Exception hierarchy shared by all modules."""


class RieszError(ValueError):
    """Base class for numeric domain problems raised by this package."""


class DomainError(RieszError):
    """An argument lies outside the range where a formula is defined."""


class DivergenceError(RieszError):
    """A series or integral does not converge for the given parameters."""


class CoincidentPointsError(RieszError):
    """Two points (or a point and an evaluation site) coincide."""


class ConfigurationError(RieszError):
    """A point set violates the unit-norm or distinctness invariants."""


class InsufficientDataError(RieszError):
    """Too few records to fit constants."""
