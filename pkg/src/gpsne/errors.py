"""Exception types raised by the library."""


class GpsneError(Exception):
    """Base class for all library errors."""


class DomainError(GpsneError, ValueError):
    """An argument lies outside the domain of a formula (e.g. a non-positive mass)."""


class DegenerateInputError(GpsneError, ValueError):
    """Input carries no information, e.g. an identically zero wavefunction."""


class PreconditionError(GpsneError, ValueError):
    """An operation was called on data that violates its documented precondition."""


class BracketError(GpsneError, RuntimeError):
    """A search bracket does not contain an interior minimum or eigenvalue."""


class GridTooCoarseError(GpsneError, RuntimeError):
    """The discretization cannot resolve the requested state."""


class NotConvergedError(GpsneError, RuntimeError):
    """An unconverged result was passed where a converged one is required."""
