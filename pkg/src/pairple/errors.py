"""Exception types raised by pairple."""


class PairpleError(Exception):
    """Base class for all package errors."""


class GeometryError(PairpleError, ValueError):
    """Inadmissible excitation/detection arrangement."""


class DomainError(PairpleError, ValueError):
    """Argument outside the domain of a coupling formula."""


class SolverError(PairpleError, RuntimeError):
    """Steady-state or time-evolution failure.

    ``detuning`` is filled in by the scan routines so that a failure in the
    middle of a sweep can be traced to the grid point that caused it.
    """

    def __init__(self, message, detuning=None):
        if detuning is not None:
            message = f"{message} (detuning={detuning:.12g})"
        super().__init__(message)
        self.detuning = detuning


class DegenerateSteadyState(SolverError):
    """The Liouvillian has more than one stationary state."""


class SingularSolve(SolverError):
    """The trace-constrained linear system could not be solved accurately."""


class NotConverged(SolverError):
    """Time integration did not settle within the requested horizon."""


class ConfigError(PairpleError, ValueError):
    """Invalid configuration document; ``key`` names the offending entry."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
