"""Exception hierarchy shared by every module."""


class CoulombTrajError(Exception):
    """Base class for all package errors."""


class DomainError(CoulombTrajError, ValueError):
    """Argument outside the region where the quantity is defined."""


class PoleError(DomainError):
    """Argument sits on a pole (Gamma of a non-positive integer, integer b, ...)."""


class NonConvergence(CoulombTrajError, ArithmeticError):
    """A series or iteration did not reach its tolerance.

    ``terms`` and ``last_term`` carry the diagnostic state when known.
    """

    def __init__(self, message: str, terms: int | None = None, last_term: float | None = None):
        super().__init__(message)
        self.terms = terms
        self.last_term = last_term


class NoSignChange(CoulombTrajError, ValueError):
    """Bracket endpoints have the same sign."""


class MaxIterations(NonConvergence):
    """Root solver exhausted its iteration budget."""


class SingularityApproach(CoulombTrajError, ArithmeticError):
    """ODE trajectory came closer to the centre than the allowed floor."""
