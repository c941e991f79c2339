"""Exception hierarchy shared by all modules."""


class RosenMorseError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RosenMorseError, ValueError):
    """Argument outside the domain of a formula."""


class UnboundStateError(RosenMorseError, IndexError):
    """Requested state index is not a bound state of the potential."""


class ThresholdError(DomainError):
    """State too close to the binding threshold to be normalized."""


class DegenerateParameterError(DomainError):
    """A recurrence denominator vanishes for the given Jacobi parameters."""


class SymmetricOnlyError(DomainError):
    """Operation only defined for the symmetric (beta = 0) potential."""


class MissingScaleError(RosenMorseError, ValueError):
    """Physical scale (delta, mass, hbar) needed but not provided."""


class ParameterMismatchError(RosenMorseError, ValueError):
    """States belong to different potentials."""


class ToleranceNotMetError(RosenMorseError, RuntimeError):
    """Adaptive quadrature could not reach the requested accuracy."""
