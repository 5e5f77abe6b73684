"""Exception hierarchy shared across the package."""


class EvanWaveError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(EvanWaveError, ValueError):
    """A physical or numerical parameter is outside its valid domain."""


class DomainError(EvanWaveError, ValueError):
    """An operation was evaluated outside its domain of validity."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a singular point."""


class BranchCutError(DomainError):
    """Evaluation requested on a branch cut."""


class FaddeevaOverflowError(EvanWaveError, OverflowError):
    """exp(-z^2) exceeds the floating range; refusing to return infinity."""


class QuadratureFailure(EvanWaveError, RuntimeError):
    """Adaptive quadrature did not converge within its depth limit.

    Carries the best partial result so callers can inspect how far it got.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class PathDegenerateError(EvanWaveError, RuntimeError):
    """Steepest-descent path stepping degenerated (near-stationary slope)."""


class NoTransitionError(EvanWaveError, RuntimeError):
    """R(t) = 1 has no root above tau; the pole dominates from the start."""


class UndefinedPhaseError(EvanWaveError, RuntimeError):
    """|psi| too small to extract a meaningful phase at a stencil point."""


class PropagatingRegimeError(InvalidParameterError):
    """Parameters describe a propagating, not evanescent, configuration."""


class ComputationError(EvanWaveError, RuntimeError):
    """A numerical evaluation failed after exhausting its fallbacks."""


class ConfigError(EvanWaveError, ValueError):
    """Scenario configuration is invalid."""
