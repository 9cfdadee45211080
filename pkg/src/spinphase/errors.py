"""Exception types shared across the package."""


class SpinPhaseError(Exception):
    """Base class for all spinphase errors."""


class NotPositive(SpinPhaseError):
    """A constructed density matrix has an eigenvalue below the PSD tolerance."""


class Exhausted(SpinPhaseError):
    """Rejection sampling hit its retry cap (coherence bounds too large)."""


class SingularReference(SpinPhaseError):
    """Reference state for a relative entropy is (numerically) rank deficient."""


class NonFinite(SpinPhaseError):
    """Too many Monte-Carlo samples were non-finite after the Q-floor guard."""


class StepTooLarge(SpinPhaseError):
    """RK4 trace drift exceeded tolerance; reduce the step size."""
