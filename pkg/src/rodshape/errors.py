"""Exception types shared across the package."""


class RodshapeError(Exception):
    """Base class for all rodshape errors."""


class NonPositiveProfile(RodshapeError):
    """Cross-section area is not strictly positive on the validation grid."""


class IntegrationFailure(RodshapeError):
    """The initial-value integrator could not meet its tolerance."""


class SvdFailure(RodshapeError):
    """Singular value decomposition did not converge."""


class PhysicalityViolation(RodshapeError):
    """A reconstruction produced a non-physical (non-positive) cross section."""


class NoRegularData(RodshapeError):
    """Every measurement is resonant; the data set determines nothing."""


class UnderdeterminedS(RodshapeError):
    """More odd-series unknowns than non-resonant equations."""


class MissingRoots(RodshapeError):
    """The root scan found fewer eigenvalues than requested."""


class PipelineError(RodshapeError):
    """A pipeline step failed; carries the step name and diagnostics so far."""

    def __init__(self, step, message, payload=None):
        super().__init__(f"{step}: {message}")
        self.step = step
        self.payload = payload or {}
