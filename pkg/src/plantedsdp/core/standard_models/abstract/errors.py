"""An ABSTRACT DATA MODEL to be inherited by custom errors."""


class PlantedSdpError(Exception):
    """Base Error for plantedsdp logic."""

    def __init__(self, original: str | Exception | None = None):
        self.original = original
        super().__init__(str(original))


class InvalidParamsError(PlantedSdpError):
    """Model parameters violate their invariants."""


class NonMonotoneEditError(PlantedSdpError):
    """An adversary edit would move the graph away from the planted truth."""

    def __init__(self, i: int, j: int, reason: str = ""):
        self.i = i
        self.j = j
        msg = f"non-monotone edit on pair ({i}, {j})"
        if reason:
            msg = f"{msg}: {reason}"
        super().__init__(msg)


class NegativeIntensityError(PlantedSdpError):
    """An intensity a or b was negative."""


class NoBoundaryError(PlantedSdpError):
    """The requested phase-boundary branch does not exist."""


class DomainError(PlantedSdpError):
    """An argument is outside the domain where the formula holds."""


class NonFiniteError(PlantedSdpError):
    """A matrix contains NaN or infinite entries."""


class NullVectorNotInKernelError(PlantedSdpError):
    """The supplied null vector is not annihilated by the matrix."""


class SolverDivergedError(PlantedSdpError):
    """ADMM residuals blew up; `solution` holds the last iterate."""

    def __init__(self, original: str | Exception | None = None, solution=None):
        self.solution = solution
        super().__init__(original)


class InvalidProblemError(PlantedSdpError):
    """An SDP problem is malformed."""


class NotConvergedError(PlantedSdpError):
    """A solution that did not converge was passed to rounding."""


class DimensionMismatchError(PlantedSdpError):
    """Two objects that must share a vertex set differ in size."""


class UnbalancedTruthError(PlantedSdpError):
    """A ±1 assignment does not sum to zero."""


class InvalidTruthError(PlantedSdpError):
    """An indicator assignment does not match the cluster size."""


class MissingIntensitiesError(PlantedSdpError):
    """The intensities a, b are required but were not supplied."""


class TooLargeError(PlantedSdpError):
    """Exhaustive enumeration would exceed the configured limit."""


class OddNError(PlantedSdpError):
    """Bisection requires an even number of vertices."""
