"""Exception hierarchy shared by all blobkit modules."""


class BlobkitError(Exception):
    """Base class for every error raised by blobkit."""


class DimensionError(BlobkitError, ValueError):
    """Matrix or vector has the wrong shape (odd size, mismatched n, ...)."""


class NotSymmetricError(BlobkitError, ValueError):
    pass


class NotSPDError(BlobkitError, ValueError):
    """Matrix is not symmetric positive definite."""


class NumericalFailure(BlobkitError, ArithmeticError):
    """A post-condition check failed beyond tolerance, or the input is too ill-conditioned."""


class DomainError(BlobkitError, ValueError):
    """Input lies outside the domain of the operation (e.g. non-symplectic G)."""


class HypothesisError(BlobkitError, ValueError):
    """The hypotheses of the purification construction do not hold."""


class InvalidStateError(HypothesisError):
    """Covariance matrix violates the quantum condition."""


class NotSaturatedError(HypothesisError):
    pass


class CapacityError(HypothesisError):
    """Symplectic capacity of the covariance ellipsoid differs from pi*hbar."""


class InconsistencyError(HypothesisError):
    pass


class PropositionViolation(BlobkitError, AssertionError):
    """A conjugate-plane section area disagrees with pi R^2 (implementation bug)."""


class NotSymplecticPlaneError(DomainError):
    pass
