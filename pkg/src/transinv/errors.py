"""Exception hierarchy.

Every error raised by the library derives from :class:`SpectralError`.  The
CLI maps :class:`HankelConditionViolated` to exit code 3 (the data is not the
spectral data of any recurrence) and everything else to exit code 2.
"""


class SpectralError(Exception):
    pass


class InvalidInstance(SpectralError, ValueError):
    """A domain-type invariant is violated (zero coefficient, wrong length...)."""


class ZeroLeading(SpectralError, ValueError):
    pass


class DegreeZero(SpectralError, ValueError):
    pass


class DegreeMismatch(SpectralError, ValueError):
    pass


class AmbiguousClustering(SpectralError):
    pass


class SingularMatrix(SpectralError):
    pass


class InsufficientCoefficients(SpectralError, ValueError):
    pass


class HankelConditionViolated(SpectralError):
    """Some Hankel determinant of the Weyl coefficients vanishes.

    ``deltas`` carries the determinants that were computed before failing.
    """

    def __init__(self, message, deltas=()):
        super().__init__(message)
        self.deltas = tuple(deltas)


class SpectraNotDisjoint(SpectralError, ValueError):
    pass


class ConfigMismatch(SpectralError, ValueError):
    pass


class DegenerateLeading(SpectralError, ValueError):
    pass


class LeadingMismatch(SpectralError, ValueError):
    pass


class SingularSystem(SpectralError):
    pass


class CommonRoot(SpectralError):
    pass
