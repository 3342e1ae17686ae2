"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the CLI lives in ``cli.py``; library code raises
these types and never calls ``sys.exit``.
"""


class Slosh2Error(Exception):
    """Base class for all toolkit errors."""


class ConfigError(Slosh2Error):
    """A config document failed to parse or has an invalid structure."""


class ValidationError(Slosh2Error):
    """Inputs violate a documented precondition or type invariant."""


class DomainError(ValidationError):
    """An evaluation point lies outside the container domain."""


class UnsupportedVariantError(ValidationError):
    """The requested operation is not available for this cross-section variant."""


class NumericalFaultError(Slosh2Error):
    """An internal numerical invariant failed (e.g. nonpositive discriminant)."""


class NotAnEigenvalueError(ValidationError):
    """The supplied ν is not a dispersion root for the given configuration."""


class ZeroDenominatorError(ValidationError):
    """Rayleigh-quotient denominator vanished (zero trial mode)."""


class SolverError(Slosh2Error):
    """Base class for inverse-solver failures."""


class InfiniteDepthError(SolverError):
    """Inverse recovery requested for an infinitely deep container.

    Unsolvable: the two-layer spectrum coincides with the homogeneous one
    for every stratification.
    """


class AdmissibilityError(SolverError):
    """Plus-system admissibility window violated by the measured pair."""


class InconsistentRhoError(SolverError):
    """The recovered stratification is not consistent with the measured pair.

    Raised when the two independent density-ratio recoveries disagree or the
    recovered parameters fail to reproduce the measurements on the solved
    branch; both signal eigenvalues that were not generated by that branch
    system.  ``disagreement`` carries the measured relative inconsistency.
    """

    def __init__(self, message, rho_values=None, disagreement=None):
        super().__init__(message)
        self.rho_values = tuple(rho_values) if rho_values is not None else ()
        self.disagreement = disagreement


class NoRootError(SolverError):
    """The interface-depth equation has no sign change on (0, d)."""


class AmbiguousRootsError(SolverError):
    """More than one candidate interface depth; no silent selection is made.

    ``candidates`` holds (h, rho, rho_consistency) triples for every bracket
    found, in increasing h order.
    """

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = tuple(candidates)


class TruncationWarning(UserWarning):
    """Spectrum enumeration could not reach its completeness bound."""
