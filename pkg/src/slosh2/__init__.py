"""Two-layer sloshing spectra in vertical-walled containers.

Forward path: membrane spectra of the cross-section, the homogeneous
eigenvalue ν^W = k tanh kd, and the two-layer pair ν^(−) <= ν^(+) per
wavenumber; merged spectra with Weyl-law counting; eigenmode construction
with quadrature checks of the variational identities.  Inverse path:
recovery of the density ratio and interface depth from the two smallest
measured eigenvalues and a free-surface elevation profile.
"""

from .dispersion import (
    ContainerGeometry,
    InfiniteDepthResult,
    SloshingPair,
    Stratification,
    asymptotic_pair,
    discriminant_minimum_check,
    homogeneous_eigenvalue,
    infinite_depth_pair,
    quadratic_residual,
    two_layer_pair,
)
from .enumeration import (
    SloshingSpectrum,
    SpectrumEntry,
    distribution_function,
    enumerate_spectrum,
    homogeneous_weyl_ratio,
    weyl_prefactor,
    weyl_ratio,
)
from .errors import (
    AdmissibilityError,
    AmbiguousRootsError,
    ConfigError,
    DomainError,
    InconsistentRhoError,
    InfiniteDepthError,
    NoRootError,
    NotAnEigenvalueError,
    NumericalFaultError,
    Slosh2Error,
    SolverError,
    TruncationWarning,
    UnsupportedVariantError,
    ValidationError,
    ZeroDenominatorError,
)
from .inverse import (
    ElevationClass,
    Measurement,
    NecessaryConditions,
    RecoveryDiagnostics,
    RecoveryResult,
    U_derivatives,
    U_value,
    branch_cross_check,
    classify_elevation,
    necessary_conditions,
    recover,
    solve_minus_system,
    solve_plus_system,
    synthesize_measurement,
)
from .membrane import (
    CrossSection,
    Disc,
    MembraneEigenvalue,
    Rectangle,
    Tabulated,
    bessel_derivative_zeros,
    evaluate_mode,
    evaluate_mode_gradient,
    fd_neumann_oracle,
    membrane_spectrum,
)
from .modes import (
    HomogeneousMode,
    ModeCoefficients,
    PotentialPair,
    build_potential_pair,
    coefficients,
    evaluate_potential,
    homogeneous_trial_pair,
    orthogonality_check,
    rayleigh_homogeneous,
    rayleigh_two_layer,
)

__version__ = "0.1.0"
