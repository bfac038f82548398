"""Inverse spectral problems for three-term recurrences and discrete transmission problems."""

from .errors import (
    AmbiguousClustering,
    CommonRoot,
    ConfigMismatch,
    DegenerateLeading,
    DegreeMismatch,
    DegreeZero,
    HankelConditionViolated,
    InsufficientCoefficients,
    InvalidInstance,
    LeadingMismatch,
    SingularMatrix,
    SingularSystem,
    SpectraNotDisjoint,
    SpectralError,
    ZeroLeading,
)
from .forward import (
    BoundaryPolys,
    SolutionFamily,
    StandardCoeffs,
    TransmissionInstance,
    TwoSpectra,
    WeylData,
    build_boundary_polys,
    char_poly_polybc,
    char_poly_transmission,
    lift_standard,
    reduce_transmission,
    solution_family,
    transmission_spectrum,
    two_spectra_forward,
    weyl_forward,
)
from .linalg import determinant, hankel, solve_linear
from .polynomial import (
    Poly,
    RootMultiset,
    Spectrum,
    cluster_roots,
    hermite_interpolate,
    laurent_expand,
    poly_coprime,
    poly_eval,
    poly_from_roots,
    poly_roots,
    scaled_derivative,
)
from .reduction import (
    SymmetricJacobi,
    recover_v_hermite,
    recover_v_linear,
    solve_hochstadt_mixed,
    solve_poly_bc,
    solve_transmission,
    standard_to_symmetric,
    symmetric_to_standard,
)
from .weyl import CTable, hankel_condition, solve_two_spectra, solve_weyl

__version__ = "0.1.0"
