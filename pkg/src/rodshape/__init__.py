"""Recovery of the cross-section area of a longitudinally vibrating rod.

A forward solver synthesizes the amplitude-frequency response of a rod with
known cross section; the inverse pipeline recovers the cross-section area
from such measurements through truncated spherical-Bessel expansions of the
reduced equation's solutions, fitted by rank-truncated least squares.
"""

from .bessel import BesselBatch, spherical_j, spherical_j_batch, spherical_j_table
from .errors import (
    IntegrationFailure,
    MissingRoots,
    NonPositiveProfile,
    NoRegularData,
    PhysicalityViolation,
    PipelineError,
    RodshapeError,
    SvdFailure,
    UnderdeterminedS,
)
from .forward import (
    IvpSolution,
    ResponseSample,
    add_noise,
    integrate_phi_S,
    integrate_solution,
    integrate_T,
    response,
    synthesize_dataset,
)
from .inverse import (
    EigenData,
    InversionOptions,
    RecoveredProfile,
    SpectralSample,
    classify,
    compute_beta,
    endpoint_system,
    find_eigenvalues,
    interior_solve,
    qn_of,
    run_inverse,
    select_N,
)
from .leastsq import LstsqResult, rank_abs_tol, svd_lstsq
from .profiles import (
    PROFILE_KINDS,
    ProblemB,
    Profile,
    RodParams,
    make_profile,
    omega_to_rho,
    to_problem_b,
)
from .series import (
    EndpointCoeffs,
    InteriorCoeffs,
    eval_phi,
    eval_S,
    eval_T,
    recover_F,
    recover_q_h,
)

__version__ = "0.1.0"
