"""q-exponential delta representation: numerics and verification oracles."""

from .errors import (
    BranchCutError,
    DomainError,
    NonFiniteIntegrand,
    ProjectionFailure,
    QDeltaError,
    QuadratureFailure,
    SingularOrigin,
    TailDivergence,
)
from .kernels import BACKEND
from .quadrature import (
    AnalyticTail,
    ExponentialMap,
    IntegrationResult,
    QuadratureConfig,
    Truncate,
    integrate_finite,
    integrate_horizontal_line,
    integrate_semi_infinite,
    integrate_whole_line,
)
from .qcalc import (
    Density,
    entropy_maximality_check,
    gaussian_density,
    q_exp,
    q_exp_complex,
    q_gaussian_norm,
    q_gaussian_pdf,
    q_gaussian_variance,
    shannon_entropy,
    tsallis_entropy,
    uniform_density,
)
from .testfns import STANDARD_FAMILY, TestFunction, gaussian_family, parse_testfn, strip_norm
from .ultra import (
    ContourSpec,
    PairingResult,
    UltraRep,
    Fq_closed_form,
    cauchy_rep,
    cauchy_transform,
    contour_pair,
    dirac_rep,
    eval_Eq,
    fq_rep,
    integrate_Eq_over_x,
    pseudo_poly_invariance_check,
)
from .deltarep import (
    DEFAULT_SCHEDULE,
    RegularizedFamily,
    SweepTable,
    convergence_sweep,
    delta_pair,
    regularized_integral,
    total_mass,
    truncated_integral,
)
from .superstat import (
    MixingDensity,
    gamma_matches_qexp,
    gamma_mixing,
    generalized_factor,
    mc_generalized_factor,
    qexp_mapping,
)

__version__ = "0.1.0"
