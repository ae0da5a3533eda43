"""High-precision q-special functions, windowed operator realizations
of quantum-group generators, and certified verification suites built
around a q-deformed product formula of Hankel type."""

from . import erdelyi as _erdelyi
from . import kernels as _kernels
from . import qfunctions as _qfunctions
from .context import (
    BranchCut,
    ConfigError,
    DivergentParameters,
    DivergentSeries,
    HPComplex,
    NearPoleDenominator,
    QContext,
    QHankelError,
    SeriesValue,
    TruncationInsufficient,
    WindowTooSmall,
)
from .erdelyi import (
    ErdelyiParams,
    classical_limit_table,
    erdelyi_lhs,
    erdelyi_qintegral,
    erdelyi_rhs,
    inverse_hankel_check,
    lattice_consistency_residual,
    power_series_residuals,
    scalar_identity_residual,
)
from .kernels import (
    kernel_contraction_residual,
    kernel_orthogonality_residual,
    kernel_plus,
    kernel_zero,
)
from .operators import (
    LegSpec,
    SparseOperator,
    build_e2_generators,
    build_g,
    build_podles_generators,
    build_su2_generators,
    build_w_plus,
    build_w_zero,
    comultiply,
    eta_vector,
    gram_max_residual,
    identity_operator,
    interior_indices,
    verify_coaction,
    verify_corepresentation,
    xi_plus_vector,
    xi_zero_vector,
)
from .qfunctions import (
    QBesselParams,
    WallParams,
    bessel_j,
    laguerre,
    qbessel,
    qbessel_lattice,
    qhankel_transform,
    wall_orthogonality_sum,
    wall_polynomial,
    wall_via_2phi1,
    wall_via_3phi2,
)
from .qseries import (
    PhiParams,
    basic_hypergeometric,
    big_q_exponential,
    jackson_q_integral,
    q_gamma,
    qpochhammer,
    qpochhammer_multi,
)
from .suites import SUITE_NAMES, SuiteConfig, run_suite, write_report

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every process-wide memo (polynomial values, kernel entries,
    lattice Bessel values)."""
    _qfunctions.clear_caches()
    _kernels.clear_caches()
    _erdelyi.clear_caches()
