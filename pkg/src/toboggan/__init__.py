"""Large-angular-momentum spectra of imaginary cubic oscillators on winding
complex contours, validated against a finite-difference complex eigensolver
and an exactly solvable oscillator benchmark.
"""

from .contours import WindingContour, sample_path, straight_path, winding_path
from .eigensolver import (
    DegenerateEigenvaluesError,
    Discretization,
    EigenResult,
    ShiftCollisionError,
    TridiagonalSystem,
    auto_discretization,
    build_tridiagonal,
    inverse_iteration,
    low_lying,
    resolved_discretization,
)
from .expansion import (
    RescaledForm,
    StationaryFamily,
    TaylorExpansion,
    cubic_correction_exponent,
    harmonic_frequency,
    mu_coefficient,
    power_terms,
    power_terms_ho,
    rescale,
    stationary_points,
    stationary_points_ho,
    tau_cubic,
    tau_general,
    tau_ho,
    taylor_at,
    taylor_ho,
    taylor_rectified,
    weight_correction_exponent,
)
from .potentials import (
    BranchCutError,
    HOSpec,
    ModelSpec,
    SingularPointError,
    reality_condition,
    v_eff,
    v_eff_cubic,
    v_eff_ho,
)
from .rectify import (
    RectifiedProblem,
    angular_map,
    build_rectified,
    rectified_potential,
    weight,
)
from .spectra import (
    SpectrumEntry,
    SpectrumTable,
    density_parameter,
    energy_cubic,
    energy_error_scale,
    energy_ho_approx,
    energy_ho_exact,
    energy_toboggan,
    gap,
    gap_constant,
    rescaled_level,
    rescaled_level_limit,
)

__version__ = "0.1.0"
