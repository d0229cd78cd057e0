"""Resonance toolkit for the circular dielectric microcavity.

Computes the real spectrum of the closed (Dirichlet) disk billiard, the
complex TE quasi-normal modes of the open dielectric disk, and derived
quantities: Lamb shift, decay width, quality factor, effective-potential
barrier classification, boundary Husimi maps and 2-D field grids.
"""

from .analysis import (
    ABOVE_BARRIER,
    BELOW_BARRIER,
    BarrierData,
    LambShiftRecord,
    barrier_bounds,
    classify_resonance,
    decay_width_and_q,
    effective_potential,
    lamb_shift,
    well_bottom,
)
from .billiard import (
    BilliardEigenvalue,
    ModeIndex,
    billiard_eigenvalue,
    boundary_residual,
    normal_mode_field,
)
from .cavity import (
    Resonance,
    SearchRegion,
    count_roots_in_region,
    find_family_roots,
    find_resonance,
    qnm_fields,
    resonance_determinant,
    resonance_determinant_deriv,
)
from .errors import (
    BoundaryProximityError,
    BranchError,
    ConvergenceError,
    DomainError,
    GridError,
    MicrodiskError,
    NoBarrierError,
    NoThresholdError,
    SingularityError,
    UndersampledBoundaryError,
    ZeroWidthError,
)
from .fieldgrid import (
    FieldGrid,
    GridSpec,
    read_pgm,
    sample_radial_mode,
    write_csv_matrix,
    write_pgm,
)
from .husimi import (
    HusimiMap,
    boundary_husimi,
    boundary_trace,
    critical_momentum,
    mode_husimi,
)
from .specfun import (
    bessel_j,
    bessel_j_deriv,
    bessel_j_zero,
    bessel_j_zeros,
    hankel1,
    hankel1_deriv,
)
from .sweeps import (
    SWEEP_COLUMNS,
    SweepRow,
    ThresholdResult,
    emit_csv,
    emit_json,
    find_threshold,
    parse_csv,
    refractive_grid,
    run_sweep_m,
    run_sweep_n,
)

__version__ = "0.1.0"

__all__ = [
    "ABOVE_BARRIER",
    "BELOW_BARRIER",
    "BarrierData",
    "BilliardEigenvalue",
    "BoundaryProximityError",
    "BranchError",
    "ConvergenceError",
    "DomainError",
    "FieldGrid",
    "GridError",
    "GridSpec",
    "HusimiMap",
    "LambShiftRecord",
    "MicrodiskError",
    "ModeIndex",
    "NoBarrierError",
    "NoThresholdError",
    "Resonance",
    "SWEEP_COLUMNS",
    "SearchRegion",
    "SingularityError",
    "SweepRow",
    "ThresholdResult",
    "UndersampledBoundaryError",
    "ZeroWidthError",
    "barrier_bounds",
    "bessel_j",
    "bessel_j_deriv",
    "bessel_j_zero",
    "bessel_j_zeros",
    "billiard_eigenvalue",
    "boundary_husimi",
    "boundary_residual",
    "boundary_trace",
    "classify_resonance",
    "count_roots_in_region",
    "critical_momentum",
    "decay_width_and_q",
    "effective_potential",
    "emit_csv",
    "emit_json",
    "find_family_roots",
    "find_resonance",
    "find_threshold",
    "hankel1",
    "hankel1_deriv",
    "lamb_shift",
    "mode_husimi",
    "normal_mode_field",
    "parse_csv",
    "qnm_fields",
    "read_pgm",
    "refractive_grid",
    "run_sweep_m",
    "run_sweep_n",
    "sample_radial_mode",
    "well_bottom",
    "write_csv_matrix",
    "write_pgm",
]
