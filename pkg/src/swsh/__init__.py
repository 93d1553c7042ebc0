"""Spin-weighted spherical harmonics as angular-momentum eigenstates.

Stable mode evaluation, quadrature grids and transforms, the helicity
angular-momentum operator suite, embedded polarization-bundle sections,
and integer multiplet bookkeeping, with a verification CLI (swsh).
"""

from .errors import (
    BandLimitExceeded,
    DomainError,
    GridMismatch,
    InsufficientNodes,
    InvalidMode,
    NegativeSpin,
    SearchBudgetExceeded,
    SpinWeightMismatch,
    UnsupportedHelicity,
    UnsupportedOrder,
)
from .modes import (
    NORTH,
    SOUTH,
    SWMode,
    eval_swsh,
    eval_swsh_dtheta,
    eval_swsh_pole_limit,
    profile,
    validate_mode,
)
from .grid import (
    FrameField,
    GridFunction,
    SphereGrid,
    apply_gauge,
    frame_residual,
    gauge_rotate_frame,
    inner_product,
    make_grid,
    norm,
    pole_limit_extrapolate,
    read_grid_csv,
    sample_swsh,
    standard_frame,
    write_grid_csv,
)
from .transform import (
    CoefficientSet,
    analyze,
    coefficient_set,
    coefficients_from_json,
    coefficients_to_json,
    mode_counts,
    read_coefficients_json,
    synthesize,
    write_coefficients_json,
)
from .operators import (
    OperatorSpec,
    apply_coeff,
    apply_grid,
    ladder_coefficient,
    verify_casimir_identity,
)
from .bundle import (
    EmbeddedSection,
    VectorOperatorResult,
    apply_J_rotation,
    apply_projected_orbital,
    apply_projected_spin,
    commutator_report,
    e_h_tensor,
    embed,
    extract,
    rank1_residual,
    section_add,
    section_norm,
    section_scale,
    transversality_residual,
)
from .multiplets import (
    MultipletSpectrum,
    factor_search,
    massive_spectrum,
    massless_spectrum,
    spectrum,
    spectrum_tensor,
    spectrum_to_json,
    tensor_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "BandLimitExceeded",
    "CoefficientSet",
    "DomainError",
    "EmbeddedSection",
    "FrameField",
    "GridFunction",
    "GridMismatch",
    "InsufficientNodes",
    "InvalidMode",
    "MultipletSpectrum",
    "NegativeSpin",
    "NORTH",
    "OperatorSpec",
    "SOUTH",
    "SearchBudgetExceeded",
    "SphereGrid",
    "SpinWeightMismatch",
    "SWMode",
    "UnsupportedHelicity",
    "UnsupportedOrder",
    "VectorOperatorResult",
    "analyze",
    "apply_J_rotation",
    "apply_coeff",
    "apply_gauge",
    "apply_grid",
    "apply_projected_orbital",
    "apply_projected_spin",
    "coefficient_set",
    "coefficients_from_json",
    "coefficients_to_json",
    "commutator_report",
    "e_h_tensor",
    "embed",
    "eval_swsh",
    "eval_swsh_dtheta",
    "eval_swsh_pole_limit",
    "extract",
    "factor_search",
    "frame_residual",
    "gauge_rotate_frame",
    "inner_product",
    "ladder_coefficient",
    "make_grid",
    "massive_spectrum",
    "massless_spectrum",
    "mode_counts",
    "norm",
    "pole_limit_extrapolate",
    "profile",
    "rank1_residual",
    "read_coefficients_json",
    "read_grid_csv",
    "sample_swsh",
    "section_add",
    "section_norm",
    "section_scale",
    "spectrum",
    "spectrum_tensor",
    "spectrum_to_json",
    "standard_frame",
    "synthesize",
    "tensor_decompose",
    "transversality_residual",
    "validate_mode",
    "verify_casimir_identity",
    "write_coefficients_json",
    "write_grid_csv",
]
