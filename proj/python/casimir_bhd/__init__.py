"""Casimir cavity spectral densities and balanced homodyne detection."""

from ._core import (
    CavityGeometry,
    DetectorConfig,
    ExtrapolationDivergence,
    FieldPoint,
    LightConeProximity,
    LOKernel,
    NumericalGuardError,
    QuadratureFailure,
    SpectralSample,
    TailTooLarge,
    TruncationPolicy,
    build_grid,
    figure,
    normalized_difference,
    q_kernel,
    sigma_vacuum,
    sigma_via_numeric_ft,
    sigma_yy,
    sigma_yy_diag,
    smeared_R,
    suppression_db,
    two_point_yy_by_derivative,
    two_point_yy_closed,
    variance_approx,
    variance_current,
    w_kernel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
