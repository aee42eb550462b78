"""Turbulence-induced loss and modal cross-talk statistics for free-space optical channels."""

from ._core import (  # noqa: F401
    DataError,
    DistortionVariances,
    DomainError,
    NumericError,
    ParameterError,
    c_a_from_gamma,
    compute_variances,
    crosstalk_first_order,
    estimate_fried,
    fit_power_law,
    grid_overlap,
    lambert_w,
    mode_filter_value,
    pdf_crosstalk,
    pdf_fundamental,
    phase_psd,
    r0_from_c_a,
    simulate_crosstalk,
    simulate_transmittance,
    t00_first_order,
    t00_second_order,
    t_n_max,
    vartheta,
    xi_roots,
)

__version__ = "0.1.0"
