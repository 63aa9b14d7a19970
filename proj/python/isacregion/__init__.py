"""Rate-exponent regions of the Gaussian ISAC channel."""

from _isacregion import (  # noqa: F401
    AccuracyError,
    BinaryPam,
    ChannelParams,
    CurvePoint,
    ExponentFit,
    Gaussian,
    GaussianMixture,
    McEstimate,
    QuadratureConfig,
    RatePoint,
    RegionCurve,
    Scheme,
    SignedChi,
    avg_error_exact,
    chernoff_avg_error,
    chernoff_q_bound,
    corner_comm,
    corner_sensing,
    db_to_linear,
    default_mixture_grid,
    default_signed_chi_grid,
    fit_exponent,
    linear_to_db,
    log_bessel_i,
    log_gamma,
    log_q_function,
    mc_detection_error,
    q_function,
    q_sandwich,
    rate_binary_awgn,
    signed_chi_pdf,
    sweep_region,
    theorem1_point,
    theorem2_point,
)

__version__ = "0.1.0"
