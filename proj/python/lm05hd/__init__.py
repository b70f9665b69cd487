"""Security analysis of high-dimensional two-way deterministic QKD (LM05)."""

from ._core import (
    bell_state,
    collective_key_rate,
    detection_threshold,
    error_rates,
    fourier_matrix,
    gamma_overlap,
    individual_key_rate,
    min_detection_probability,
    purified_statistics,
    run_cloning,
    run_noise,
    weyl_u,
    weyl_w,
)

__all__ = [
    "bell_state",
    "collective_key_rate",
    "detection_threshold",
    "error_rates",
    "fourier_matrix",
    "gamma_overlap",
    "individual_key_rate",
    "min_detection_probability",
    "purified_statistics",
    "run_cloning",
    "run_noise",
    "weyl_u",
    "weyl_w",
]
