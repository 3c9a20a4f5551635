"""Hard-edge gap probabilities of the Jacobi unitary ensemble."""

from ._core import (
    DiscretizationError,
    PrecisionError,
    SingularityError,
    hn_exact,
    integrate_w,
    log_barnes_g,
    log_fredholm_det,
    log_prob_largest,
    log_prob_smallest,
    logdet_series,
    sample_spectrum,
    survival_estimate,
    sym_gap_series,
    zeta_prime_minus_one,
)

__all__ = [
    "DiscretizationError",
    "PrecisionError",
    "SingularityError",
    "hn_exact",
    "integrate_w",
    "log_barnes_g",
    "log_fredholm_det",
    "log_prob_largest",
    "log_prob_smallest",
    "logdet_series",
    "sample_spectrum",
    "survival_estimate",
    "sym_gap_series",
    "zeta_prime_minus_one",
]
