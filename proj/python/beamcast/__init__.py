"""Threshold feedback policies for multi-beam vector broadcast channels.

Python bindings over the C++ core: Rayleigh SINR distributions, analytic
rate functionals, Schur-concavity condition checks, constrained threshold
optimization, and the Monte Carlo validator.
"""

from ._core import (
    ConditionReport,
    OptimizationResult,
    RateEstimate,
    RayleighModel,
    ThresholdPolicy,
    TwoUserCurve,
    __version__,
    beam_rate,
    conditional_rate_q,
    exhaustive_two_user,
    feedback_load,
    g_const,
    homogeneous_policy,
    lambert_w0,
    majorizes,
    optimize,
    pinch,
    r1_cond,
    r2_cond,
    random_majorization_pair,
    sample_sinr_matrix,
    schur_condition_numeric,
    schur_condition_rayleigh,
    simulate,
    simulate_pair_conditional,
    sum_rate,
    truncated_cdf,
)

__all__ = [
    "ConditionReport",
    "OptimizationResult",
    "RateEstimate",
    "RayleighModel",
    "ThresholdPolicy",
    "TwoUserCurve",
    "__version__",
    "beam_rate",
    "conditional_rate_q",
    "exhaustive_two_user",
    "feedback_load",
    "g_const",
    "homogeneous_policy",
    "lambert_w0",
    "majorizes",
    "optimize",
    "pinch",
    "r1_cond",
    "r2_cond",
    "random_majorization_pair",
    "sample_sinr_matrix",
    "schur_condition_numeric",
    "schur_condition_rayleigh",
    "simulate",
    "simulate_pair_conditional",
    "sum_rate",
    "truncated_cdf",
]
