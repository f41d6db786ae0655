"""Sampling-rate planning for finite-difference estimates of signal derivatives."""
from ._kernels import BACKEND
from .filters import RcCascade, power_response, solve_cutoff, solve_time_constant
from .harmonic import (
    Harmonic,
    HarmonicSum,
    evaluate,
    exact_derivative,
    forward_difference,
    mean_square,
    velocity_estimate,
)
from .planner import CombinedPlan, PlanRequest, SamplingPlan, build_plan, combine_plans, optimize_n
from .pricing import (
    FunctionalPoint,
    InfeasibleError,
    PricingParams,
    min_rate,
    n_max,
    price,
    quality_error,
    sweep,
    total,
)
from .simulate import (
    SimConfig,
    SimReport,
    alias_frequency,
    closed_form_error_k1,
    decimate,
    empirical_error,
)

__version__ = "0.1.0"
