"""End-to-end sampling plans: filter cutoff -> base rate -> optimal N -> F_o, K_d."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable

from . import _kernels
from .filters import RcCascade, solve_cutoff
from .pricing import (
    FunctionalPoint,
    InfeasibleError,
    PricingParams,
    min_rate,
    sweep,
)


@dataclass(frozen=True)
class PlanRequest:
    f_v_hz: float
    order_k: int
    filter: RcCascade
    suppression_level: float
    suppression_domain: str = "power"
    f_adc_hz: float = 500e3
    fp_margin: float = 1.0

    def __post_init__(self):
        if not self.f_v_hz > 0:
            raise ValueError(f"f_v_hz must be positive, got {self.f_v_hz}")
        if self.order_k < 0:
            raise ValueError(f"order_k must be >= 0, got {self.order_k}")
        if not self.fp_margin >= 1:
            raise ValueError(f"fp_margin must be >= 1, got {self.fp_margin}")
        if not self.f_adc_hz > 0:
            raise ValueError(f"f_adc_hz must be positive, got {self.f_adc_hz}")


@dataclass(frozen=True)
class SamplingPlan:
    order_k: int
    f_s_hz: float
    f_p_hz: float
    n_opt: int
    f_o_hz: float
    k_d: int
    f2_min_hz: float
    r_at_opt: float
    j_at_opt: float
    sweep: list[FunctionalPoint] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SamplingPlan":
        data = dict(data)
        data["sweep"] = [FunctionalPoint(**p) for p in data.get("sweep", [])]
        return cls(**data)


@dataclass(frozen=True)
class CombinedPlan:
    f_o_hz: float
    k_d: int


def optimize_n(params: PricingParams) -> int:
    """Integer N in ``[1, floor(N_m)]`` minimising J; ties go to the smaller N."""
    n_hi = params.n_limit
    if n_hi < 1:
        raise InfeasibleError("floor(F_s/2F_p) < 1: no feasible N")
    return _kernels.pq_argmin(1, n_hi, params.f_p_hz, params.f_adc_hz)


def build_plan(request: PlanRequest) -> SamplingPlan:
    f_s = solve_cutoff(request.filter, request.suppression_level, request.suppression_domain)
    if not request.f_v_hz < f_s:
        raise InfeasibleError(
            f"filter cutoff f_s={f_s:.6g} Hz does not exceed the signal band F_v={request.f_v_hz:.6g} Hz"
        )
    f_p = request.fp_margin * 2.0 * f_s
    if f_p > request.f_adc_hz / 2.0:
        raise InfeasibleError(
            f"F_s < 2F_p: ADC rate {request.f_adc_hz:.6g} Hz is below twice the "
            f"base rate F_p={f_p:.6g} Hz"
        )
    params = PricingParams(request.order_k, f_p, request.f_adc_hz)
    n_opt = optimize_n(params)
    points = sweep(params)
    best = points[n_opt - 1]
    return SamplingPlan(
        order_k=request.order_k,
        f_s_hz=f_s,
        f_p_hz=f_p,
        n_opt=n_opt,
        f_o_hz=2.0 * n_opt * f_p,
        k_d=2 * n_opt,
        f2_min_hz=min_rate(request.order_k, request.f_v_hz),
        r_at_opt=best.r,
        j_at_opt=best.j,
        sweep=points,
    )


def combine_plans(plans: Iterable) -> CombinedPlan:
    """Merge plans for several derivative orders sharing one ADC clock.

    The fastest rate wins so every order is served; the smallest divider wins
    so no order is decimated below its requirement.
    """
    plans = list(plans)
    if not plans:
        raise ValueError("combine_plans needs at least one plan")
    return CombinedPlan(
        f_o_hz=max(p.f_o_hz for p in plans),
        k_d=min(p.k_d for p in plans),
    )


def check_plan(plan: SamplingPlan, f_adc_hz: float) -> list[str]:
    """Return violated plan invariants (empty when consistent)."""
    problems = []
    if plan.f_o_hz != 2.0 * plan.n_opt * plan.f_p_hz:
        problems.append("f_o_hz != 2 * n_opt * f_p_hz")
    if plan.k_d * plan.f_p_hz != plan.f_o_hz:
        problems.append("k_d * f_p_hz != f_o_hz")
    if plan.f_o_hz > f_adc_hz:
        problems.append("f_o_hz exceeds the ADC rate")
    if plan.f_o_hz < 2.0 * plan.f_p_hz:
        problems.append("f_o_hz below 2 * f_p_hz")
    if plan.sweep and not plan.j_at_opt == min(p.j for p in plan.sweep):
        problems.append("j_at_opt is not the sweep minimum")
    return problems
