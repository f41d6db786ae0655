"""Quality, price and combined functionals over the oversampling multiplier N.

With base rate F_p and ADC ceiling F_s, the sample step is
``dt = 1 / (2 F_p N)`` for N in ``[1, floor(F_s / 2F_p)]`` and

    r(N)  = 1 - cos(pi / N)        relative error of the boundary harmonic
    J2(N) = 2 N F_p / F_s          relative sample cost
    J(N)  = r(N) + J2(N)
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import optimize

from . import _kernels


class InfeasibleError(ValueError):
    """No admissible sampling multiplier exists for the given rates."""


@dataclass(frozen=True)
class PricingParams:
    order_k: int
    f_p_hz: float
    f_adc_hz: float

    def __post_init__(self):
        if self.order_k < 0:
            raise ValueError(f"order_k must be >= 0, got {self.order_k}")
        for name in ("f_p_hz", "f_adc_hz"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v}")
        if self.f_adc_hz < 2.0 * self.f_p_hz:
            raise InfeasibleError(
                f"F_s < 2F_p: ADC rate {self.f_adc_hz:g} Hz is below twice the base "
                f"rate {self.f_p_hz:g} Hz, so no N >= 1 is feasible"
            )

    @property
    def n_limit(self) -> int:
        return int(math.floor(n_max(self)))


@dataclass(frozen=True)
class FunctionalPoint:
    n: int
    r: float
    j2: float
    j: float
    dt_s: float


def n_max(params: PricingParams) -> float:
    return params.f_adc_hz / (2.0 * params.f_p_hz)


def quality_error(n: int) -> float:
    if n < 1:
        raise ValueError(f"N must be >= 1, got {n}")
    return 1.0 - math.cos(math.pi / n)


def _check_n(params, n):
    if int(n) != n or n < 1 or n > params.n_limit:
        raise InfeasibleError(f"N={n} outside feasible range [1, {params.n_limit}]")


def price(params: PricingParams, n: int) -> float:
    _check_n(params, n)
    return 2.0 * n * params.f_p_hz / params.f_adc_hz


def total(params: PricingParams, n: int) -> FunctionalPoint:
    r = quality_error(n)
    j2 = price(params, n)
    return FunctionalPoint(n=int(n), r=r, j2=j2, j=r + j2,
                           dt_s=1.0 / (2.0 * params.f_p_hz * n))


def sweep(params: PricingParams, n_lo: int = 1, n_hi: int | None = None) -> list[FunctionalPoint]:
    """FunctionalPoint for every integer N in ``[n_lo, n_hi]`` (default: whole feasible range)."""
    if n_hi is None:
        n_hi = params.n_limit
    if n_lo < 1 or n_hi < n_lo:
        raise ValueError(f"invalid sweep range [{n_lo}, {n_hi}]")
    if n_hi > params.n_limit:
        raise InfeasibleError(
            f"sweep upper bound N={n_hi} exceeds floor(F_s/2F_p) = {params.n_limit}"
        )
    r, j2 = _kernels.pq_curve(n_lo, n_hi, params.f_p_hz, params.f_adc_hz)
    two_fp = 2.0 * params.f_p_hz
    return [
        FunctionalPoint(n=n, r=float(ri), j2=float(ji), j=float(ri) + float(ji),
                        dt_s=1.0 / (two_fp * n))
        for n, ri, ji in zip(range(n_lo, n_hi + 1), r, j2)
    ]


def continuous_optimum(params: PricingParams) -> float:
    """Real-valued minimiser of J over ``[1, N_m]``; informational only."""
    lo, hi = 1.0, n_max(params)
    if hi <= lo:
        return lo
    res = optimize.minimize_scalar(
        lambda n: 1.0 - math.cos(math.pi / n) + 2.0 * n * params.f_p_hz / params.f_adc_hz,
        bounds=(lo, hi), method="bounded", options={"xatol": 1e-10},
    )
    return float(res.x)


def min_rate(order_k: int, f_v_hz: float) -> float:
    """Smallest sampling rate that supports a k-th order derivative estimate."""
    if order_k < 0:
        raise ValueError(f"order_k must be >= 0, got {order_k}")
    if not f_v_hz > 0:
        raise ValueError(f"f_v_hz must be positive, got {f_v_hz}")
    return 2.0 * (order_k + 1) * f_v_hz
