"""Measure finite-difference derivative error on a probe harmonic, plus aliasing and decimation helpers."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .harmonic import HarmonicSum, exact_derivative, mean_square, velocity_estimate
from .pricing import quality_error


@dataclass(frozen=True)
class SimConfig:
    """One measurement of the velocity-estimate error.

    ``probe_freq_hz`` defaults to ``f_p_hz`` so the phase step per sample is
    pi/N. ``alpha`` places the reference derivative at ``t + alpha*k*dt``:
    1/k puts it at the end of the difference stencil, 1/2 at its centre.
    """

    order_k: int
    n: int
    f_p_hz: float
    probe_freq_hz: float | None = None
    alpha: float = 0.5
    phase_rad: float = 0.0
    periods: int = 4
    grid: int = 4096

    def __post_init__(self):
        if self.order_k < 1:
            raise ValueError(f"order_k must be >= 1, got {self.order_k}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not self.f_p_hz > 0:
            raise ValueError(f"f_p_hz must be positive, got {self.f_p_hz}")
        if self.probe_freq_hz is None:
            object.__setattr__(self, "probe_freq_hz", float(self.f_p_hz))
        if not self.probe_freq_hz > 0:
            raise ValueError(f"probe_freq_hz must be positive, got {self.probe_freq_hz}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.periods < 1:
            raise ValueError(f"periods must be >= 1, got {self.periods}")
        if self.grid < 64:
            raise ValueError(f"grid must be >= 64, got {self.grid}")
        if not self.probe_freq_hz * self.dt_s < 0.5:
            raise ValueError(
                f"probe {self.probe_freq_hz:g} Hz aliases at dt={self.dt_s:g} s "
                f"(needs probe*dt < 1/2, got {self.probe_freq_hz * self.dt_s:g})"
            )

    @property
    def dt_s(self) -> float:
        return 1.0 / (2.0 * self.f_p_hz * self.n)

    @property
    def phase_step(self) -> float:
        return 2.0 * math.pi * self.probe_freq_hz * self.dt_s


@dataclass(frozen=True)
class SimReport:
    r_empirical: float
    r_model: float
    x: float
    gap: float


def residual_ratio(signal: Callable, derivative: Callable, k: int, dt: float,
                   alpha: float, t0: float, window: float, samples: int) -> float:
    """RMS of (estimate - reference derivative) relative to RMS of the derivative.

    ``signal`` and ``derivative`` are vectorised callables of time; the
    reference derivative is read at ``t + alpha*k*dt``.
    """
    shift = alpha * k * dt

    def residual(t):
        return velocity_estimate(signal, k, dt, t) - derivative(t + shift)

    num = mean_square(residual, t0, window, samples)
    den = mean_square(derivative, t0, window, samples)
    if den == 0:
        raise ValueError("reference derivative has zero mean square")
    return math.sqrt(num / den)


def empirical_error(config: SimConfig) -> SimReport:
    probe = HarmonicSum.single(1.0, config.probe_freq_hz, config.phase_rad)
    deriv = exact_derivative(probe, config.order_k)
    window = config.periods / config.probe_freq_hz
    r_emp = residual_ratio(probe, deriv, config.order_k, config.dt_s,
                           config.alpha, 0.0, window, config.grid)
    r_model = quality_error(config.n)
    return SimReport(r_empirical=r_emp, r_model=r_model,
                     x=config.phase_step, gap=r_emp - r_model)


def residual_trace(config: SimConfig, points: int | None = None) -> np.ndarray:
    """Columns ``t, v_est, exact, residual`` over one window of the probe."""
    probe = HarmonicSum.single(1.0, config.probe_freq_hz, config.phase_rad)
    deriv = exact_derivative(probe, config.order_k)
    window = config.periods / config.probe_freq_hz
    t = np.linspace(0.0, window, points or config.grid)
    v = velocity_estimate(probe, config.order_k, config.dt_s, t)
    exact = deriv(t + config.alpha * config.order_k * config.dt_s)
    return np.column_stack([t, v, exact, v - exact])


def closed_form_error_k1(x: float, alpha: float) -> float:
    """First-order relative RMS error for phase step ``x`` and offset ``alpha``.

    Independent of the sampled measurement: the residual of a unit phasor is
    ``(e^{ix} - 1)/x - i e^{i alpha x}``, whose modulus is returned.
    """
    if not 0 < x < math.pi:
        raise ValueError(f"x must lie in (0, pi), got {x}")
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    re = (math.cos(x) - 1.0) + x * math.sin(alpha * x)
    im = x * math.cos(alpha * x) - math.sin(x)
    return math.hypot(re, im) / x


def alias_frequency(f: float, f_sample: float) -> float:
    """Apparent frequency of a tone at ``f`` sampled at ``f_sample``, in ``[0, f_sample/2]``."""
    if not f_sample > 0:
        raise ValueError(f"f_sample must be positive, got {f_sample}")
    if f < 0:
        raise ValueError(f"f must be >= 0, got {f}")
    return abs(f - f_sample * round(f / f_sample))


def decimate(samples: Sequence, k_d: int, rtol: float = 1e-9) -> np.ndarray:
    """Keep every ``k_d``-th ``(t, value)`` row starting at index 0."""
    if int(k_d) != k_d or k_d < 1:
        raise ValueError(f"k_d must be an integer >= 1, got {k_d}")
    arr = np.asarray(samples, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("samples must be a sequence of (t, value) pairs")
    if len(arr) > 2:
        steps = np.diff(arr[:, 0])
        if not np.allclose(steps, steps[0], rtol=rtol, atol=0):
            raise ValueError("samples are not uniformly spaced in time")
    return arr[:: int(k_d)]
