"""Band-limited almost-periodic signals, their derivatives and finite differences."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels

DEFAULT_QUADRATURE_SAMPLES = 4096


@dataclass(frozen=True)
class Harmonic:
    amplitude: float
    frequency_hz: float
    phase_rad: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.amplitude) and self.amplitude >= 0):
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude}")
        if not (math.isfinite(self.frequency_hz) and self.frequency_hz >= 0):
            raise ValueError(f"frequency_hz must be finite and >= 0, got {self.frequency_hz}")
        if not math.isfinite(self.phase_rad):
            raise ValueError(f"phase_rad must be finite, got {self.phase_rad}")


@dataclass(frozen=True)
class HarmonicSum:
    """Finite cosine series ``sum A cos(2 pi F t + theta)``.

    Anything not listed has zero amplitude, so the signal is band-limited at
    :attr:`cutoff_hz` by construction.
    """

    terms: tuple[Harmonic, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def single(cls, amplitude=1.0, frequency_hz=1.0, phase_rad=0.0):
        return cls((Harmonic(amplitude, frequency_hz, phase_rad),))

    @property
    def cutoff_hz(self) -> float:
        if not self.terms:
            raise ValueError("empty HarmonicSum has no cutoff")
        return max(h.frequency_hz for h in self.terms)

    def arrays(self):
        """Return (amplitudes, frequencies, phases) as float64 arrays."""
        if not self.terms:
            raise ValueError("cannot evaluate an empty HarmonicSum")
        a = np.array([h.amplitude for h in self.terms], dtype=np.float64)
        f = np.array([h.frequency_hz for h in self.terms], dtype=np.float64)
        p = np.array([h.phase_rad for h in self.terms], dtype=np.float64)
        return a, f, p

    def __call__(self, t):
        return evaluate(self, t)


def evaluate(signal: HarmonicSum, t):
    """Evaluate the series at scalar or array ``t`` (seconds)."""
    a, f, p = signal.arrays()
    if np.isscalar(t):
        if not math.isfinite(t):
            raise ValueError(f"t must be finite, got {t}")
        return float(_kernels.harmonic_eval(a, f, p, np.array([t], dtype=np.float64))[0])
    return _kernels.harmonic_eval(a, f, p, np.asarray(t, dtype=np.float64))


def exact_derivative(signal: HarmonicSum, k: int) -> HarmonicSum:
    """k-th time derivative, again as a cosine series.

    d^k/dt^k cos(w t + theta) = w^k cos(w t + theta + k pi/2).
    """
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    if k == 0:
        return signal
    return HarmonicSum(
        tuple(
            Harmonic(h.amplitude * (2.0 * math.pi * h.frequency_hz) ** k,
                     h.frequency_hz,
                     h.phase_rad + k * math.pi / 2.0)
            for h in signal.terms
        )
    )


def _check_difference_args(k, dt):
    if k < 1:
        raise ValueError(f"finite-difference order must be >= 1, got {k}; use evaluate() for k=0")
    if not (dt > 0 and math.isfinite(dt)):
        raise ValueError(f"dt must be positive and finite, got {dt}")


def forward_difference(f: Callable, k: int, dt: float, t):
    """k-th forward difference ``sum_j (-1)^(k-j) C(k,j) f(t + j dt)``.

    ``f`` is any callable of time. HarmonicSum inputs are routed through the
    compiled kernel; other callables are evaluated directly, so array ``t``
    works whenever ``f`` is vectorised.
    """
    _check_difference_args(k, dt)
    if isinstance(f, HarmonicSum):
        a, fr, p = f.arrays()
        if np.isscalar(t):
            arr = np.array([t], dtype=np.float64)
            return float(_kernels.harmonic_forward_difference(a, fr, p, k, dt, arr)[0])
        return _kernels.harmonic_forward_difference(a, fr, p, k, dt, t)
    total = 0  # int start keeps Fraction/Decimal inputs exact
    for j in range(k + 1):
        total = total + (-1) ** (k - j) * math.comb(k, j) * f(t + j * dt)
    return total


def velocity_estimate(f: Callable, k: int, dt: float, t):
    """Finite-difference estimate of the k-th derivative: difference / dt**k."""
    return forward_difference(f, k, dt, t) / dt**k


def mean_square(f: Callable, t0: float, window: float,
                samples: int = DEFAULT_QUADRATURE_SAMPLES) -> float:
    """Time-averaged square of ``f`` over ``[t0, t0 + window]``.

    Uniform-grid trapezoid rule. Over whole periods of a harmonic sum the
    rule is exact up to rounding once ``samples`` exceeds twice the highest
    harmonic count per window.
    """
    if not (window > 0 and math.isfinite(window)):
        raise ValueError(f"window must be positive and finite, got {window}")
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    t = np.linspace(t0, t0 + window, samples)
    y = np.asarray(f(t), dtype=np.float64)
    if y.shape != t.shape:
        y = np.broadcast_to(y, t.shape)
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite sample encountered in mean_square integrand")
    return float(np.trapezoid(y * y, t) / window)


def harmonic_sum(terms: Sequence[tuple[float, float, float]]) -> HarmonicSum:
    """Build a HarmonicSum from ``(amplitude, frequency_hz, phase_rad)`` tuples."""
    return HarmonicSum(tuple(Harmonic(*term) for term in terms))
