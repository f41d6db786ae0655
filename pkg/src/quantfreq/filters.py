"""Cascade of identical, buffered first-order RC low-pass sections."""
from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import optimize

BRACKET_SPAN = 1e6
MAX_ITER = 200
XTOL_REL = 1e-12


@dataclass(frozen=True)
class RcCascade:
    links: int
    time_constant_s: float

    def __post_init__(self):
        if int(self.links) != self.links or self.links < 1:
            raise ValueError(f"links must be an integer >= 1, got {self.links}")
        if not (math.isfinite(self.time_constant_s) and self.time_constant_s > 0):
            raise ValueError(f"time_constant_s must be positive and finite, got {self.time_constant_s}")

    @property
    def half_power_hz(self) -> float:
        return math.sqrt(2.0 ** (1.0 / self.links) - 1.0) / (2.0 * math.pi * self.time_constant_s)


def power_response(filt: RcCascade, f: float) -> float:
    """|H(f)|^2 = (1 + (2 pi f T)^2)^-links."""
    if f < 0:
        raise ValueError(f"frequency must be >= 0, got {f}")
    x = 2.0 * math.pi * f * filt.time_constant_s
    return (1.0 / (1.0 + x * x)) ** filt.links


def amplitude_response(filt: RcCascade, f: float) -> float:
    return math.sqrt(power_response(filt, f))


def solve_time_constant(links: int, f_half: float) -> float:
    """Time constant T putting the half-power point of ``links`` sections at ``f_half``."""
    if not (f_half > 0 and math.isfinite(f_half)):
        raise ValueError(f"f_half must be positive and finite, got {f_half}")
    if links < 1:
        raise ValueError(f"links must be >= 1, got {links}")
    return math.sqrt(2.0 ** (1.0 / links) - 1.0) / (2.0 * math.pi * f_half)


def solve_cutoff(filt: RcCascade, level: float, domain: str = "power") -> float:
    """Frequency where the power (or amplitude) response falls to ``level``.

    Solved by bisection on ``[f_half/1e6, f_half*1e6]``; raises if the
    level is not bracketed.
    """
    if not 0 < level < 1:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    if domain == "power":
        response = lambda f: power_response(filt, f)  # noqa: E731
    elif domain == "amplitude":
        response = lambda f: amplitude_response(filt, f)  # noqa: E731
    else:
        raise ValueError(f"domain must be 'power' or 'amplitude', got {domain!r}")

    f_half = filt.half_power_hz
    lo, hi = f_half / BRACKET_SPAN, f_half * BRACKET_SPAN
    g_lo, g_hi = response(lo) - level, response(hi) - level
    if g_lo * g_hi > 0:
        raise ValueError(
            f"level {level} ({domain}) not bracketed on [{lo:.6g}, {hi:.6g}] Hz"
        )
    root, info = optimize.bisect(
        lambda f: response(f) - level, lo, hi,
        xtol=1e-300, rtol=XTOL_REL, maxiter=MAX_ITER, full_output=True, disp=False,
    )
    if not info.converged:
        raise RuntimeError(f"bisection did not converge: {info.flag}")
    return float(root)
