"""Hot numeric loops, compiled with numba when available.

Every kernel has a pure-numpy twin with the same signature. The active
backend is chosen once at import time:

    QUANTFREQ_DISABLE_NUMBA=1   force the numpy path
    (unset / 0)                 use numba if it imports, else numpy

Both implementations stay importable (``numpy_impl`` / ``numba_impl``) so the
test-suite and the benchmark can compare them directly.
"""
from __future__ import annotations

import math
import os
import types

import numpy as np

__all__ = [
    "BACKEND",
    "numpy_impl",
    "numba_impl",
    "pq_curve",
    "pq_argmin",
    "harmonic_eval",
    "harmonic_forward_difference",
]


def _binomial_weights(k):
    # (-1)^(k-j) * C(k, j), j = 0..k
    return np.array([(-1.0) ** (k - j) * math.comb(k, j) for j in range(k + 1)])


# --------------------------------------------------------------------------
# numpy path

def _np_pq_curve(n_lo, n_hi, f_p, f_s):
    n = np.arange(n_lo, n_hi + 1, dtype=np.float64)
    r = 1.0 - np.cos(np.pi / n)
    j2 = 2.0 * n * f_p / f_s
    return r, j2


def _np_pq_argmin(n_lo, n_hi, f_p, f_s):
    r, j2 = _np_pq_curve(n_lo, n_hi, f_p, f_s)
    # np.argmin returns the first minimum -> ties go to the smaller n
    return n_lo + int(np.argmin(r + j2))


def _np_harmonic_eval(amps, freqs, phases, t):
    t = np.asarray(t, dtype=np.float64)
    arg = 2.0 * np.pi * np.multiply.outer(t, freqs) + phases
    return np.cos(arg) @ amps


def _np_harmonic_forward_difference(amps, freqs, phases, k, dt, t):
    t = np.asarray(t, dtype=np.float64)
    w = _binomial_weights(k)
    out = np.zeros_like(t)
    for j in range(k + 1):
        out += w[j] * _np_harmonic_eval(amps, freqs, phases, t + j * dt)
    return out


numpy_impl = types.SimpleNamespace(
    pq_curve=_np_pq_curve,
    pq_argmin=_np_pq_argmin,
    harmonic_eval=_np_harmonic_eval,
    harmonic_forward_difference=_np_harmonic_forward_difference,
)


# --------------------------------------------------------------------------
# numba path

numba_impl = None
try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

if numba is not None:
    _njit = numba.njit(cache=True, fastmath=False)

    @_njit
    def _nb_pq_curve(n_lo, n_hi, f_p, f_s):
        m = n_hi - n_lo + 1
        r = np.empty(m)
        j2 = np.empty(m)
        for i in range(m):
            n = float(n_lo + i)
            r[i] = 1.0 - math.cos(math.pi / n)
            j2[i] = 2.0 * n * f_p / f_s
        return r, j2

    @_njit
    def _nb_pq_argmin(n_lo, n_hi, f_p, f_s):
        best_n = n_lo
        best = np.inf
        for n_int in range(n_lo, n_hi + 1):
            n = float(n_int)
            j = 1.0 - math.cos(math.pi / n) + 2.0 * n * f_p / f_s
            if j < best:
                best = j
                best_n = n_int
        return best_n

    @_njit
    def _nb_harmonic_eval(amps, freqs, phases, t):
        out = np.zeros(t.shape[0])
        for i in range(t.shape[0]):
            acc = 0.0
            for m in range(amps.shape[0]):
                acc += amps[m] * math.cos(2.0 * math.pi * freqs[m] * t[i] + phases[m])
            out[i] = acc
        return out

    @_njit
    def _nb_harmonic_forward_difference(amps, freqs, phases, k, dt, t):
        w = np.empty(k + 1)
        c = 1.0
        for j in range(k + 1):
            # C(k, j) built incrementally; exact in float64 for any sane k
            w[j] = c if (k - j) % 2 == 0 else -c
            c = c * (k - j) / (j + 1)
        out = np.zeros(t.shape[0])
        for i in range(t.shape[0]):
            acc = 0.0
            for j in range(k + 1):
                tj = t[i] + j * dt
                y = 0.0
                for m in range(amps.shape[0]):
                    y += amps[m] * math.cos(2.0 * math.pi * freqs[m] * tj + phases[m])
                acc += w[j] * y
            out[i] = acc
        return out

    def _nb_harmonic_eval_wrapped(amps, freqs, phases, t):
        t = np.asarray(t, dtype=np.float64)
        flat = np.ascontiguousarray(t.reshape(-1))
        return _nb_harmonic_eval(amps, freqs, phases, flat).reshape(t.shape)

    def _nb_harmonic_forward_difference_wrapped(amps, freqs, phases, k, dt, t):
        t = np.asarray(t, dtype=np.float64)
        flat = np.ascontiguousarray(t.reshape(-1))
        out = _nb_harmonic_forward_difference(amps, freqs, phases, int(k), float(dt), flat)
        return out.reshape(t.shape)

    numba_impl = types.SimpleNamespace(
        pq_curve=lambda n_lo, n_hi, f_p, f_s: _nb_pq_curve(int(n_lo), int(n_hi), float(f_p), float(f_s)),
        pq_argmin=lambda n_lo, n_hi, f_p, f_s: int(_nb_pq_argmin(int(n_lo), int(n_hi), float(f_p), float(f_s))),
        harmonic_eval=_nb_harmonic_eval_wrapped,
        harmonic_forward_difference=_nb_harmonic_forward_difference_wrapped,
    )


def _select():
    flag = os.environ.get("QUANTFREQ_DISABLE_NUMBA", "").strip().lower()
    if flag in ("", "0", "false", "no") and numba_impl is not None:
        return "numba", numba_impl
    return "numpy", numpy_impl


BACKEND, _impl = _select()

pq_curve = _impl.pq_curve
pq_argmin = _impl.pq_argmin
harmonic_eval = _impl.harmonic_eval
harmonic_forward_difference = _impl.harmonic_forward_difference
