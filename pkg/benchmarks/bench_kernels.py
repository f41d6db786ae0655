"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5]

JIT compilation is excluded: each numba kernel is called once before timing.
"""
import argparse
import time

import numpy as np

from quantfreq import _kernels


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    rng = np.random.default_rng(7)
    pairs = [(fp, fp * ratio) for fp, ratio in zip(rng.uniform(1e3, 1e5, 200),
                                                     rng.uniform(2, 1e4, 200))]
    amps = rng.uniform(0, 1, 32)
    freqs = rng.uniform(0, 2e3, 32)
    phases = rng.uniform(0, 2 * np.pi, 32)
    t = np.linspace(0, 0.01, 50_000)

    cases = {
        "pq_argmin x200": lambda impl: [impl.pq_argmin(1, int(fs // (2 * fp)), fp, fs) for fp, fs in pairs],
        "pq_curve 1..20000": lambda impl: impl.pq_curve(1, 20_000, 1e3, 4e7),
        "harmonic_eval 32x50k": lambda impl: impl.harmonic_eval(amps, freqs, phases, t),
        "forward_diff k=3 32x50k": lambda impl: impl.harmonic_forward_difference(amps, freqs, phases, 3, 1e-5, t),
    }
    impls = {"numpy": _kernels.numpy_impl}
    if _kernels.numba_impl is not None:
        impls["numba"] = _kernels.numba_impl

    print(f"{'kernel':<26}" + "".join(f"{name:>12}" for name in impls) + "   speedup")
    for label, case in cases.items():
        times = {}
        for name, impl in impls.items():
            case(impl)  # warm-up / compile
            times[name] = _best_of(lambda: case(impl), args.repeat)
        row = f"{label:<26}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in impls)
        if "numba" in times:
            row += f"   {times['numpy'] / times['numba']:6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
