"""Command-line front end: ``quantfreq {plan,sweep,filter,simulate,combine}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict

import numpy as np

from .filters import RcCascade, amplitude_response, power_response, solve_cutoff, solve_time_constant
from .planner import PlanRequest, SamplingPlan, build_plan, combine_plans
from .pricing import InfeasibleError, PricingParams, continuous_optimum, quality_error, sweep, total
from .simulate import SimConfig, empirical_error, residual_trace

_UNITS = {"": 1.0, "hz": 1.0, "khz": 1e3, "mhz": 1e6}
_FREQ_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([a-zA-Z]*)\s*$")

# published worked-example inputs and reported outputs
PAPER_INPUTS = {"fv": 2000.0, "order": 1, "links": 2, "level": 0.1,
                "level_domain": "power", "adc": 500e3}
PAPER_REPORTED = {
    "time_constant_s": 5.12e-5,
    "f_s_hz": 4560.0,
    "stated_level_power": 0.01,
    "n_opt": 5,
    "f_o_hz": 45600.0,
    "error_fraction": 0.048,
    "output_rate_hz": 9120.0,
    "k_d": 5,
    "k0_f_o_hz": 36550.0,
    "k0_k_d": 8,
}


def parse_frequency(text: str) -> float:
    """Parse ``'9.12khz'``, ``'500 kHz'``, ``'2e3'`` (bare numbers are Hz)."""
    m = _FREQ_RE.match(str(text))
    if not m or m.group(2).lower() not in _UNITS:
        raise argparse.ArgumentTypeError(
            f"cannot parse frequency {text!r}; use a number with optional hz|khz|mhz suffix"
        )
    value = float(m.group(1)) * _UNITS[m.group(2).lower()]
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"frequency {text!r} is not finite")
    return value


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"cannot parse N range {text!r}; expected LO..HI")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    return lo, hi


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.12g}"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _human(doc, indent=0) -> str:
    pad = "  " * indent
    lines = []
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_human(value, indent + 1).rstrip("\n"))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}: [{len(value)} rows]")
        elif isinstance(value, list):
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  - {v}" for v in value)
        elif isinstance(value, float):
            lines.append(f"{pad}{key}: {value:.6g}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return "\n".join(lines) + "\n"


def _sweep_rows(points):
    return [(p.n, p.r, p.j2, p.j, p.dt_s) for p in points]


SWEEP_HEADER = ["N", "r", "J2", "J", "dt_s"]


# --------------------------------------------------------------------------
# subcommands

def _filter_from_args(args, default_f_half):
    if args.tau is not None:
        return RcCascade(args.links, args.tau)
    f_half = args.f_half if args.f_half is not None else default_f_half
    return RcCascade(args.links, solve_time_constant(args.links, f_half))


def _paper_notes(plan: SamplingPlan, filt: RcCascade) -> list[str]:
    ref = PAPER_REPORTED
    params = PricingParams(plan.order_k, plan.f_p_hz, PAPER_INPUTS["adc"])
    ref_params = PricingParams(plan.order_k, ref["output_rate_hz"], PAPER_INPUTS["adc"])
    j5, j6 = total(ref_params, 5).j, total(ref_params, 6).j
    stated_level_fs = solve_cutoff(filt, ref["stated_level_power"], "power")
    pr = ref["n_opt"]
    return [
        f"reference T = {ref['time_constant_s']:.4g} s; computed {filt.time_constant_s:.6g} s "
        f"(delta {filt.time_constant_s - ref['time_constant_s']:+.3g} s)",
        f"reference f_s = {ref['f_s_hz']:.6g} Hz; computed {plan.f_s_hz:.6g} Hz at level 0.1 (power) "
        f"(delta {plan.f_s_hz - ref['f_s_hz']:+.4g} Hz); the stated level 0.01 (power) gives "
        f"{stated_level_fs:.6g} Hz",
        f"reference N_o = {pr}; literal minimiser of J is N = {plan.n_opt} "
        f"(at F_p = 9120 Hz: J(5) = {j5:.6f}, J(6) = {j6:.6f}, delta {j5 - j6:+.6f})",
        f"reference F_o = {ref['f_o_hz']:.6g} Hz (computed there as N*2*f_s); "
        f"F_o = 2*N_o*F_p gives {plan.f_o_hz:.6g} Hz (delta {plan.f_o_hz - ref['f_o_hz']:+.6g} Hz)",
        f"reference error {ref['error_fraction']:.1%}; r(5) = {quality_error(5):.4%}, "
        f"r(10) = {quality_error(10):.4%} (the reference value matches N = 10, phase step pi/10)",
        f"reference output rate {ref['output_rate_hz']:.6g} Hz with K_d = {ref['k_d']}; "
        f"computed F_p = {plan.f_p_hz:.6g} Hz with K_d = F_o/F_p = {plan.k_d}",
        f"reference k=0 plan: F_o = {ref['k0_f_o_hz']:.6g} Hz, K_d = {ref['k0_k_d']} "
        f"(not reproducible from J(N), which does not depend on k)",
        f"continuous minimiser of J at computed F_p: N* = {continuous_optimum(params):.4f}",
    ]


def cmd_plan(args):
    if args.paper_example:
        for key, value in PAPER_INPUTS.items():
            if getattr(args, key) is None:
                setattr(args, key, value)
    missing = [flag for flag, key in (("--fv", "fv"), ("--adc", "adc")) if getattr(args, key) is None]
    if missing:
        raise _UsageError(f"plan requires {', '.join(missing)} (or --paper-example)")
    args.order = 1 if args.order is None else args.order
    args.links = 2 if args.links is None else args.links
    args.level = 0.1 if args.level is None else args.level
    args.level_domain = args.level_domain or "power"

    filt = _filter_from_args(args, args.fv)
    request = PlanRequest(
        f_v_hz=args.fv, order_k=args.order, filter=filt,
        suppression_level=args.level, suppression_domain=args.level_domain,
        f_adc_hz=args.adc, fp_margin=args.fp_margin,
    )
    plan = build_plan(request)
    notes = []
    if plan.f_o_hz < plan.f2_min_hz:
        notes.append(f"F_o = {plan.f_o_hz:.6g} Hz is below the minimum rate F2 = {plan.f2_min_hz:.6g} Hz")
    if args.paper_example:
        notes.extend(_paper_notes(plan, filt))
    inputs = {
        "f_v_hz": args.fv, "order_k": args.order, "links": filt.links,
        "time_constant_s": filt.time_constant_s, "suppression_level": args.level,
        "suppression_domain": args.level_domain, "f_adc_hz": args.adc,
        "fp_margin": args.fp_margin, "paper_example": bool(args.paper_example),
    }
    doc = {"inputs": inputs, "plan": plan.to_dict(), "notes": notes}
    if args.format == "csv":
        scalars = {k: v for k, v in doc["plan"].items() if k != "sweep"}
        return _csv(["field", "value"], scalars.items())
    if args.format == "human":
        return _human({"inputs": inputs,
                       "plan": {k: v for k, v in doc["plan"].items() if k != "sweep"},
                       "notes": notes})
    return _json(doc)


def cmd_sweep(args):
    params = PricingParams(args.order, args.fp, args.adc)
    lo, hi = args.n if args.n else (1, params.n_limit)
    points = sweep(params, lo, hi)
    if args.format == "csv":
        return _csv(SWEEP_HEADER, _sweep_rows(points))
    best = min(points, key=lambda p: (p.j, p.n))
    doc = {
        "inputs": {"order_k": args.order, "f_p_hz": args.fp, "f_adc_hz": args.adc,
                   "n_lo": lo, "n_hi": hi},
        "sweep": [asdict(p) for p in points],
        "notes": [f"argmin J over the range: N = {best.n}, J = {best.j:.12g}",
                  f"continuous minimiser over [1, N_m]: N* = {continuous_optimum(params):.6f}"],
    }
    if args.format == "human":
        return _csv(SWEEP_HEADER, _sweep_rows(points)).replace(",", "\t") + "\n".join(doc["notes"]) + "\n"
    return _json(doc)


def cmd_filter(args):
    if args.tau is None and args.f_half is None:
        raise _UsageError("filter requires --tau or --f-half")
    filt = _filter_from_args(args, None)
    f_half = filt.half_power_hz
    fmin = args.fmin if args.fmin is not None else f_half / 100.0
    fmax = args.fmax if args.fmax is not None else f_half * 100.0
    if not 0 < fmin < fmax:
        raise _UsageError("need 0 < --fmin < --fmax")
    freqs = np.geomspace(fmin, fmax, args.points)
    rows = [(f, power_response(filt, f), amplitude_response(filt, f)) for f in freqs]
    if args.format == "csv":
        return _csv(["f_hz", "power", "amplitude"], rows)
    doc = {
        "inputs": {"links": filt.links, "time_constant_s": filt.time_constant_s,
                   "level": args.level, "level_domain": args.level_domain},
        "half_power_hz": f_half,
        "cutoff_hz": solve_cutoff(filt, args.level, args.level_domain),
        "response": [{"f_hz": f, "power": p, "amplitude": a} for f, p, a in rows],
        "notes": [],
    }
    if args.format == "human":
        return _human(doc)
    return _json(doc)


def cmd_simulate(args):
    config = SimConfig(order_k=args.order, n=args.n, f_p_hz=args.fp, probe_freq_hz=args.probe,
                       alpha=args.alpha, phase_rad=args.phase, periods=args.periods, grid=args.grid)
    report = empirical_error(config)
    if args.residuals:
        trace = residual_trace(config)
        with open(args.residuals, "w", newline="") as fh:
            fh.write(_csv(["t", "v_est", "exact", "residual"], trace.tolist()))
    if args.format == "csv":
        return _csv(["r_empirical", "r_model", "x", "gap"],
                    [(report.r_empirical, report.r_model, report.x, report.gap)])
    doc = {"inputs": asdict(config), "report": asdict(report), "notes": []}
    if args.format == "human":
        return _human(doc)
    return _json(doc)


def _load_plan(path):
    with open(path) as fh:
        data = json.load(fh)
    return SamplingPlan.from_dict(data.get("plan", data))


def cmd_combine(args):
    plans = [_load_plan(p) for p in args.plans]
    combined = combine_plans(plans)
    if args.format == "csv":
        return _csv(["f_o_hz", "k_d"], [(combined.f_o_hz, combined.k_d)])
    doc = {"inputs": {"plans": list(args.plans)}, "combined": asdict(combined), "notes": []}
    if args.format == "human":
        return _human(doc)
    return _json(doc)


# --------------------------------------------------------------------------

class _UsageError(Exception):
    pass


def _add_output(p):
    p.add_argument("--format", choices=("json", "csv", "human"), default="json")
    p.add_argument("--out", metavar="PATH", help="write the document here instead of stdout")


def _add_filter_args(p, defaults=True):
    p.add_argument("--links", type=int, default=None if defaults else 2)
    p.add_argument("--tau", type=float, help="RC time constant in seconds")
    p.add_argument("--f-half", type=parse_frequency, help="half-power frequency (sets --tau)")
    p.add_argument("--level", type=float, default=None if defaults else 0.1)
    p.add_argument("--level-domain", choices=("power", "amplitude"), default=None if defaults else "power")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quantfreq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="optimal sampling plan for one derivative order")
    p.add_argument("--fv", type=parse_frequency, help="signal band edge F_v")
    p.add_argument("--order", type=int, help="derivative order k (default 1)")
    _add_filter_args(p)
    p.add_argument("--adc", type=parse_frequency, help="maximum ADC rate F_s")
    p.add_argument("--fp-margin", type=float, default=1.0)
    p.add_argument("--paper-example", action="store_true",
                   help="fill unset inputs with the published worked example and annotate deltas")
    _add_output(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("sweep", help="tabulate r, J2, J over N")
    p.add_argument("--fp", type=parse_frequency, required=True)
    p.add_argument("--adc", type=parse_frequency, required=True)
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--n", type=parse_range, help="N range LO..HI (default: full feasible range)")
    _add_output(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("filter", help="RC cascade response table and cutoff")
    _add_filter_args(p, defaults=False)
    p.add_argument("--fmin", type=parse_frequency)
    p.add_argument("--fmax", type=parse_frequency)
    p.add_argument("--points", type=int, default=41)
    _add_output(p)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("simulate", help="measure finite-difference error on a probe harmonic")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fp", type=parse_frequency, required=True)
    p.add_argument("--probe", type=parse_frequency, help="probe frequency (default: F_p)")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--periods", type=int, default=4)
    p.add_argument("--grid", type=int, default=4096)
    p.add_argument("--residuals", metavar="PATH", help="also write t,v_est,exact,residual CSV")
    _add_output(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("combine", help="merge plan JSON files (max F_o, min K_d)")
    p.add_argument("plans", nargs="+", metavar="PLAN_JSON")
    _add_output(p)
    p.set_defaults(func=cmd_combine)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except InfeasibleError as exc:
        print(f"quantfreq {args.command}: infeasible: {exc}", file=stderr)
        return 1
    except (_UsageError, ValueError) as exc:
        print(f"quantfreq {args.command}: error: {exc}", file=stderr)
        return 2
    except OSError as exc:
        print(f"quantfreq {args.command}: {exc}", file=stderr)
        return 2
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
