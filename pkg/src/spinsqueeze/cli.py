"""Command-line front end: run experiments and serialize results as CSV or schedule text.

Every subcommand is a thin shell over the library; nothing here computes
physics.  Exit codes: 0 success, 2 validation error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, load_config, parse_config, to_spec
from .experiments import (
    effective_counterpart,
    nc_convergence,
    oat_optimum,
    relative_error_curve,
    run_trace,
    scaling_fit,
    strength_divisor,
    tat_optimum,
    time_cost,
)
from .schedules import compile_scheme, delta_t_for, schedule_to_text
from .squeezing import SqueezingTrace


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def trace_csv(trace: SqueezingTrace) -> str:
    lines = ["t,xi2,jx,jy,jz"]
    for s in trace.samples:
        lines.append(
            ",".join(
                [_fmt(s.t), _fmt(s.xi2), _fmt(s.mean_spin[0]), _fmt(s.mean_spin[1]), _fmt(s.mean_spin[2])]
            )
        )
    return "\n".join(lines) + "\n"


def emit_trace_csv(trace: SqueezingTrace, destination) -> None:
    """Write the trace as CSV with LF terminators and 12 significant digits."""
    _write_text(destination, trace_csv(trace))


def error_curve_csv(curve) -> str:
    lines = ["t,relative_error"]
    for t, err in zip(curve.times, curve.relative_errors):
        lines.append(f"{_fmt(t)},{_fmt(err)}")
    return "\n".join(lines) + "\n"


def _write_text(destination, text: str) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    Path(destination).write_text(text, newline="\n")


def _emit(destination, text: str) -> None:
    if destination is None:
        sys.stdout.write(text)
    else:
        _write_text(destination, text)


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its fields")
    parser.add_argument("--scheme")
    parser.add_argument("--n-spins", type=int, dest="n_spins")
    parser.add_argument("--n-cycles", type=int, dest="n_cycles")
    parser.add_argument("--chi", type=float)
    parser.add_argument("--t-total", type=float, dest="t_total")
    parser.add_argument("--sampling")
    parser.add_argument("--order", type=int)
    parser.add_argument("--out")
    parser.add_argument("--format", dest="format")


def _merged_config(args: argparse.Namespace) -> RunConfig:
    document: dict = {}
    if args.config:
        cfg = load_config(args.config)
        document = {k: v for k, v in vars(cfg).items() if v is not None}
    for key in ("scheme", "n_spins", "n_cycles", "chi", "t_total", "sampling", "order", "out", "format"):
        value = getattr(args, key, None)
        if value is not None:
            document[key] = value
    return parse_config(document)


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    if config.format != "csv":
        raise ConfigError("simulate only emits csv; use the schedule subcommand for schedule-text")
    trace = run_trace(to_spec(config))
    _emit(config.out, trace_csv(trace))
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    if config.out is None:
        raise ConfigError("compare writes seq.csv/eff.csv/err.csv and needs --out DIR")
    spec_seq = to_spec(config)
    spec_eff = effective_counterpart(spec_seq)
    out_dir = Path(config.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    emit_trace_csv(run_trace(spec_seq), out_dir / "seq.csv")
    emit_trace_csv(run_trace(spec_eff), out_dir / "eff.csv")
    curve = relative_error_curve(spec_seq, spec_eff)
    _write_text(out_dir / "err.csv", error_curve_csv(curve))
    print(f"wrote {out_dir}/seq.csv, eff.csv, err.csv")
    return 0


def _cmd_converge(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    nc_list = [int(v) for v in args.nc_list.split(",")]
    spec = to_spec(config)
    rows = nc_convergence(config.scheme, config.n_spins, config.chi, spec.t_total, nc_list, config.order)
    lines = ["n_cycles,xi2_best_strobe,rel_error"]
    lines.extend(f"{r.n_cycles},{_fmt(r.xi2_best_strobe)},{_fmt(r.rel_error)}" for r in rows)
    _emit(config.out, "\n".join(lines) + "\n")
    return 0


def _cmd_scaling(args: argparse.Namespace) -> int:
    scheme = args.scheme or "ideal-TAT"
    n_list = [int(v) for v in args.n_list.split(",")]
    fit = scaling_fit(scheme, n_list, chi=args.chi or 1.0, order=args.order or 2)
    print(f"scheme={scheme} exponent={fit.exponent:.4f} intercept={fit.intercept:.4f} r2={fit.r_squared:.6f}")
    if args.out:
        lines = ["n,xi2_min"]
        for n in n_list:
            opt = tat_optimum(n) if scheme == "ideal-TAT" else oat_optimum(n)
            lines.append(f"{n},{_fmt(opt.xi2_min)}")
        _write_text(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_schedule(args: argparse.Namespace) -> int:
    config = _merged_config(args)
    spec = to_spec(config)
    delta_t = delta_t_for(config.scheme, spec.t_total, config.n_cycles, config.order)
    schedule = compile_scheme(config.scheme, delta_t, config.n_cycles, config.order)
    _emit(config.out, schedule_to_text(schedule))
    return 0


def _cmd_timecost(args: argparse.Namespace) -> int:
    n_spins = args.n_spins
    if n_spins is None:
        raise ConfigError("timecost needs --n-spins")
    chi = args.chi or 1.0
    lines = ["scheme,divisor,t_opt,total_time"]
    opt = tat_optimum(n_spins)
    for scheme in ("schemeA", "schemeB"):
        d = strength_divisor(scheme)
        lines.append(f"{scheme},{_fmt(d)},{_fmt(opt.t_opt / chi)},{_fmt(time_cost(scheme, n_spins, chi))}")
    ratio = strength_divisor("schemeB") / strength_divisor("schemeA")
    text = "\n".join(lines) + "\n" + f"# ratio schemeB/schemeA = {_fmt(ratio)}\n"
    _emit(args.out, text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinsqueeze",
        description="Simulate spin squeezing driven by compiled twisting pulse schedules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one experiment and emit its trace CSV")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="sequence vs effective dynamics plus error curve")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("converge", help="sweep the cycle count and tabulate convergence")
    _add_run_flags(p)
    p.add_argument("--nc-list", required=True, help="comma-separated cycle counts")
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("scaling", help="fit the spin-number scaling of the optimal squeezing")
    p.add_argument("--scheme")
    p.add_argument("--n-list", required=True, help="comma-separated spin numbers")
    p.add_argument("--chi", type=float)
    p.add_argument("--order", type=int)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_scaling)

    p = sub.add_parser("schedule", help="emit the compiled pulse schedule as text")
    _add_run_flags(p)
    p.set_defaults(func=_cmd_schedule)

    p = sub.add_parser("timecost", help="total time to optimal squeezing per scheme")
    p.add_argument("--n-spins", type=int, dest="n_spins")
    p.add_argument("--chi", type=float)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_timecost)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - boundary of the CLI
        print(f"runtime error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
