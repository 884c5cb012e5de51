"""Command-line interface: ``holderopt {run,verify,bench}``.

Exit codes: 0 success, 1 a verified bound failed, 2 configuration error,
3 the objective failed (non-finite value).
"""
import argparse
import csv
import sys

from . import analysis as an
from .baselines import grid_search, random_search
from .battery import run_battery
from .objectives import parse_objective
from .optimizer import AlgoParams, ObjectiveError, best_so_far, optimize
from .traceio import fmt, fmt_vec, format_report_table, write_reports_jsonl, write_trace_csv, write_trace_jsonl

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_OBJECTIVE = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


def _add_c0_modes(p, required=True):
    mode = p.add_mutually_exclusive_group(required=required)
    mode.add_argument("--c0", type=float, help="explicit score coefficient")
    mode.add_argument("--lambda0", type=float, help="minimax rule C0 = lambda0*C*V^(alpha-1)*T^((1-alpha)/n)")
    mode.add_argument("--alpha-prime", type=float, nargs="+", dest="alpha_prime",
                      help="misspecified rule C0 = T^((1-alpha')/n); bench accepts several")
    p.add_argument("--holder-c", type=float, dest="holder_c", help="Hölder constant (default: the objective's)")
    p.add_argument("--alpha", type=float, help="Hölder exponent (default: the objective's)")


def build_parser():
    parser = argparse.ArgumentParser(prog="holderopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="optimize one objective and write its trace")
    run.add_argument("--objective", required=True, help="name[:key=value,...]")
    run.add_argument("--dim", type=int, required=True)
    run.add_argument("--budget", type=int, required=True)
    _add_c0_modes(run)
    run.add_argument("--output", default="-", help="trace file ('-' = stdout)")
    run.add_argument("--format", choices=("csv", "jsonl"), default="csv")

    ver = sub.add_parser("verify", help="run the bound-verification battery")
    ver.add_argument("--budget", type=int, default=1024)
    ver.add_argument("--tolerance", type=float, default=1e-9,
                     help="relative slack for inequality checks; equality checks keep fixed tolerances")
    ver.add_argument("--inject-bad-split", action="store_true", dest="bad_split",
                     help="test hook: split the shortest edge instead of the longest")
    ver.add_argument("--output", help="also write reports as JSONL to this path")

    bench = sub.add_parser("bench", help="average-regret rate sweep over T = 2^k")
    bench.add_argument("--objective", required=True)
    bench.add_argument("--dim", type=int, required=True)
    _add_c0_modes(bench, required=False)
    bench.add_argument("--t-min", type=int, default=4, help="smallest exponent k (T = 2^k)")
    bench.add_argument("--t-max", type=int, default=14, help="largest exponent k")
    bench.add_argument("--baselines", action="store_true", help="also run grid and random search")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--output", help="write the (T, simple, average) table as CSV")
    return parser


def _params_factory(args, obj):
    """Return T -> AlgoParams for the chosen C0 mode, validating eagerly."""
    if args.c0 is not None:
        if args.c0 < 0:
            raise ConfigError("--c0 must be non-negative")
        return lambda T: AlgoParams.explicit(obj.n, T, args.c0)
    if args.alpha_prime is not None:
        for ap in args.alpha_prime:
            if not 0.0 < ap <= 1.0:
                raise ConfigError("--alpha-prime values must lie in (0, 1]")
        return lambda T, ap=args.alpha_prime[0]: AlgoParams.misspecified(obj.n, T, ap)
    lambda0 = 1.0 if args.lambda0 is None else args.lambda0
    C = obj.C if args.holder_c is None else args.holder_c
    alpha = obj.alpha if args.alpha is None else args.alpha
    if lambda0 <= 0 or C <= 0 or not 0.0 < alpha < 1.0:
        raise ConfigError("minimax rule needs lambda0 > 0, C > 0 and 0 < alpha < 1")
    return lambda T: AlgoParams.minimax(obj.n, T, lambda0, C, alpha)


def _objective(args):
    if args.dim < 1:
        raise ConfigError("--dim must be at least 1")
    try:
        return parse_objective(args.objective, args.dim)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_run(args) -> int:
    if args.budget < 1:
        raise ConfigError("--budget must be at least 1")
    if args.alpha_prime is not None and len(args.alpha_prime) != 1:
        raise ConfigError("run takes a single --alpha-prime value")
    obj = _objective(args)
    params = _params_factory(args, obj)(args.budget)
    trace = optimize(obj, params)
    writer = write_trace_csv if args.format == "csv" else write_trace_jsonl
    if args.output == "-":
        writer(trace, sys.stdout)
        info = sys.stderr
    else:
        with open(args.output, "w", newline="") as fh:
            writer(trace, fh)
        info = sys.stdout
    point, value = best_so_far(trace, trace.T)
    print(f"objective {obj.name}  n={obj.n}  T={trace.T}  C0={fmt(params.C0)}", file=info)
    print(f"best x = {fmt_vec(point)}  f = {fmt(value)}", file=info)
    if obj.known_min_value is not None:
        reg = an.regrets(trace)
        print(f"simple regret {fmt(reg.simple)}  average regret {fmt(reg.average)}", file=info)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.budget < 1:
        raise ConfigError("--budget must be at least 1")
    if args.tolerance < 0:
        raise ConfigError("--tolerance must be non-negative")
    reports = run_battery(T=args.budget, bad_split=args.bad_split, tolerance=args.tolerance)
    print(format_report_table(reports))
    if args.output:
        with open(args.output, "w") as fh:
            write_reports_jsonl(reports, fh)
    failed = [r.name for r in reports if not r.satisfied]
    if failed:
        print(f"FAILED {len(failed)} of {len(reports)} checks: {', '.join(failed)}")
        return EXIT_VIOLATION
    print(f"all {len(reports)} checks satisfied")
    return EXIT_OK


def _sweep(obj, make_params, Ts):
    rows = []
    for T in Ts:
        reg = an.regrets(optimize(obj, make_params(T)))
        rows.append((T, reg.simple, reg.average))
    return rows


def cmd_bench(args) -> int:
    if not 1 <= args.t_min <= args.t_max:
        raise ConfigError("need 1 <= --t-min <= --t-max")
    if args.t_max - args.t_min < 2:
        raise ConfigError("a rate fit needs at least three budgets")
    obj = _objective(args)
    if obj.known_min_value is None:
        raise ConfigError(f"{obj.name} has no known minimum; regret cannot be measured")
    Ts = [2**k for k in range(args.t_min, args.t_max + 1)]

    series = []  # (method, alpha_prime, rows)
    if args.alpha_prime is not None:
        _params_factory(args, obj)
        for ap in args.alpha_prime:
            series.append(("holder", ap, _sweep(obj, lambda T, ap=ap: AlgoParams.misspecified(obj.n, T, ap), Ts)))
    else:
        series.append(("holder", None, _sweep(obj, _params_factory(args, obj), Ts)))
    if args.baselines:
        series.append(("grid", None, [(T, *_simple_avg(grid_search(obj, T))) for T in Ts]))
        series.append(("random", None, [(T, *_simple_avg(random_search(obj, T, args.seed))) for T in Ts]))

    table = []
    for method, ap, rows in series:
        for T, simple, avg in rows:
            table.append((obj.name, method, "NA" if ap is None else fmt(ap), T, fmt(simple), fmt(avg)))
    header = ("objective", "method", "alpha_prime", "T", "simple", "average")
    if args.output:
        with open(args.output, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(table)
    else:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(table)

    for method, ap, rows in series:
        slope, intercept = an.rate_fit([(T, avg) for T, _, avg in rows])
        label = method if ap is None else f"{method} alpha'={fmt(ap)}"
        print(f"rate fit [{label}]: average regret slope {slope:.4f} intercept {intercept:.4f}")
    return EXIT_OK


def _simple_avg(trace):
    reg = an.regrets(trace)
    return reg.simple, reg.average


COMMANDS = {"run": cmd_run, "verify": cmd_verify, "bench": cmd_bench}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits with status 2 on bad flags
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"holderopt {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ObjectiveError as exc:
        print(f"holderopt {args.command}: objective failed: {exc}", file=sys.stderr)
        return EXIT_OBJECTIVE


if __name__ == "__main__":
    sys.exit(main())
