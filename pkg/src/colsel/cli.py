"""Command-line interface.

Subcommands:
  select  run the greedy selection on a matrix and write a report
  verify  recheck a report against its matrix from scratch
  bench   compare the greedy selector against naive baselines

Exit codes: 0 success (select: certified; verify: clean), 1 usage or I/O
errors, 2 certification or verification failure.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from .baselines import condition_number, first_r_select, random_subset_select
from .errors import ColselError
from .generators import FAMILIES, GeneratorSpec, generate
from .matio import (
    load_matrix,
    load_report,
    dumps_json,
    report_to_csv,
    report_to_json,
    violations_summary,
)
from .linalg import operator_norm_sq
from .selector import (
    SelectorConfig,
    compute_budget,
    rebuild_report,
    run_selection,
    verify_average_bound,
    verify_envelopes,
)

TRAJECTORY_AGREEMENT_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage errors instead of argparse's 2
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _add_matrix_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", metavar="PATH", help="matrix file (csv or MatrixMarket)")
    parser.add_argument("--generate", metavar="FAMILY", choices=FAMILIES,
                        help="synthesize a matrix instead of reading one")
    parser.add_argument("--n", type=int, default=None, help="generated row count")
    parser.add_argument("--p", type=int, default=None, help="generated column count")
    parser.add_argument("--seed", type=int, default=0, help="generator seed")
    parser.add_argument("--theta", type=float, default=None,
                        help="pair angle for near_parallel_pair (radians)")
    parser.add_argument("--distinct", type=int, default=None,
                        help="distinct column count for duplicated_columns")
    parser.add_argument("--strength", type=float, default=None,
                        help="common-direction strength for spiked")


def _matrix_from_args(args) -> np.ndarray:
    if (args.input is None) == (args.generate is None):
        raise _UsageError("exactly one of --input or --generate is required")
    if args.input is not None:
        return load_matrix(args.input)
    if args.n is None or args.p is None:
        raise _UsageError("--generate needs --n and --p")
    params = {}
    if args.theta is not None:
        params["theta"] = args.theta
    if args.distinct is not None:
        params["distinct"] = args.distinct
    if args.strength is not None:
        params["strength"] = args.strength
    return generate(GeneratorSpec(args.generate, args.n, args.p, args.seed, params))


def _check_epsilon(value: float) -> float:
    if not 0.0 < value < 1.0:
        raise _UsageError("epsilon must be in (0,1)")
    return value


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _selector_config(args) -> SelectorConfig:
    return SelectorConfig(
        auto_normalize=args.auto_normalize,
        fast_spectral_path=args.fast_path,
        cert_tol=args.cert_tol,
    )


def cmd_select(args) -> int:
    x = _matrix_from_args(args)
    epsilon = _check_epsilon(args.epsilon)
    report = run_selection(x, epsilon, _selector_config(args))
    text = report_to_csv(report) if args.format == "csv" else report_to_json(report)
    _write_output(text, args.output)
    if not report.certified:
        print("certification failed: final spectrum outside the target interval",
              file=sys.stderr)
        return 2
    return 0


def cmd_verify(args) -> int:
    x = _matrix_from_args(args)
    report = load_report(args.report)
    rebuilt = rebuild_report(report, x)
    env = verify_envelopes(rebuilt)
    avg = verify_average_bound(rebuilt, x)
    problems = violations_summary(env, avg)
    eps = report.params.epsilon
    lam_min, lam_max = rebuilt.final_extremes
    if lam_min < 1.0 - eps - report.cert_tol or lam_max > 1.0 + eps + report.cert_tol:
        problems.append(
            f"final extremes ({lam_min:.12g}, {lam_max:.12g}) outside "
            f"[{1 - eps:.12g}, {1 + eps:.12g}]"
        )
    if len(rebuilt.trajectory) != len(report.trajectory):
        problems.append(
            f"report has {len(report.trajectory)} trajectory steps, "
            f"recomputation has {len(rebuilt.trajectory)}"
        )
    else:
        for i, (got, want) in enumerate(zip(report.trajectory, rebuilt.trajectory)):
            dev = max(abs(a - b) for a, b in zip(got, want))
            if dev > TRAJECTORY_AGREEMENT_TOL:
                problems.append(
                    f"reported trajectory disagrees with recomputation at step "
                    f"{i + 1} (max deviation {dev:.3e})"
                )
                break
    fresh = compute_budget(eps, x.shape[1], operator_norm_sq(x))
    if fresh.budget != len(report.selected):
        problems.append(
            f"selected count {len(report.selected)} differs from the "
            f"recomputed budget {fresh.budget}"
        )
    if problems:
        for line in problems:
            print(line)
        return 2
    print(
        f"verified: {len(rebuilt.trajectory)} steps, "
        f"extremes ({lam_min:.12g}, {lam_max:.12g}), certified"
    )
    return 0


def _bench_rows(x, epsilon, trials, seed, config):
    t0 = time.perf_counter()
    report = run_selection(x, epsilon, config)
    greedy_s = time.perf_counter() - t0
    lam_min, lam_max = report.final_extremes
    rows = [
        {
            "method": "greedy",
            "trials": 1,
            "budget": report.params.budget,
            "envelope_scale": report.params.envelope_scale,
            "lambda_min": lam_min,
            "lambda_max": lam_max,
            "condition_number": condition_number(lam_min, lam_max),
            "condition_best": condition_number(lam_min, lam_max),
            "condition_worst": condition_number(lam_min, lam_max),
            "certified": report.certified,
            "seconds": greedy_s,
        }
    ]
    budget = report.params.budget
    t0 = time.perf_counter()
    first = first_r_select(x, budget)
    first_s = time.perf_counter() - t0
    rows.append(
        {
            "method": "first_R",
            "trials": 1,
            "budget": budget,
            "envelope_scale": report.params.envelope_scale,
            "lambda_min": first.extremes[0],
            "lambda_max": first.extremes[1],
            "condition_number": first.condition_number,
            "condition_best": first.condition_number,
            "condition_worst": first.condition_number,
            "certified": None,
            "seconds": first_s,
        }
    )
    t0 = time.perf_counter()
    random_results = random_subset_select(x, budget, seed, trials)
    random_s = time.perf_counter() - t0
    conds = np.array([r.condition_number for r in random_results])
    rows.append(
        {
            "method": "uniform_random",
            "trials": trials,
            "budget": budget,
            "envelope_scale": report.params.envelope_scale,
            "lambda_min": float(np.median([r.extremes[0] for r in random_results])),
            "lambda_max": float(np.median([r.extremes[1] for r in random_results])),
            "condition_number": float(np.median(conds)),
            "condition_best": float(np.min(conds)),
            "condition_worst": float(np.max(conds)),
            "certified": None,
            "seconds": random_s,
        }
    )
    return rows


_BENCH_COLUMNS = (
    "method",
    "trials",
    "budget",
    "envelope_scale",
    "lambda_min",
    "lambda_max",
    "condition_number",
    "condition_best",
    "condition_worst",
    "certified",
    "seconds",
)


def _bench_csv(rows) -> str:
    def cell(v):
        if v is None:
            return ""
        if isinstance(v, bool):
            return str(v).lower()
        if isinstance(v, float):
            return "inf" if v == float("inf") else format(v, ".17g")
        return str(v)

    lines = [",".join(_BENCH_COLUMNS)]
    for row in rows:
        lines.append(",".join(cell(row[c]) for c in _BENCH_COLUMNS))
    return "\n".join(lines) + "\n"


def cmd_bench(args) -> int:
    x = _matrix_from_args(args)
    epsilon = _check_epsilon(args.epsilon)
    rows = _bench_rows(x, epsilon, args.trials, args.seed, _selector_config(args))
    text = _bench_csv(rows) if args.format == "csv" else dumps_json(rows)
    _write_output(text, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="colsel", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"colsel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_select = sub.add_parser("select", help="run the greedy selection")
    _add_matrix_source(p_select)
    p_select.add_argument("--epsilon", type=float, required=True,
                          help="conditioning target in (0,1)")
    p_select.add_argument("--auto-normalize", action="store_true",
                          help="rescale columns to unit norm instead of failing")
    p_select.add_argument("--fast-path", action="store_true",
                          help="update spectra via the secular solver instead of "
                               "dense recomputation each step")
    p_select.add_argument("--cert-tol", type=float, default=1e-8,
                          help="certification tolerance (default 1e-8)")
    p_select.add_argument("--output", metavar="PATH", default=None)
    p_select.add_argument("--format", choices=("json", "csv"), default="json")
    p_select.set_defaults(func=cmd_select)

    p_verify = sub.add_parser("verify", help="recheck a selection report")
    p_verify.add_argument("--report", metavar="PATH", required=True,
                          help="json report produced by select")
    _add_matrix_source(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="compare against naive baselines")
    _add_matrix_source(p_bench)
    p_bench.add_argument("--epsilon", type=float, required=True)
    p_bench.add_argument("--trials", type=int, default=100,
                         help="uniform-random trials (default 100)")
    p_bench.add_argument("--auto-normalize", action="store_true")
    p_bench.add_argument("--fast-path", action="store_true")
    p_bench.add_argument("--cert-tol", type=float, default=1e-8)
    p_bench.add_argument("--output", metavar="PATH", default=None)
    p_bench.add_argument("--format", choices=("json", "csv"), default="json")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ColselError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
