"""Command-line front end: ``run``, ``sweep``, ``costs`` and ``verify``.

Exit codes: 0 success, 1 internal error or failed verification, 2 invalid
flags. ``GROVER_THREADS`` caps the number of sweep workers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields

from . import costs
from .amplify import RunConfig, RunReport, run
from .diffusion import PartitionSpec, composite_recurrence
from .reference import MAX_PRODUCT_QUBITS, verify_equivalence


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class SweepRow:
    n: int
    N: int
    mode: str
    eta: int
    effective_alpha: float
    repetitions: int
    queries_sim: int
    queries_analytic: float
    nonquery_sim: int
    nonquery_analytic: float
    uts_measured: float
    uts_predicted: float
    success_probability: float
    seed: int


SWEEP_FIELDS = [f.name for f in fields(SweepRow)]


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _target(text: str):
    if text == "random":
        return "random"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an index or 'random', got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"target must be >= 0, got {value}")
    return value


def _reps(text: str):
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"repetitions must be >= 0, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {text}")
    return value


def _partition_spec(args, mode: str):
    if mode != "improved":
        return None
    if (args.eta is None) == (args.alpha is None):
        raise UsageError("improved mode needs exactly one of --eta / --alpha")
    if args.eta is not None:
        return PartitionSpec.explicit_eta(args.eta)
    return PartitionSpec.from_alpha(args.alpha)


def _add_partition_flags(p):
    p.add_argument("--eta", type=int, help="number of equal qubit sets")
    p.add_argument("--alpha", type=float, help="set size exponent (> 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partial-grover", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="simulate one search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", type=_target, default="random")
    p.add_argument("--mode", choices=["standard", "improved"], default="standard")
    _add_partition_flags(p)
    p.add_argument("--reps", type=_reps, default="auto")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--k-query", type=float, default=0.0, help="query cost in units of n ops")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--paper-convention", action="store_true",
                   help="leave the unpaired final U out of the ledger")
    p.add_argument("--timing", action="store_true",
                   help="record wall time (makes the JSON non-reproducible)")

    p = sub.add_parser("sweep", help="run a range of register sizes and write CSV")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--n-step", type=int, default=1)
    p.add_argument("--modes", default="standard,improved")
    _add_partition_flags(p)
    p.add_argument("--target", type=_target, default="random")
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--out", help="CSV path (default stdout)")

    p = sub.add_parser("costs", help="analytic operation counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-query", type=float, default=1.0)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=float)
    g.add_argument("--optimal", action="store_true")

    p = sub.add_parser("verify", help="check fast kernels against dense matrices")
    p.add_argument("--max-n", type=int, default=MAX_PRODUCT_QUBITS)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=_seed, default=0)
    return parser


def cmd_run(args, out=None) -> int:
    out = out or sys.stdout
    config = RunConfig(
        n_qubits=args.n,
        target=args.target,
        mode=args.mode,
        partition_spec=_partition_spec(args, args.mode),
        repetitions=args.reps,
        seed=args.seed,
        query_cost_K=args.k_query,
        paper_convention=args.paper_convention,
    )
    report = run(config)
    text = json.dumps(report.as_dict(timing=args.timing), indent=2) + "\n"
    summary = _summary(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(summary, file=out)
    else:
        out.write(text)
        print(summary, file=sys.stderr)
    return 0


def _summary(report: RunReport) -> str:
    led = report.reported_ledger
    return (
        f"n={report.config.n_qubits} mode={report.config.mode} t={report.target} "
        f"U_ts={report.measured_uts:.10g} reps={report.repetitions_used} "
        f"P={report.success_probability:.10f} queries={led.queries} nonquery={led.nonquery_ops}"
    )


def sweep_row(n: int, mode: str, spec, target, seed: int) -> SweepRow:
    config = RunConfig(n_qubits=n, target=target, mode=mode, partition_spec=spec, seed=seed)
    report = run(config)
    pred = report.predicted
    if mode == "improved":
        part = config.partition
        eta, alpha = part.eta, part.effective_alpha
        if "queries" in pred:
            q_an, nq_an = pred["queries"], pred["nonquery_ops"]
        else:
            summary = costs.analytic_totals_improved(n, alpha)
            q_an, nq_an = summary.queries, summary.nonquery_ops
        uts_pred = pred.get("uts_lower_bound") or composite_recurrence(part)
    else:
        eta, alpha = 1, n / math.log2(n)
        q_an, nq_an = pred["queries"], pred["nonquery_ops"]
        uts_pred = pred["uts_lower_bound"]
    return SweepRow(
        n=n,
        N=1 << n,
        mode=mode,
        eta=eta,
        effective_alpha=float(alpha),
        repetitions=report.repetitions_used,
        queries_sim=report.ledger.queries,
        queries_analytic=float(q_an),
        nonquery_sim=report.ledger.nonquery_ops,
        nonquery_analytic=float(nq_an),
        uts_measured=float(report.measured_uts),
        uts_predicted=float(uts_pred),
        success_probability=float(report.success_probability),
        seed=seed,
    )


def _workers() -> int:
    env = os.environ.get("GROVER_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def cmd_sweep(args, out=None) -> int:
    out = out or sys.stdout
    if args.n_step < 1:
        raise UsageError("--n-step must be >= 1")
    sizes = list(range(args.n_min, args.n_max + 1, args.n_step))
    if not sizes:
        raise UsageError(f"empty range {args.n_min}..{args.n_max}")
    if sizes[0] < 2:
        raise UsageError("--n-min must be >= 2")
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    if not modes or any(m not in ("standard", "improved") for m in modes):
        raise UsageError(f"--modes must list standard and/or improved, got {args.modes!r}")
    jobs = []
    for n in sizes:
        for mode in modes:
            spec = _partition_spec(args, mode)
            # validate everything before any simulation starts
            RunConfig(n_qubits=n, target=args.target, mode=mode, partition_spec=spec, seed=args.seed)
            jobs.append((n, mode, spec))
    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        rows = list(pool.map(lambda job: sweep_row(*job, args.target, args.seed), jobs))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_FIELDS)
    for row in rows:
        writer.writerow([_fmt(v) for v in astuple(row)])
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
        print(f"wrote {len(rows)} rows to {args.out}", file=out)
    else:
        out.write(buf.getvalue())
    return 0


def cmd_costs(args, out=None) -> int:
    out = out or sys.stdout
    n, K = args.n, args.k_query
    if n < 4:
        raise UsageError(f"--n must be >= 4, got {n}")
    if K < 0 or (args.optimal and K <= 0):
        raise UsageError(f"--k-query must be positive, got {K}")
    if args.optimal:
        alpha = costs.optimal_alpha(n, K)
        print(f"optimal alpha: {alpha:.6f}", file=out)
    else:
        alpha = args.alpha
        if not alpha > 1:
            raise UsageError(f"--alpha must be > 1, got {alpha}")
    std = costs.analytic_totals_standard(n, K)
    print(f"n={n} N=2^{n} K={K:g} alpha={alpha:.6f}", file=out)
    print(f"{'':12}{'queries':>16}{'nonquery':>18}{'total':>18}", file=out)
    print(f"{'standard':12}{std.queries:16.6g}{std.nonquery_ops:18.6g}"
          f"{std.total_ops_with_query_cost:18.6g}", file=out)
    if alpha > 1:
        imp = costs.analytic_totals_improved(n, alpha, K)
        print(f"{'improved':12}{imp.queries:16.6g}{imp.nonquery_ops:18.6g}"
              f"{imp.total_ops_with_query_cost:18.6g}", file=out)
        print(f"{'bounds':12}{imp.query_bound:16.6g}{imp.nonquery_bound:18.6g}", file=out)
        print(f"eta={imp.params['eta']:.4f}  U/U-dagger ops={imp.components['u_and_u_dagger']:.6g}"
              f"  zero-inversion ops={imp.components['zero_inversion']:.6g}", file=out)
    else:
        print("improved: alpha <= 1, no valid partition", file=out)
    print(f"reduction factor: {costs.reduction_factor(n):.4f}", file=out)
    for warning in costs.alpha_warnings(n, alpha):
        print(f"warning: {warning}", file=out)
    return 0


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    if not 2 <= args.max_n <= MAX_PRODUCT_QUBITS:
        raise UsageError(f"--max-n must be in [2, {MAX_PRODUCT_QUBITS}], got {args.max_n}")
    if args.trials < 1 or not args.tol > 0:
        raise UsageError("--trials must be >= 1 and --tol > 0")
    report = verify_equivalence(args.max_n, args.tol, args.trials, args.seed)
    for name, dev in report.max_by_operator().items():
        status = "ok" if dev <= args.tol else "FAIL"
        print(f"{name:34} max_abs_dev={dev:.3e} {status}", file=out)
    bad = report.first_failure
    if bad is not None:
        print(
            f"verification failed: {bad.operator} n={bad.n} {bad.detail} "
            f"input={bad.worst_input} deviation={bad.max_abs:.3e}",
            file=sys.stderr,
        )
        return 1
    return 0


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "costs": cmd_costs, "verify": cmd_verify}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
