"""Command-line entry point: ``predint {ci,pi,coverage,diagnose}``.

Exit status is 0 on success, 2 on invalid arguments and 3 when an exact
computation would exceed its size limit.
"""
from __future__ import annotations

import argparse
import sys

from .errors import DomainError, ResourceLimitError
from .harness import (
    ProcessSpec,
    StudyConfig,
    check_exact_limits,
    exact_study,
    limit_diagnostic,
    simulate_study,
)
from .methods import CI_METHODS, PI_METHODS
from .moments import SampleSummary
from .output import (
    COLUMNS,
    DIAGNOSTIC_COLUMNS,
    coverage_rows,
    diagnostic_row,
    interval_row,
    render,
)
from .prediction import MeanSummary, Scale, fpc_factor

EXIT_OK, EXIT_INVALID, EXIT_LIMIT = 0, 2, 3


class UsageError(DomainError):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")


def _add_seed(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (default 0, with a notice)")
    p.add_argument("--threads", type=int, default=1, help="worker threads; output does not depend on it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="predint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ci = sub.add_parser("ci", help="confidence interval for the process rate p")
    ci.add_argument("--n", type=int, required=True, help="sample size")
    ci.add_argument("--y", type=int, required=True, help="successes in the sample")
    ci.add_argument("--alpha", type=float, default=0.05)
    ci.add_argument("--method", choices=tuple(CI_METHODS), default="wald")
    _add_format(ci)

    pi = sub.add_parser("pi", help="prediction interval for p_hat_N or xbar_N")
    pi.add_argument("--n", type=int, required=True, help="sample size")
    pi.add_argument("--y", type=int, help="successes in the sample (proportion methods)")
    pi.add_argument("--mean", type=float, help="sample mean (method 'mean')")
    pi.add_argument("--sd", type=float, help="sample standard deviation, n-1 divisor (method 'mean')")
    pi.add_argument("--N", dest="N", type=int, help="representative sample size")
    pi.add_argument("--alpha", type=float, default=0.05)
    pi.add_argument("--method", choices=tuple(PI_METHODS), default="wald-fpc")
    pi.add_argument("--snap", action="store_true", help="round endpoints outward to multiples of 1/N")
    _add_format(pi)

    cov = sub.add_parser("coverage", help="exact or Monte Carlo coverage study")
    cov.add_argument("--mode", choices=("monte-carlo", "exact"), default="monte-carlo")
    cov.add_argument("--process", choices=("bernoulli", "normal"), default="bernoulli")
    cov.add_argument("--p", type=float, help="bernoulli rate")
    cov.add_argument("--mu", type=float, help="normal mean")
    cov.add_argument("--sigma", type=float, help="normal standard deviation")
    cov.add_argument("--N", dest="N", type=_int_list, required=True,
                     help="representative sample size; a comma-separated list runs one study per value")
    cov.add_argument("--n", type=int, required=True)
    cov.add_argument("--alpha", type=float, default=0.05)
    cov.add_argument("--replicates", type=int, default=10_000)
    cov.add_argument("--methods", type=_str_list, default=["wald-fpc"],
                     help="comma-separated, from: " + ", ".join((*CI_METHODS, *PI_METHODS)))
    cov.add_argument("--snap", action="store_true")
    cov.add_argument("--all-targets", action="store_true",
                     help="score every proportion method against both p and p_hat_N")
    _add_seed(cov)
    _add_format(cov)

    diag = sub.add_parser("diagnose", help="compare the standardized p_hat_n - p_hat_N with N(0,1)")
    diag.add_argument("--p", type=float, required=True)
    diag.add_argument("--N", dest="N", type=int, required=True)
    diag.add_argument("--n", type=int, required=True)
    diag.add_argument("--replicates", type=int, default=10_000)
    diag.add_argument("--scale", choices=[s.value for s in Scale] + ["all"], default="true-p")
    _add_seed(diag)
    _add_format(diag)
    return parser


def _seed(args) -> int:
    if args.seed is None:
        print("notice: no --seed given, using seed 0", file=sys.stderr)
        return 0
    return args.seed


def cmd_ci(args) -> str:
    iv = CI_METHODS[args.method](SampleSummary(args.n, args.y), None, args.alpha)
    return render([interval_row(iv, n=args.n)], COLUMNS, args.format)


def cmd_pi(args) -> str:
    method = PI_METHODS[args.method]
    if method.needs_N and args.N is None:
        raise UsageError(f"method {args.method!r} requires --N")
    if not method.needs_N and args.N is not None:
        raise UsageError(f"method {args.method!r} does not depend on N; drop --N")
    if args.snap and not (method.needs_N and method.binary):
        raise UsageError("--snap needs a proportion method that takes --N")
    if method.binary:
        if args.y is None or args.mean is not None or args.sd is not None:
            raise UsageError(f"method {args.method!r} takes --y, not --mean/--sd")
        summary = SampleSummary(args.n, args.y)
    else:
        if args.mean is None or args.sd is None or args.y is not None:
            raise UsageError("method 'mean' takes --mean and --sd, not --y")
        summary = MeanSummary(args.n, args.mean, args.sd)
    iv = method(summary, args.N, args.alpha)
    if args.snap:
        iv = iv.snapped(args.N)
    fpc = fpc_factor(args.n, args.N) if args.N is not None else None
    return render([interval_row(iv, N=args.N, n=args.n, fpc_factor=fpc)], COLUMNS, args.format)


def _process(args) -> ProcessSpec:
    if args.process == "bernoulli":
        if args.p is None:
            raise UsageError("bernoulli process requires --p")
        return ProcessSpec.bernoulli(args.p)
    if args.mu is None or args.sigma is None:
        raise UsageError("normal process requires --mu and --sigma")
    return ProcessSpec.normal(args.mu, args.sigma)


def cmd_coverage(args) -> str:
    process = _process(args)
    seed = _seed(args) if args.mode == "monte-carlo" else (args.seed or 0)
    if not args.N:
        raise UsageError("--N needs at least one value")
    configs = [
        StudyConfig(process, N, args.n, args.alpha, args.replicates, seed, tuple(args.methods),
                    args.snap, args.all_targets)
        for N in args.N
    ]
    for cfg in configs:
        cfg.validate()
    rows = []
    if args.mode == "exact":
        if not process.binary:
            raise UsageError("exact mode needs a bernoulli process")
        for cfg in configs:
            check_exact_limits(cfg)
        for cfg in configs:
            rows.extend(coverage_rows(exact_study(cfg)))
    else:
        for cfg in configs:
            rows.extend(coverage_rows(simulate_study(cfg, args.threads)))
    return render(rows, COLUMNS, args.format)


def cmd_diagnose(args) -> str:
    seed = _seed(args)
    cfg = StudyConfig(ProcessSpec.bernoulli(args.p), args.N, args.n, replicates=args.replicates, seed=seed)
    scales = list(Scale) if args.scale == "all" else [Scale(args.scale)]
    rows = [
        diagnostic_row(limit_diagnostic(cfg, s, args.threads), args.p, args.N, args.n, seed)
        for s in scales
    ]
    return render(rows, DIAGNOSTIC_COLUMNS, args.format)


COMMANDS = {"ci": cmd_ci, "pi": cmd_pi, "coverage": cmd_coverage, "diagnose": cmd_diagnose}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be >= 1")
    try:
        out = COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"predint {args.command}: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except DomainError as exc:
        print(f"predint {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
