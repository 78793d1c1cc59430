"""Command-line entry point: ``oversmooth {table1,table2,solve,check,aux-diagnostics,plot-data}``."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import auxiliary
from .checks import run_invariant_suite
from .experiments import (TABLE1_LADDER, TABLE2_LADDER, ConfigError, ExperimentConfig,
                          plot_data, run_table1, run_table2)
from .model import MODEL_COEFFICIENT, MODEL_KAPPA, MODEL_N, MODEL_Q, MODEL_RHO, generate_noise
from .param_choice import APriori, Discrepancy, choose_apriori, choose_discrepancy
from .solver import minimize_tikhonov

EXIT_OK, EXIT_PROPERTY, EXIT_CONFIG = 0, 1, 2


def _floats(text):
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("problem")
    g.add_argument("--n", type=int, default=MODEL_N, help="truncation dimension N")
    g.add_argument("--q", type=float, default=MODEL_Q, help="exponent of ln n in the exact solution")
    g.add_argument("--source-kappa", type=float, default=MODEL_KAPPA,
                   help="kappa of the logarithmic index function")
    g.add_argument("--rho", type=float, default=MODEL_RHO, help="radius of the domain ball")
    g.add_argument("--coefficient", type=float, default=MODEL_COEFFICIENT,
                   help="linear coefficient of the forward map")
    r = common.add_argument_group("parameter choice")
    r.add_argument("--rule", choices=["apriori", "discrepancy"])
    r.add_argument("--kappa", type=float, default=2.0, help="a priori exponent: alpha = c0 delta^kappa")
    r.add_argument("--c0", type=float, default=1.0)
    r.add_argument("--b", type=float, default=4.0, help="discrepancy factor")
    r.add_argument("--theta", type=float, default=10.0, help="grid ratio of the sequential search")
    r.add_argument("--alpha0", type=float, default=1.0, help="initial alpha of the sequential search")
    r.add_argument("--max-steps", type=int, default=60)
    o = common.add_argument_group("run")
    o.add_argument("--seeds", type=_ints, default=[0, 1, 2, 3, 4], help="comma-separated seeds")
    o.add_argument("--delta-ladder", type=_floats, help="comma-separated, strictly decreasing")
    o.add_argument("--noise", choices=["uniform", "signs"], default="signs",
                   help="noise distribution (both satisfy |Delta_n| <= delta/sqrt(N))")
    o.add_argument("--format", choices=["csv", "markdown"], default="csv")
    o.add_argument("--out", help="output file (default: stdout)")

    parser = argparse.ArgumentParser(prog="oversmooth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("table1", parents=[common], help="a priori choice alpha = c0 delta^kappa")
    sub.add_parser("table2", parents=[common], help="sequential discrepancy principle")
    p_plot = sub.add_parser("plot-data", parents=[common], help="(delta, error) pairs")
    p_plot.add_argument("--table", choices=["1", "2"], default="1")
    p_solve = sub.add_parser("solve", parents=[common], help="one regularized solve")
    p_solve.add_argument("--delta", type=float, default=1e-3)
    p_solve.add_argument("--alpha", type=float, help="explicit alpha (overrides --rule)")
    p_check = sub.add_parser("check", parents=[common], help="run the invariant suite")
    p_check.add_argument("--quick", action="store_true", help="N = 50")
    p_aux = sub.add_parser("aux-diagnostics", parents=[common], help="rate functions over an alpha grid")
    p_aux.add_argument("--delta", type=float, default=1e-3)
    p_aux.add_argument("--alphas", type=_floats, default=[10.0**-k for k in range(1, 11)])
    return parser


def _rule(args, default):
    name = args.rule or default
    if name == "apriori":
        return APriori(args.c0, args.kappa)
    return Discrepancy(args.b, args.theta, args.alpha0, args.max_steps)


def _config(args, default_rule, default_ladder) -> ExperimentConfig:
    n = 50 if getattr(args, "quick", False) else args.n
    return ExperimentConfig(
        N=n,
        delta_ladder=tuple(args.delta_ladder or default_ladder),
        rule=_rule(args, default_rule),
        seeds=tuple(args.seeds),
        output_format=args.format,
        output_path=args.out,
        q=args.q, kappa=args.source_kappa, rho=args.rho, coefficient=args.coefficient,
        noise=args.noise,
    )


def _emit(text: str, path) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _solve(args, cfg: ExperimentConfig) -> str:
    p = cfg.problem()
    sample = generate_noise(p, args.delta, cfg.seeds[0], cfg.noise)
    if args.alpha is not None:
        res = minimize_tikhonov(p, sample.data, args.alpha)
    elif isinstance(cfg.rule, Discrepancy):
        res = choose_discrepancy(p, sample, cfg.rule).result
    else:
        res = minimize_tikhonov(p, sample.data, choose_apriori(args.delta, cfg.rule, p.degree_a))
    errs = res.error_norms(p)
    fields = {
        "delta": args.delta, "alpha": res.alpha, "misfit": res.misfit, "penalty": res.penalty,
        "tikhonov_value": res.tikhonov_value, "error": errs["l2"],
        "error_minus_a": errs["minus_a"], "error_one": errs["one"],
    }
    if cfg.output_format == "csv":
        return ",".join(fields) + "\n" + ",".join("%.6e" % v for v in fields.values()) + "\n"
    return "".join(f"| {k} | {'%.6e' % v} |\n" for k, v in fields.items())


def _aux(args, cfg: ExperimentConfig, path) -> None:
    p = cfg.problem()
    sample = generate_noise(p, args.delta, cfg.seeds[0], cfg.noise)
    rows = []
    for alpha in args.alphas:
        diag = auxiliary.rate_functions(p, alpha)
        bound = diag.f9 + diag.K2 * args.delta / alpha**p.rate_exponent
        u = minimize_tikhonov(p, sample.data, alpha).u
        rows.append(auxiliary.diagnostics_row(diag, bound, float(np.linalg.norm(u - p.exact_solution))))
    if path:
        auxiliary.write_diagnostics_csv(rows, path)
    else:
        sys.stdout.write(",".join(auxiliary.CSV_COLUMNS) + "\n")
        for row in rows:
            sys.stdout.write(",".join("%.6e" % row[c] for c in auxiliary.CSV_COLUMNS) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "table1":
            cfg = _config(args, "apriori", TABLE1_LADDER)
            _emit(run_table1(cfg).render(cfg.output_format), cfg.output_path)
        elif args.command == "table2":
            cfg = _config(args, "discrepancy", TABLE2_LADDER)
            _emit(run_table2(cfg).render(cfg.output_format), cfg.output_path)
        elif args.command == "plot-data":
            if args.table == "1":
                cfg = _config(args, "apriori", TABLE1_LADDER)
                table = run_table1(cfg)
            else:
                cfg = _config(args, "discrepancy", TABLE2_LADDER)
                table = run_table2(cfg)
            _emit(plot_data(table).render(cfg.output_format), cfg.output_path)
        elif args.command == "solve":
            cfg = _config(args, "apriori", TABLE1_LADDER)
            _emit(_solve(args, cfg), cfg.output_path)
        elif args.command == "aux-diagnostics":
            cfg = _config(args, "apriori", TABLE1_LADDER)
            _aux(args, cfg, cfg.output_path)
        elif args.command == "check":
            cfg = _config(args, "apriori", TABLE1_LADDER)
            report = run_invariant_suite(cfg, seed=cfg.seeds[0])
            for r in report.results:
                print(f"{'PASS' if r.passed else 'FAIL'} {r.module}.{r.name}: {r.detail}", file=sys.stderr)
            _emit(report.to_json() + "\n", cfg.output_path)
            return EXIT_OK if report.ok else EXIT_PROPERTY
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
