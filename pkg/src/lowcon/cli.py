"""Command-line front end.

Subcommands: simulate (the synthetic grid), emse (real-data empirical MSE),
toy (the one-predictor study), diagnose (theory checkers on one seeded
draw), and olhd (print a low-correlation design). Exit codes: 0 success,
2 configuration error, 3 data error, 4 numerical failure after retries.

The environment variable LOWCON_OUTPUT_DIR, when set, redirects every output
file into that directory (basenames preserved); everything else comes from
the config file or flags.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .designs import generate_olhd
from .exceptions import ConfigError, DataError
from .harness import (
    diagnose,
    ingest_csv,
    load_config,
    run_emse,
    run_simulation,
    toy_config,
    write_result_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


def _resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    out_dir = os.environ.get("LOWCON_OUTPUT_DIR")
    if out_dir:
        return Path(out_dir) / Path(path).name
    return Path(path)


def _emit(result, out: Path | None) -> int:
    for row in result.rows:
        print(
            f"{row.method:7s} dist={row.dist} misspec={row.misspec} r={row.r:5d} "
            f"mse={row.mse:.6g} log_mse={row.log_mse:.4f} "
            f"median_kappa={row.median_kappa:.4g} reps={row.replicate_count}"
        )
    if out is not None:
        write_result_csv(result.rows, out)
        print(f"wrote {out}")
    if result.failed_cells:
        print(f"failed cells: {result.failed_cells}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_simulate(args) -> int:
    config = load_config(args.config)
    out = _resolve_out(args.out or config.output_path or "lowcon_results.csv")
    return _emit(run_simulation(config), out)


def _cmd_emse(args) -> int:
    config = load_config(args.config)
    predictors = [c.strip() for c in args.predictors.split(",") if c.strip()]
    if not predictors:
        raise ConfigError("--predictors must name at least one column")
    dataset = ingest_csv(args.data, args.response, predictors)
    if dataset.dropped_rows:
        print(f"dropped {dataset.dropped_rows} incomplete rows")
    out = _resolve_out(args.out or config.output_path)
    return _emit(run_emse(dataset, config), out)


def _cmd_toy(args) -> int:
    config = toy_config(
        r_list=(args.r,), replicates=args.replicates, seed=args.seed
    )
    out = _resolve_out(args.out)
    return _emit(run_simulation(config), out)


def _cmd_diagnose(args) -> int:
    config = load_config(args.config)
    for e in diagnose(config, alpha=args.alpha, sigma2=args.sigma2):
        line = (
            f"{e.method:7s} r={e.r} kappa={e.kappa_sub:.4g} "
            f"worst_case={e.worst_case_bound:.6g}"
        )
        if e.method == "LOWCON":
            line += (
                f" s1(D)={e.s1_perturbation:.4g} sp(L)={e.sp_design:.4g} "
                f"assumption={'ok' if e.assumption_holds else 'violated'}"
            )
            if e.assumption_holds:
                line += (
                    f" kappa_slack={e.kappa_bound_slack:.4g} "
                    f"trace_slack={e.trace_bound_slack:.4g}"
                )
        print(line)
    return EXIT_OK


def _cmd_olhd(args) -> int:
    rng = np.random.default_rng(args.seed)
    design = generate_olhd(args.r, args.p, rng)
    print(f"kappa={design.kappa!r} max_abs_corr={design.max_abs_corr!r}")
    for point in design.points:
        print(",".join(repr(float(v)) for v in point))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lowcon",
        description="Subsampling experiments for measurement-constrained regression",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the synthetic simulation grid")
    sim.add_argument("--config", required=True)
    sim.add_argument("--out", default=None)
    sim.set_defaults(func=_cmd_simulate)

    emse = sub.add_parser("emse", help="empirical MSE against full-sample surrogates")
    emse.add_argument("--config", required=True)
    emse.add_argument("--data", required=True, help="CSV dataset path")
    emse.add_argument("--response", required=True, help="response column name")
    emse.add_argument("--predictors", required=True,
                      help="comma-separated predictor column names")
    emse.add_argument("--out", default=None)
    emse.set_defaults(func=_cmd_emse)

    toy = sub.add_parser("toy", help="one-predictor toy comparison")
    toy.add_argument("--r", type=int, required=True)
    toy.add_argument("--seed", type=int, default=0)
    toy.add_argument("--replicates", type=int, default=100)
    toy.add_argument("--out", default=None)
    toy.set_defaults(func=_cmd_toy)

    diag = sub.add_parser("diagnose", help="theory diagnostics for one seeded draw")
    diag.add_argument("--config", required=True)
    diag.add_argument("--alpha", type=float, required=True)
    diag.add_argument("--sigma2", type=float, required=True)
    diag.set_defaults(func=_cmd_diagnose)

    olhd = sub.add_parser("olhd", help="print a low-correlation Latin hypercube design")
    olhd.add_argument("--r", type=int, required=True)
    olhd.add_argument("--p", type=int, required=True)
    olhd.add_argument("--seed", type=int, default=0)
    olhd.set_defaults(func=_cmd_olhd)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, FileNotFoundError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
