"""
DiProPerm command-line application.

Sub-commands:
    test      run a DiProPerm test on a labelled data file
    power     Monte Carlo power by dimension (named setting) or over a (mu1, sigma1^2) grid
    scaling   variance-sum scaling diagnostic for the MD-t statistic
    baseline  energy, random-projection or Hotelling test on a file or a simulated setting
    generate  write a labelled CSV drawn from a simulation setting

Exit status: 0 on success, 2 on invalid input or configuration, 3 when a solver fails.
"""

import argparse
import dataclasses
import logging
import os
import sys
from typing import List, Optional

import pandas as pd
from dotenv import load_dotenv

from src.baselines import RPConfig, energy_test, hotelling_t2, rp_test
from src.data import RngPolicy, SamplePair, load_dataset
from src.directions import DirectionMethod, SolverOptions
from src.errors import ConfigError, DiPropermError, SolverError
from src.output import ResultWriter
from src.permutation import PermutationPlan, replay_projections, run_diproperm
from src.simulation import (
    PowerGrid,
    TestDescriptor,
    power_by_dimension,
    power_surface,
    power_table,
    sample_distribution,
    scaling_diagnostic,
    setting_pair,
)
from src.stats import StatKind
from src.utils.sample_data import get_sample_dataset

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3

SETTINGS = ["s1", "s2", "s3", "null"]
BASELINES = ["energy", "rp", "hotelling"]


class Config:
    """Application configuration read from the environment (and a .env file)."""

    def __init__(self, env_file: Optional[str] = None):
        """Initialize configuration."""
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()

        self.seed = self._read_int("DIPROPERM_SEED", 0)
        self.workers = self._read_int("DIPROPERM_WORKERS", 1)
        self.log_level = os.getenv("DIPROPERM_LOG_LEVEL", "INFO").strip().upper() or "INFO"
        if self.log_level not in LOG_LEVELS:
            raise ConfigError(f"DIPROPERM_LOG_LEVEL must be one of {LOG_LEVELS}, got {self.log_level!r}")

    @staticmethod
    def _read_int(name: str, default: int) -> int:
        raw = os.getenv(name)
        if raw is None or not raw.strip():
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{name} must be an integer, got {raw!r}")


def _int_list(text: str) -> List[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _float_list(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _pairs_epilog() -> str:
    stats = [s.value for s in StatKind]
    lines = [
        "directions: " + ", ".join(m.value for m in DirectionMethod),
        "statistics: " + ", ".join(stats),
        "direction/statistic pairs:",
    ]
    for method in DirectionMethod:
        lines.append("  " + " ".join(f"{method.value}-{s}" for s in stats))
    return "\n".join(lines)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: DIPROPERM_SEED or 0)")
    parser.add_argument("--workers", type=int, default=None, help="worker threads (default: DIPROPERM_WORKERS or 1)")
    parser.add_argument("-o", "--output", default=None, help="output file (default: standard output)")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=LOG_LEVELS,
        type=str.upper,
        help="logging level (default: DIPROPERM_LOG_LEVEL or INFO)",
    )


def _add_solver(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--c-penalty", type=float, default=None, help="SVM/DWD slack penalty")
    parser.add_argument("--tol", type=float, default=1e-6, help="SVM/DWD optimality tolerance")
    parser.add_argument("--max-iter", type=int, default=None, help="SVM/DWD iteration cap")


def build_parser() -> argparse.ArgumentParser:
    epilog = _pairs_epilog()
    formatter = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(
        prog="diproperm",
        description="Direction-Projection-Permutation two-sample tests for high-dimensional data",
        epilog=epilog,
        formatter_class=formatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    test = commands.add_parser("test", help="run a DiProPerm test on a data file", epilog=epilog, formatter_class=formatter)
    test.add_argument("input", help='CSV/TSV file, or "-" for standard input')
    test.add_argument("--direction", default="dwd", choices=[m.value for m in DirectionMethod])
    test.add_argument("--stat", default="t", choices=[s.value for s in StatKind])
    test.add_argument("--nperm", type=int, default=1000, help="number of relabelings B")
    test.add_argument("--alpha", type=float, default=0.05, help="level for the reject decision")
    test.add_argument("--labels", default=None, help="label column name or index (default: first column)")
    test.add_argument("--labels-file", default=None, help="file holding one label per observation")
    test.add_argument("--positive-label", default=None, help="label whose rows form class X")
    test.add_argument("--transpose", action="store_true", help="input is features x observations")
    test.add_argument("--sep", default=None, help="field separator (default: detected)")
    test.add_argument("--format", default="json", choices=["json", "tsv"])
    test.add_argument(
        "--projections",
        default=None,
        help="projections TSV path (default: <output>.projections.tsv next to -o)",
    )
    test.add_argument("--no-projections", action="store_true", help="do not write the projections TSV")
    test.add_argument("--worlds", type=int, default=5, help="permuted worlds in the projections TSV")
    test.add_argument("--truncate-perms", type=int, default=None, help="keep only this many permuted statistics")
    test.add_argument("--smoothed", action="store_true", help="also report the (1 + count) / (B + 1) p-value")
    _add_solver(test)
    _add_common(test)
    test.set_defaults(handler=cmd_test)

    power = commands.add_parser("power", help="Monte Carlo power estimation")
    power.add_argument("--test", default="md-md", help='pairing such as "dwd-t", or energy, rp, hotelling')
    power.add_argument("--setting", type=str.lower, choices=SETTINGS, default=None, help="named setting (power by dimension)")
    power.add_argument("--dims", type=_int_list, default=None, help="dimensions for --setting, e.g. 50,100")
    power.add_argument("--mu1", type=_float_list, default=None, help="grid of mu1 values (power surface)")
    power.add_argument("--sigma1sq", type=_float_list, default=None, help="grid of sigma1^2 values (power surface)")
    power.add_argument("--d", type=int, default=100, help="dimension of the power surface")
    power.add_argument("--m", type=int, default=50)
    power.add_argument("--n", type=int, default=50)
    power.add_argument("--alpha", type=float, default=0.05)
    power.add_argument("--reps", type=int, default=200, help="Monte Carlo repetitions per point")
    power.add_argument("--nperm", type=int, default=100, help="relabelings per permutation test")
    power.add_argument("--rp-k", type=int, default=None, help="projected dimension of the rp test")
    power.add_argument("--format", default="tsv", choices=["json", "tsv"])
    _add_solver(power)
    _add_common(power)
    power.set_defaults(handler=cmd_power)

    scaling = commands.add_parser("scaling", help="variance-sum scaling diagnostic")
    scaling.add_argument("--sigmay2", type=float, default=100.0, help="variance of the second sample")
    scaling.add_argument("--sigmax2", type=float, default=1.0, help="variance of the first sample")
    scaling.add_argument("--dims", type=_int_list, default=[100, 400])
    scaling.add_argument("--m", type=int, default=50)
    scaling.add_argument("--n", type=int, default=50)
    scaling.add_argument("--reps", type=int, default=50)
    scaling.add_argument("--format", default="tsv", choices=["json", "tsv"])
    _add_common(scaling)
    scaling.set_defaults(handler=cmd_scaling)

    baseline = commands.add_parser("baseline", help="energy, rp or Hotelling test")
    baseline.add_argument("input", nargs="?", default=None, help="data file (default: simulate --setting)")
    baseline.add_argument("--method", required=True, type=str.lower, choices=BASELINES)
    baseline.add_argument("--setting", type=str.lower, choices=SETTINGS, default="s1")
    baseline.add_argument("--d", type=int, default=100)
    baseline.add_argument("--m", type=int, default=50)
    baseline.add_argument("--n", type=int, default=50)
    baseline.add_argument("--nperm", type=int, default=1000, help="relabelings for the energy test")
    baseline.add_argument("--k", type=int, default=None, help="projected dimension of the rp test")
    baseline.add_argument("--labels", default=None)
    baseline.add_argument("--labels-file", default=None)
    baseline.add_argument("--positive-label", default=None)
    baseline.add_argument("--transpose", action="store_true")
    baseline.add_argument("--sep", default=None)
    baseline.add_argument("--truncate-perms", type=int, default=None)
    _add_common(baseline)
    baseline.set_defaults(handler=cmd_baseline)

    generate = commands.add_parser("generate", help="write a labelled CSV from a simulation setting")
    generate.add_argument("--setting", type=str.lower, choices=SETTINGS, default="null")
    generate.add_argument("--d", type=int, default=100)
    generate.add_argument("--m", type=int, default=50)
    generate.add_argument("--n", type=int, default=50)
    _add_common(generate)
    generate.set_defaults(handler=cmd_generate)

    return parser


def _records(table: pd.DataFrame) -> List[dict]:
    return table.astype(object).where(table.notna(), None).to_dict(orient="records")


def _seed(args: argparse.Namespace, config: Config) -> int:
    return args.seed if args.seed is not None else config.seed


def _workers(args: argparse.Namespace, config: Config) -> int:
    workers = args.workers if args.workers is not None else config.workers
    if workers < 1:
        raise ConfigError(f"workers must be at least 1, got {workers}")
    return workers


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise ConfigError(f"alpha must lie in (0, 1), got {alpha}")


def _solver_options(args: argparse.Namespace) -> SolverOptions:
    return SolverOptions(c_penalty=args.c_penalty, tol=args.tol, max_iter=args.max_iter)


def _load(args: argparse.Namespace) -> SamplePair:
    return load_dataset(
        args.input,
        labels=args.labels,
        labels_file=args.labels_file,
        transpose=args.transpose,
        positive_label=args.positive_label,
        sep=args.sep,
    )


def projections_path(args: argparse.Namespace) -> Optional[str]:
    """Where cmd_test writes the projections TSV, or None when there is nowhere to write it."""
    if args.no_projections:
        return None
    if args.projections:
        return args.projections
    if args.output and args.output != "-":
        root, _ = os.path.splitext(args.output)
        return f"{root}.projections.tsv"
    return None


def cmd_test(args: argparse.Namespace, config: Config) -> int:
    """Run one DiProPerm test and write its result and the projections TSV."""
    _check_alpha(args.alpha)
    if args.worlds < 0:
        raise ConfigError(f"--worlds must be non-negative, got {args.worlds}")
    if args.truncate_perms is not None and args.truncate_perms < 0:
        raise ConfigError(f"--truncate-perms must be non-negative, got {args.truncate_perms}")
    opts = _solver_options(args)
    plan = PermutationPlan(
        b_perms=args.nperm,
        rng=RngPolicy(_seed(args, config)),
        smoothed=args.smoothed,
        workers=_workers(args, config),
    )

    sp = _load(args)
    result = run_diproperm(sp, args.direction, args.stat, plan, opts)
    record = result.to_dict(args.truncate_perms)
    record.update(
        {
            "alpha": args.alpha,
            "reject": result.reject(args.alpha),
            "label_x": sp.label_x,
            "label_y": sp.label_y,
            "m": sp.m,
            "n": sp.n,
            "d": sp.d,
        }
    )

    writer = ResultWriter(args.output)
    if args.format == "json":
        writer.write_json(record)
    else:
        scalars = {k: v for k, v in record.items() if k != "perm_stats"}
        writer.write_table(pd.DataFrame([scalars]))

    path = projections_path(args)
    if path is None and not args.no_projections:
        logger.info("Result went to standard output; skipping the projections TSV (use --projections PATH)")
    elif path is not None:
        table = replay_projections(sp, args.direction, plan, args.worlds, opts)
        ResultWriter(path).write_table(table)
        logger.info(f"Wrote projections of the original and {args.worlds} permuted worlds to {path}")
    return EXIT_OK


def cmd_power(args: argparse.Namespace, config: Config) -> int:
    """Power by dimension for a named setting, or a power surface over (mu1, sigma1^2)."""
    _check_alpha(args.alpha)
    surface = args.mu1 is not None or args.sigma1sq is not None
    if surface and args.setting is not None:
        raise ConfigError("use either --setting/--dims or --mu1/--sigma1sq, not both")
    if surface and (args.mu1 is None or args.sigma1sq is None):
        raise ConfigError("a power surface needs both --mu1 and --sigma1sq")
    if not surface and args.setting is None:
        raise ConfigError("power needs --setting (with --dims) or --mu1 and --sigma1sq")
    if args.reps < 1:
        raise ConfigError(f"--reps must be at least 1, got {args.reps}")

    test = TestDescriptor.parse(args.test, _solver_options(args))
    if args.rp_k is not None:
        test = dataclasses.replace(test, rp_k=args.rp_k)
    plan = PermutationPlan(b_perms=args.nperm, rng=RngPolicy(_seed(args, config)), workers=_workers(args, config))

    if surface:
        grid = PowerGrid(
            mu1_values=args.mu1,
            sigma1_sq_values=args.sigma1sq,
            m=args.m,
            n=args.n,
            d=args.d,
            test=test,
            alpha=args.alpha,
            mc_reps=args.reps,
        )
        estimates = power_surface(grid, plan)
    else:
        dims = args.dims or [args.d]
        estimates = power_by_dimension(args.setting, dims, test, args.m, args.n, args.alpha, args.reps, plan)

    table = power_table(estimates)
    writer = ResultWriter(args.output)
    if args.format == "tsv":
        writer.write_table(table)
    else:
        writer.write_json({"estimates": _records(table)})
    return EXIT_OK


def cmd_scaling(args: argparse.Namespace, config: Config) -> int:
    """Medians of S/d and S_pi/d (and observed/permuted MD-t) per dimension."""
    if args.reps < 1:
        raise ConfigError(f"--reps must be at least 1, got {args.reps}")
    plan = PermutationPlan(b_perms=1, rng=RngPolicy(_seed(args, config)), workers=_workers(args, config))
    table = scaling_diagnostic(args.dims, args.m, args.n, args.sigmay2, args.reps, plan, sigma_x_sq=args.sigmax2)
    writer = ResultWriter(args.output)
    if args.format == "tsv":
        writer.write_table(table)
    else:
        writer.write_json({"rows": _records(table)})
    return EXIT_OK


def _simulated_pair(setting: str, d: int, m: int, n: int, policy: RngPolicy) -> SamplePair:
    f1, f2 = setting_pair(setting, d, n)
    return SamplePair(sample_distribution(f1, m, policy.stream(0)), sample_distribution(f2, n, policy.stream(1)))


def cmd_baseline(args: argparse.Namespace, config: Config) -> int:
    """Energy, random-projection or Hotelling test on a file or on simulated data."""
    policy = RngPolicy(_seed(args, config))
    if args.input is not None:
        sp = _load(args)
    else:
        sp = _simulated_pair(args.setting, args.d, args.m, args.n, policy.child(0))

    if args.method == "energy":
        plan = PermutationPlan(b_perms=args.nperm, rng=policy.child(1), workers=_workers(args, config))
        record = energy_test(sp, plan).to_dict(args.truncate_perms)
        record["seed"] = policy.master_seed
    elif args.method == "rp":
        record = rp_test(sp, RPConfig(k=args.k, rng=policy.child(1))).to_dict()
        record["seed"] = policy.master_seed
    else:
        record = hotelling_t2(sp).to_dict()
    record.update({"m": sp.m, "n": sp.n, "d": sp.d})
    ResultWriter(args.output).write_json(record)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace, config: Config) -> int:
    """Write a labelled CSV (label column first) drawn from a setting."""
    frame = get_sample_dataset(args.setting, d=args.d, m=args.m, n=args.n, seed=_seed(args, config))
    ResultWriter(args.output).write_csv(frame)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = Config()
    except ConfigError as e:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, stream=sys.stderr)
        logger.error(f"ConfigError: {e}")
        return EXIT_INVALID

    level = args.log_level or config.log_level
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)

    try:
        return args.handler(args, config)
    except SolverError as e:
        logger.error(f"SolverError: {e} (residual={e.residual:.3e}, iterations={e.iterations})")
        return EXIT_SOLVER
    except (DiPropermError, ValueError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
