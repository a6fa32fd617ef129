"""Command-line interface.

Subcommands:

``run``       execute an experiment config and write CSV + manifest output
``oracle``    print the exact maximizer and structure report of an environment
``budget``    print the sample budget m and confidence radius for a horizon
``validate``  lint a config file, including environment construction

Exit codes: 0 success, 1 config error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from importlib import resources
from pathlib import Path

from .algorithms import compute_sample_budget, confidence_radius, etcg_budget
from .environments import check_monotone, check_submodular_in_expectation
from .oracle import exact_maximizer
from .runner import ConfigError, ExperimentConfig, build_environment, run_experiment


def _resolve_config(name_or_path: str) -> Path:
    """Accept a filesystem path or the name of a bundled config."""
    path = Path(name_or_path)
    if path.exists():
        return path
    bundled = resources.files("setbandits").joinpath("configs").joinpath(f"{name_or_path}.json")
    try:
        if bundled.is_file():
            return Path(str(bundled))
    except (OSError, TypeError):
        pass
    raise ConfigError(
        f"config {name_or_path!r} is neither a file nor a bundled config name "
        f"(bundled: {', '.join(sorted(p.stem for p in _bundled_configs()))})"
    )


def _bundled_configs() -> list[Path]:
    root = resources.files("setbandits").joinpath("configs")
    return [Path(str(p)) for p in root.iterdir() if str(p).endswith(".json")]


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    config = ExperimentConfig.from_file(_resolve_config(args.config))
    if getattr(args, "seed", None) is not None:
        config = dataclasses.replace(config, master_seed=args.seed)
    if getattr(args, "smoke", False):
        config = config.smoke()
    return config


def _cmd_run(args: argparse.Namespace) -> int:
    config = _load_config(args)
    manifest = run_experiment(config, out_dir=args.out, workers=args.workers)
    out = args.out or config.output_dir or f"runs/{config.experiment_id}"
    runs = len(manifest["seeds"])
    print(f"{config.experiment_id}: {runs} runs -> {out}")
    print(
        f"oracle: {manifest['oracle']['opt_set_display']} (1-based), "
        f"value {manifest['oracle']['opt_value']:.6g}, exact={manifest['oracle']['exact']}"
    )
    for warning in manifest["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    config = _load_config(args)
    env = build_environment(config.environment, config.base_dir)
    n = env.ground.n
    if env.has_exact_expectations and n <= 20:
        opt = exact_maximizer(env)
        print(f"maximizer: {opt.opt_set.render(one_based=True)} (1-based), "
              f"mask {opt.opt_set.mask}, value {opt.opt_value:.12g}")
        if len(opt.ties) > 1:
            print(f"ties: {', '.join(s.render(one_based=True) for s in opt.ties)}")
        sub = check_submodular_in_expectation(env)
        mono = check_monotone(env)
        print(f"submodular in expectation: {'yes' if not sub else f'no ({len(sub)} violations)'}")
        for v in sub[:5]:
            print(f"  A={v.a} B={v.b} x={v.x} gap={v.gap:.6g}")
        print(f"monotone in expectation: {'yes' if not mono else f'no ({len(mono)} violations)'}")
        for v in mono[:5]:
            print(f"  A={v.a} B={v.b} gap={v.gap:.6g}")
    else:
        opt = exact_maximizer(env, monte_carlo=True, mc_samples=config.oracle_mc_samples) \
            if n <= 20 else None
        if opt is None:
            print(f"ground set too large to enumerate (n={n}); run the experiment to "
                  "see the runner's best-available optimum in its manifest")
        else:
            print(f"Monte-Carlo maximizer ({config.oracle_mc_samples} samples/subset): "
                  f"{opt.opt_set.render(one_based=True)} value {opt.opt_value:.6g}")
    return 0


def _cmd_budget(args: argparse.Namespace) -> int:
    m = compute_sample_budget(args.horizon)
    rad = confidence_radius(args.horizon, m)
    print(f"T={args.horizon} n={args.arms}")
    print(f"m (per-set samples): {m}")
    print(f"rad (confidence radius): {rad:.12g}")
    print(f"exploration steps (4*n*m): {4 * args.arms * m}"
          + ("" if 4 * args.arms * m <= args.horizon else "  [exceeds horizon: run will truncate]"))
    if args.k is not None:
        print(f"R-ETCG m at k={args.k}: {etcg_budget(args.horizon, args.arms, args.k)}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    config = ExperimentConfig.from_file(_resolve_config(args.config))
    env = build_environment(config.environment, config.base_dir)
    runs = len(config.agents) * len(config.horizons) * config.repetitions
    print(f"ok: {config.experiment_id}: n={env.ground.n}, {runs} runs "
          f"({len(config.agents)} agents x {len(config.horizons)} horizons x "
          f"{config.repetitions} reps)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setbandits",
        description="Subset-selection bandit experiments: agents, environments, regret CSVs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute an experiment config")
    run_p.add_argument("--config", required=True, help="config file path or bundled config name")
    run_p.add_argument("--seed", type=int, default=None, help="override the master seed")
    run_p.add_argument("--out", default=None, help="output directory")
    run_p.add_argument("--smoke", action="store_true",
                       help="fast variant: horizons capped at 10^4, at most 3 repetitions")
    run_p.add_argument("--workers", type=int, default=1,
                       help="number of concurrent workers (default 1 = serial)")
    run_p.set_defaults(func=_cmd_run)

    oracle_p = sub.add_parser("oracle", help="print the exact maximizer and structure report")
    oracle_p.add_argument("--config", required=True, help="config file path or bundled config name")
    oracle_p.set_defaults(func=_cmd_oracle)

    budget_p = sub.add_parser("budget", help="print the sample budget m and confidence radius")
    budget_p.add_argument("--horizon", type=int, required=True)
    budget_p.add_argument("--arms", type=int, required=True)
    budget_p.add_argument("--k", type=int, default=None, help="also print the R-ETCG budget at this k")
    budget_p.set_defaults(func=_cmd_budget)

    validate_p = sub.add_parser("validate", help="lint a config file")
    validate_p.add_argument("--config", required=True, help="config file path or bundled config name")
    validate_p.set_defaults(func=_cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
