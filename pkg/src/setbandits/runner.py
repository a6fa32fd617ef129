"""Experiment orchestration: configs, seeded dispatch, and CSV output.

An experiment is a grid of (agent, horizon, repetition) runs over one
environment. Every run derives its random streams by hashing the master seed
with the run key and a purpose tag, so runs are reproducible individually and
can execute in any order (serial or thread pool) with byte-identical CSV
output.

Output files per experiment:

``summary.csv``
    one row per run: ``agent, horizon, rep, committed_mask,
    final_regret_full_expected, final_regret_full_sampled,
    final_regret_half_expected, final_regret_half_sampled, explore_steps, m``

``series.csv``
    downsampled per-step rows: ``agent, horizon, rep, t, reward,
    reward_smoothed, cum_regret_full_expected, cum_regret_full_sampled,
    cum_regret_half_expected, cum_regret_half_sampled``

``manifest.json``
    config echo, every derived seed, the oracle result, aggregate means,
    wall-times, and warnings.

Numbers in CSVs are rendered with 17 significant digits, enough to
round-trip doubles exactly.
"""

from __future__ import annotations

import concurrent.futures
import csv
import dataclasses
import hashlib
import json
import math
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .algorithms import AgentConfig, AgentRunResult, AGENT_KINDS, run_agent
from .core import ArmSet
from .environments import (
    Environment,
    LinearMinusCostEnv,
    NetworkRevenueEnv,
    TabularEnv,
    default_linear_minus_cost,
    load_network,
)
from .metrics import BaselineKind, RegretSeries, moving_average, regret_series
from .oracle import ENUMERATION_MAX_ARMS, OptResult, exact_maximizer

SCHEMA_VERSION = 1
MAX_SERIES_ROWS_PER_RUN = 100_000

SUMMARY_COLUMNS = (
    "agent",
    "horizon",
    "rep",
    "committed_mask",
    "final_regret_full_expected",
    "final_regret_full_sampled",
    "final_regret_half_expected",
    "final_regret_half_sampled",
    "explore_steps",
    "m",
)

SERIES_COLUMNS = (
    "agent",
    "horizon",
    "rep",
    "t",
    "reward",
    "reward_smoothed",
    "cum_regret_full_expected",
    "cum_regret_full_sampled",
    "cum_regret_half_expected",
    "cum_regret_half_sampled",
)


class ConfigError(ValueError):
    """Raised for malformed or inconsistent experiment configs."""


class RunKey(NamedTuple):
    """Unique identity of one run within an experiment."""

    agent: str
    horizon: int
    rep: int


class SeedPurpose(Enum):
    ENV_NOISE = "env-noise"
    AGENT_COINS = "agent-coins"
    OPT_STREAM = "opt-stream"
    ORACLE_MC = "oracle-mc"


def derive_seed(master_seed: int, key: RunKey, purpose: SeedPurpose | str) -> int:
    """Deterministic, platform-stable 64-bit seed for one run and purpose.

    Hashes the master seed with the run key and the purpose tag so that
    distinct runs and distinct purposes get independent streams.
    """
    tag = purpose.value if isinstance(purpose, SeedPurpose) else str(purpose)
    payload = f"{int(master_seed)}|{key.agent}|{int(key.horizon)}|{int(key.rep)}|{tag}"
    digest = hashlib.sha256(payload.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little")


@dataclass(frozen=True)
class AgentSpec:
    """One agent entry of a config: a unique display name plus parameters.

    ``opt_set_labels`` (OPT only, optional) and every other arm list in
    config files use 1-based arm labels; they are converted to 0-based
    indices internally.
    """

    name: str
    kind: str
    t0: int | None = None
    opt_set_labels: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in AGENT_KINDS:
            raise ConfigError(f"unknown agent kind {self.kind!r}; expected one of {AGENT_KINDS}")
        if self.kind == "RGL-anytime":
            if self.t0 is None or int(self.t0) < 2:
                raise ConfigError("RGL-anytime needs t0 >= 2")
        elif self.t0 is not None:
            raise ConfigError(f"t0 is only valid for RGL-anytime, not {self.kind}")
        if self.opt_set_labels is not None and self.kind != "OPT":
            raise ConfigError(f"opt_set is only valid for OPT, not {self.kind}")

    @classmethod
    def from_entry(cls, entry: Any) -> "AgentSpec":
        if isinstance(entry, str):
            return cls(name=entry, kind=entry)
        if isinstance(entry, Mapping):
            extra = set(entry) - {"name", "kind", "t0", "opt_set"}
            if extra:
                raise ConfigError(f"unknown agent keys: {sorted(extra)}")
            kind = entry.get("kind")
            if not kind:
                raise ConfigError("agent entry needs a 'kind'")
            opt = entry.get("opt_set")
            return cls(
                name=str(entry.get("name", kind)),
                kind=str(kind),
                t0=int(entry["t0"]) if "t0" in entry else None,
                opt_set_labels=tuple(int(i) for i in opt) if opt is not None else None,
            )
        raise ConfigError(f"agent entry must be a string or mapping, got {type(entry).__name__}")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "kind": self.kind}
        if self.t0 is not None:
            out["t0"] = self.t0
        if self.opt_set_labels is not None:
            out["opt_set"] = list(self.opt_set_labels)
        return out


_CONFIG_KEYS = {
    "schema_version",
    "experiment_id",
    "environment",
    "agents",
    "horizons",
    "repetitions",
    "master_seed",
    "smoothing_window",
    "trace_downsample",
    "oracle_mc_samples",
    "output_dir",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """A fully validated experiment description."""

    experiment_id: str
    environment: Mapping[str, Any]
    agents: tuple[AgentSpec, ...]
    horizons: tuple[int, ...]
    repetitions: int
    master_seed: int
    smoothing_window: int = 50
    trace_downsample: int | None = None
    oracle_mc_samples: int = 100_000
    output_dir: str | None = None
    base_dir: Path = Path(".")

    def __post_init__(self) -> None:
        if not self.experiment_id:
            raise ConfigError("experiment_id must be a nonempty string")
        if not self.horizons:
            raise ConfigError("horizons must be nonempty")
        for T in self.horizons:
            if int(T) < 2:
                raise ConfigError(f"every horizon must be >= 2, got {T}")
        if self.repetitions < 1:
            raise ConfigError(f"repetitions must be >= 1, got {self.repetitions}")
        if self.master_seed < 0:
            raise ConfigError("master_seed must be a nonnegative integer")
        if self.smoothing_window < 1:
            raise ConfigError("smoothing_window must be >= 1")
        if self.trace_downsample is not None and self.trace_downsample < 1:
            raise ConfigError("trace_downsample must be >= 1")
        if self.oracle_mc_samples < 1:
            raise ConfigError("oracle_mc_samples must be >= 1")
        if not self.agents:
            raise ConfigError("agents must be nonempty")
        names = [a.name for a in self.agents]
        if len(set(names)) != len(names):
            raise ConfigError(f"agent names must be unique, got {names}")

    @classmethod
    def from_dict(cls, raw: Mapping[str, Any], base_dir: str | Path = ".") -> "ExperimentConfig":
        if not isinstance(raw, Mapping):
            raise ConfigError("config must be a mapping")
        unknown = set(raw) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        version = raw.get("schema_version", SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {version}; this build reads {SCHEMA_VERSION}")
        missing = {"experiment_id", "environment", "agents", "horizons", "repetitions", "master_seed"} - set(raw)
        if missing:
            raise ConfigError(f"missing config keys: {sorted(missing)}")
        try:
            agents = tuple(AgentSpec.from_entry(e) for e in raw["agents"])
            horizons = tuple(int(T) for T in raw["horizons"])
        except ConfigError:
            raise
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        env = raw["environment"]
        if not isinstance(env, Mapping) or "kind" not in env:
            raise ConfigError("environment must be a mapping with a 'kind'")
        return cls(
            experiment_id=str(raw["experiment_id"]),
            environment=dict(env),
            agents=agents,
            horizons=horizons,
            repetitions=int(raw["repetitions"]),
            master_seed=int(raw["master_seed"]),
            smoothing_window=int(raw.get("smoothing_window", 50)),
            trace_downsample=(
                int(raw["trace_downsample"]) if raw.get("trace_downsample") is not None else None
            ),
            oracle_mc_samples=int(raw.get("oracle_mc_samples", 100_000)),
            output_dir=str(raw["output_dir"]) if raw.get("output_dir") is not None else None,
            base_dir=Path(base_dir),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "ExperimentConfig":
        path = Path(path)
        try:
            raw = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(raw, base_dir=path.parent)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment_id": self.experiment_id,
            "environment": dict(self.environment),
            "agents": [a.to_dict() for a in self.agents],
            "horizons": list(self.horizons),
            "repetitions": self.repetitions,
            "master_seed": self.master_seed,
            "smoothing_window": self.smoothing_window,
            "trace_downsample": self.trace_downsample,
            "oracle_mc_samples": self.oracle_mc_samples,
            "output_dir": self.output_dir,
        }

    def smoke(self) -> "ExperimentConfig":
        """A fast variant: horizons capped at 10^4, at most 3 repetitions."""
        horizons = tuple(sorted({min(int(T), 10_000) for T in self.horizons}))
        return dataclasses.replace(
            self,
            experiment_id=self.experiment_id + "-smoke",
            horizons=horizons,
            repetitions=min(self.repetitions, 3),
        )


def _labels_to_set(labels: Sequence[int], n: int, what: str) -> ArmSet:
    try:
        return ArmSet.from_indices([int(i) - 1 for i in labels], n)
    except ValueError as exc:
        raise ConfigError(f"bad {what} {list(labels)} (1-based labels): {exc}") from exc


def build_environment(spec: Mapping[str, Any], base_dir: str | Path = ".") -> Environment:
    """Construct the environment named by a config's ``environment`` block."""
    base_dir = Path(base_dir)
    kind = spec.get("kind")
    known: dict[str, set[str]] = {
        "tabular": {"kind", "n", "sigma", "mu", "table"},
        "linear_minus_cost": {"kind", "mu_per_arm", "sigma", "k_star", "special_set"},
        "network": {"kind", "edges", "communities", "alpha", "sigma", "value_bounds"},
    }
    if kind not in known:
        raise ConfigError(f"unknown environment kind {kind!r}; expected one of {sorted(known)}")
    extra = set(spec) - known[kind]
    if extra:
        raise ConfigError(f"unknown keys for {kind} environment: {sorted(extra)}")
    try:
        if kind == "tabular":
            return TabularEnv.from_dict(spec)
        if kind == "linear_minus_cost":
            sigma = float(spec.get("sigma", 0.02))
            if "mu_per_arm" not in spec:
                return default_linear_minus_cost(sigma)
            mu = [float(v) for v in spec["mu_per_arm"]]
            special = None
            if spec.get("special_set") is not None:
                special = _labels_to_set(spec["special_set"], len(mu), "special_set")
            return LinearMinusCostEnv(
                mu, sigma=sigma, k_star=int(spec.get("k_star", 6)), special_set=special
            )
        bounds = spec.get("value_bounds")
        if "alpha" not in spec or "sigma" not in spec:
            raise ConfigError("network environment requires explicit 'alpha' and 'sigma'")
        return load_network(
            base_dir / spec["edges"],
            base_dir / spec["communities"],
            alpha=float(spec["alpha"]),
            sigma=float(spec["sigma"]),
            value_bounds=tuple(float(b) for b in bounds) if bounds is not None else None,
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError, OSError) as exc:
        raise ConfigError(f"cannot build {kind} environment: {exc}") from exc


def _oracle_for(env: Environment, config: ExperimentConfig) -> tuple[OptResult, list[str]]:
    """Best-available optimum for the regret baselines, with any caveats."""
    warnings: list[str] = []
    n = env.ground.n
    if n <= ENUMERATION_MAX_ARMS:
        if env.has_exact_expectations:
            return exact_maximizer(env), warnings
        rng = np.random.default_rng(
            derive_seed(config.master_seed, RunKey("__oracle__", 0, 0), SeedPurpose.ORACLE_MC)
        )
        warnings.append(
            "environment has no exact expected values; optimum taken over "
            f"Monte-Carlo estimates with {config.oracle_mc_samples} samples per subset"
        )
        return (
            exact_maximizer(env, monte_carlo=True, mc_samples=config.oracle_mc_samples, rng=rng),
            warnings,
        )
    if isinstance(env, NetworkRevenueEnv):
        opt_set = env.design_opt_set()
        warnings.append(
            f"ground set too large to enumerate (n={n}); optimum computed from the "
            "per-community structure of the design means"
        )
        return OptResult(opt_set, env.expected_value(opt_set).value, (opt_set,), exact=True), warnings
    # generic fallback: best of a seeded random subset search
    rng = np.random.default_rng(
        derive_seed(config.master_seed, RunKey("__oracle__", 0, 0), SeedPurpose.ORACLE_MC)
    )
    candidates = {0, env.ground.full_mask}
    candidates.update(1 << i for i in range(n))
    candidates.update(int(v) for v in rng.integers(0, 1 << n, size=4096, dtype=np.uint64))
    best_mask, best_val = 0, -math.inf
    for mask in sorted(candidates):
        val = env.expected_value(ArmSet(mask, n)).value
        if val > best_val:
            best_mask, best_val = mask, val
    warnings.append(
        f"ground set too large to enumerate (n={n}); optimum approximated by a "
        f"seeded random search over {len(candidates)} candidate subsets"
    )
    opt_set = ArmSet(best_mask, n)
    return OptResult(opt_set, best_val, (opt_set,), exact=False), warnings


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_summary_csv(rows: Iterable[Mapping[str, Any]], path: str | Path) -> None:
    """Write summary rows (one per run) with the documented column order."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        for row in rows:
            writer.writerow([row[c] for c in SUMMARY_COLUMNS])


def write_series_csv(rows: Iterable[Sequence[Any]], path: str | Path) -> None:
    """Write downsampled per-step rows with the documented column order."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SERIES_COLUMNS)
        for row in rows:
            writer.writerow(row)


@dataclass
class _RunOutput:
    key: RunKey
    seeds: dict[str, int]
    summary_row: dict[str, Any]
    series_rows: list[tuple]
    finals: dict[str, float]
    committed: ArmSet | None
    explore_steps: int
    wall_seconds: float


_SERIES_VARIANTS = (
    ("full_expected", 1.0, BaselineKind.EXPECTED_OPT),
    ("full_sampled", 1.0, BaselineKind.SAMPLED_OPT),
    ("half_expected", 0.5, BaselineKind.EXPECTED_OPT),
    ("half_sampled", 0.5, BaselineKind.SAMPLED_OPT),
)


def _execute_run(
    env: Environment,
    opt: OptResult,
    config: ExperimentConfig,
    spec: AgentSpec,
    key: RunKey,
) -> _RunOutput:
    t0 = time.perf_counter()
    seeds = {p.value: derive_seed(config.master_seed, key, p) for p in
             (SeedPurpose.ENV_NOISE, SeedPurpose.AGENT_COINS, SeedPurpose.OPT_STREAM)}
    env_rng = np.random.default_rng(seeds[SeedPurpose.ENV_NOISE.value])
    coin_rng = np.random.default_rng(seeds[SeedPurpose.AGENT_COINS.value])
    opt_rng = np.random.default_rng(seeds[SeedPurpose.OPT_STREAM.value])

    opt_set = opt.opt_set
    if spec.opt_set_labels is not None:
        opt_set = _labels_to_set(spec.opt_set_labels, env.ground.n, "opt_set")
    agent_config = AgentConfig(
        kind=spec.kind,
        horizon=key.horizon,
        seed=seeds[SeedPurpose.ENV_NOISE.value],
        opt_set=opt_set if spec.kind == "OPT" else None,
        t0=spec.t0,
    )
    result: AgentRunResult = run_agent(env, agent_config, env_rng, coin_rng)
    trace = result.trace
    opt_rewards = env.sample_many(opt.opt_set, opt_rng, key.horizon)

    series: dict[str, RegretSeries] = {
        label: regret_series(trace, opt, alpha, baseline, opt_rewards)
        for label, alpha, baseline in _SERIES_VARIANTS
    }
    finals = {label: s.final for label, s in series.items()}
    smoothed = moving_average(trace.rewards, config.smoothing_window)

    stride = config.trace_downsample or max(1, math.ceil(key.horizon / MAX_SERIES_ROWS_PER_RUN))
    idx = np.arange(stride - 1, key.horizon, stride)
    series_rows = [
        (
            key.agent,
            key.horizon,
            key.rep,
            int(i) + 1,
            _fmt(trace.rewards[i]),
            _fmt(smoothed[i]),
            _fmt(series["full_expected"].cumulative[i]),
            _fmt(series["full_sampled"].cumulative[i]),
            _fmt(series["half_expected"].cumulative[i]),
            _fmt(series["half_sampled"].cumulative[i]),
        )
        for i in idx
    ]
    summary_row = {
        "agent": key.agent,
        "horizon": key.horizon,
        "rep": key.rep,
        "committed_mask": trace.committed.mask if trace.committed is not None else "",
        "final_regret_full_expected": _fmt(finals["full_expected"]),
        "final_regret_full_sampled": _fmt(finals["full_sampled"]),
        "final_regret_half_expected": _fmt(finals["half_expected"]),
        "final_regret_half_sampled": _fmt(finals["half_sampled"]),
        "explore_steps": trace.explore_steps,
        "m": result.m,
    }
    return _RunOutput(
        key=key,
        seeds=seeds,
        summary_row=summary_row,
        series_rows=series_rows,
        finals=finals,
        committed=trace.committed,
        explore_steps=trace.explore_steps,
        wall_seconds=time.perf_counter() - t0,
    )


def run_experiment(
    config: ExperimentConfig,
    *,
    out_dir: str | Path | None = None,
    workers: int = 1,
) -> dict:
    """Execute every (agent, horizon, repetition) run and serialize results.

    Returns the manifest (also written to ``manifest.json``). Output is
    byte-identical for a given config and master seed regardless of
    ``workers``; results are merged in deterministic key order.
    """
    started = time.perf_counter()
    env = build_environment(config.environment, config.base_dir)
    opt, warnings = _oracle_for(env, config)

    out = Path(out_dir) if out_dir is not None else Path(config.output_dir or f"runs/{config.experiment_id}")
    out.mkdir(parents=True, exist_ok=True)
    summary_path = out / "summary.csv"
    series_path = out / "series.csv"
    manifest_path = out / "manifest.json"

    keys = [
        RunKey(spec.name, int(T), rep)
        for spec in config.agents
        for T in config.horizons
        for rep in range(config.repetitions)
    ]
    spec_by_name = {spec.name: spec for spec in config.agents}

    def execute(key: RunKey) -> _RunOutput:
        return _execute_run(env, opt, config, spec_by_name[key.agent], key)

    seeds_manifest = []
    timings = {}
    agg: dict[tuple[str, int], dict[str, Any]] = {}

    with summary_path.open("w", newline="") as sfh, series_path.open("w", newline="") as tfh:
        summary_writer = csv.writer(sfh, lineterminator="\n")
        summary_writer.writerow(SUMMARY_COLUMNS)
        series_writer = csv.writer(tfh, lineterminator="\n")
        series_writer.writerow(SERIES_COLUMNS)

        def consume(output: _RunOutput) -> None:
            summary_writer.writerow([output.summary_row[c] for c in SUMMARY_COLUMNS])
            series_writer.writerows(output.series_rows)
            seeds_manifest.append(
                {"agent": output.key.agent, "horizon": output.key.horizon, "rep": output.key.rep}
                | output.seeds
            )
            timings[f"{output.key.agent}|{output.key.horizon}|{output.key.rep}"] = round(
                output.wall_seconds, 6
            )
            slot = agg.setdefault(
                (output.key.agent, output.key.horizon),
                {label: [] for label, _, _ in _SERIES_VARIANTS}
                | {"committed": [], "explore_steps": []},
            )
            for label, _, _ in _SERIES_VARIANTS:
                slot[label].append(output.finals[label])
            slot["committed"].append(output.committed)
            slot["explore_steps"].append(output.explore_steps)

        if workers <= 1:
            for key in keys:
                consume(execute(key))
        else:
            with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
                futures = {key: pool.submit(execute, key) for key in keys}
                for key in keys:
                    consume(futures[key].result())

    aggregates = {}
    for (agent, horizon), slot in sorted(agg.items(), key=lambda kv: (kv[0][0], kv[0][1])):
        committed_counts: dict[str, int] = {}
        for c in slot["committed"]:
            label = str(c.mask) if c is not None else "none"
            committed_counts[label] = committed_counts.get(label, 0) + 1
        aggregates[f"{agent}|{horizon}"] = {
            "rep_count": len(slot["explore_steps"]),
            "mean_explore_steps": float(np.mean(slot["explore_steps"])),
            "committed_mask_counts": committed_counts,
        } | {
            f"mean_final_regret_{label}": float(np.mean(slot[label]))
            for label, _, _ in _SERIES_VARIANTS
        }

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "experiment_id": config.experiment_id,
        "config": config.to_dict(),
        "outputs": {"summary": summary_path.name, "series": series_path.name},
        "oracle": {
            "opt_mask": opt.opt_set.mask,
            "opt_set": list(opt.opt_set.members),
            "opt_set_display": opt.opt_set.render(one_based=True),
            "opt_value": opt.opt_value,
            "exact": opt.exact,
            "tie_masks": [s.mask for s in opt.ties],
        },
        "seed_derivation": "sha256(master_seed|agent|horizon|rep|purpose), first 8 bytes little-endian",
        "seeds": seeds_manifest,
        "aggregates": aggregates,
        "warnings": warnings,
        "timings": {"total_seconds": round(time.perf_counter() - started, 6), "per_run": timings},
    }
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest
