"""Build and render the three-panel figure from experiment CSV files.

The tool is post-hoc and read-only: it consumes a finished experiment's
``summary.csv`` and ``series.csv`` (the CSV schemas are the contract, there
is no dependency on the library that produced them) and renders

- panel (a): final cumulative regret versus horizon T (log-scale T axis),
  averaged over repetitions;
- panel (b): smoothed instantaneous reward versus step t at the largest
  horizon, averaged over repetitions;
- panel (c): cumulative regret versus step t at the largest horizon, taken
  verbatim from repetition 0 (no recomputation, so the plotted values can be
  checked against the CSV column exactly).

One curve per agent in every panel.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

_BASELINES = ("expected", "sampled")
_ALPHAS = {1.0: "full", 0.5: "half"}


class FigureDataError(ValueError):
    """Missing columns, empty selections, or unknown agents/horizons."""


@dataclass(frozen=True)
class FigureSpec:
    """Inputs and choices for one rendering."""

    summary_csv: str | Path
    series_csv: str | Path
    out_path: str | Path
    baseline: str = "expected"
    alpha: float = 1.0
    agents: tuple[str, ...] | None = None  # display order; default: summary order
    horizons: tuple[int, ...] | None = None  # default: every horizon in the summary

    def __post_init__(self) -> None:
        if self.baseline not in _BASELINES:
            raise FigureDataError(
                f"baseline must be one of {_BASELINES}, got {self.baseline!r}"
            )
        if float(self.alpha) not in _ALPHAS:
            raise FigureDataError(
                f"alpha must be one of {sorted(_ALPHAS)} (the CSVs carry full and "
                f"half regret), got {self.alpha}"
            )

    @property
    def final_column(self) -> str:
        return f"final_regret_{_ALPHAS[float(self.alpha)]}_{self.baseline}"

    @property
    def cumulative_column(self) -> str:
        return f"cum_regret_{_ALPHAS[float(self.alpha)]}_{self.baseline}"


@dataclass(frozen=True)
class ThreePanelData:
    """Exactly the values the three panels plot."""

    agents: tuple[str, ...]
    horizons: tuple[int, ...]
    largest_horizon: int
    final_regret: dict[str, np.ndarray]  # per agent, one mean value per horizon
    smoothed_reward: dict[str, tuple[np.ndarray, np.ndarray]]  # (t, mean over reps)
    cumulative_regret: dict[str, tuple[np.ndarray, np.ndarray]]  # (t, rep-0 values)


def _require_columns(frame: pd.DataFrame, needed: list[str], path) -> None:
    missing = [c for c in needed if c not in frame.columns]
    if missing:
        raise FigureDataError(f"{path} is missing column(s) {missing}; has {list(frame.columns)}")


def build_three_panel_data(spec: FigureSpec) -> ThreePanelData:
    """Assemble the plotted values from the CSVs, validating as we go."""
    summary = pd.read_csv(spec.summary_csv)
    series = pd.read_csv(spec.series_csv)
    _require_columns(summary, ["agent", "horizon", "rep", spec.final_column], spec.summary_csv)
    _require_columns(
        series, ["agent", "horizon", "rep", "t", "reward_smoothed", spec.cumulative_column],
        spec.series_csv,
    )
    if summary.empty:
        raise FigureDataError(f"{spec.summary_csv} has no data rows")

    agents = spec.agents or tuple(dict.fromkeys(summary["agent"]))
    unknown = set(agents) - set(summary["agent"])
    if unknown:
        raise FigureDataError(f"agent(s) {sorted(unknown)} not present in {spec.summary_csv}")
    horizons = spec.horizons or tuple(sorted(summary["horizon"].unique()))
    missing_h = set(horizons) - set(summary["horizon"])
    if missing_h:
        raise FigureDataError(f"horizon(s) {sorted(missing_h)} not present in {spec.summary_csv}")
    largest = max(horizons)

    final_regret: dict[str, np.ndarray] = {}
    means = (
        summary[summary["agent"].isin(agents) & summary["horizon"].isin(horizons)]
        .groupby(["agent", "horizon"])[spec.final_column]
        .mean()
    )
    for agent in agents:
        try:
            final_regret[agent] = np.array([means[(agent, T)] for T in horizons])
        except KeyError as exc:
            raise FigureDataError(f"no summary rows for agent {agent!r} at horizon {exc}") from exc

    at_largest = series[series["horizon"] == largest]
    if at_largest.empty:
        raise FigureDataError(f"{spec.series_csv} has no rows at horizon {largest}")
    smoothed: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    cumulative: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    for agent in agents:
        rows = at_largest[at_largest["agent"] == agent]
        if rows.empty:
            raise FigureDataError(f"no series rows for agent {agent!r} at horizon {largest}")
        mean_smoothed = rows.groupby("t")["reward_smoothed"].mean().sort_index()
        smoothed[agent] = (mean_smoothed.index.to_numpy(), mean_smoothed.to_numpy())
        first_rep = rows["rep"].min()
        rep_rows = rows[rows["rep"] == first_rep].sort_values("t")
        cumulative[agent] = (
            rep_rows["t"].to_numpy(),
            rep_rows[spec.cumulative_column].to_numpy(),
        )
    return ThreePanelData(
        agents=tuple(agents),
        horizons=tuple(int(T) for T in horizons),
        largest_horizon=int(largest),
        final_regret=final_regret,
        smoothed_reward=smoothed,
        cumulative_regret=cumulative,
    )


def build_figure(data: ThreePanelData, spec: FigureSpec) -> plt.Figure:
    """Lay the assembled values out as the three-panel figure."""
    fig, axes = plt.subplots(1, 3, figsize=(15.0, 4.2), constrained_layout=True)
    regret_label = ("cumulative regret" if float(spec.alpha) == 1.0
                    else "cumulative 1/2-regret") + f" ({spec.baseline} baseline)"

    ax = axes[0]
    for agent in data.agents:
        ax.plot(data.horizons, data.final_regret[agent], marker="o", label=agent)
    ax.set_xscale("log")
    ax.set_xlabel("horizon T")
    ax.set_ylabel(f"final {regret_label}")
    ax.set_title("final regret vs horizon")

    ax = axes[1]
    for agent in data.agents:
        t, values = data.smoothed_reward[agent]
        ax.plot(t, values, label=agent)
    ax.set_xlabel("step t")
    ax.set_ylabel("smoothed instantaneous reward")
    ax.set_title(f"rewards at T={data.largest_horizon}")

    ax = axes[2]
    for agent in data.agents:
        t, values = data.cumulative_regret[agent]
        ax.plot(t, values, label=agent)
    ax.set_xlabel("step t")
    ax.set_ylabel(regret_label)
    ax.set_title(f"regret over time at T={data.largest_horizon}")

    axes[0].legend()
    return fig


def render_three_panel(spec: FigureSpec) -> ThreePanelData:
    """Render the figure to ``spec.out_path`` and return the plotted values."""
    data = build_three_panel_data(spec)
    fig = build_figure(data, spec)
    out = Path(spec.out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    try:
        fig.savefig(out, dpi=130)
    finally:
        plt.close(fig)
    return data
