import numpy as np
import pandas as pd
import pytest

from regretfig import (
    FigureDataError,
    FigureSpec,
    build_figure,
    build_three_panel_data,
    render_three_panel,
)

SUMMARY_COLUMNS = [
    "agent", "horizon", "rep", "committed_mask",
    "final_regret_full_expected", "final_regret_full_sampled",
    "final_regret_half_expected", "final_regret_half_sampled",
    "explore_steps", "m",
]
SERIES_COLUMNS = [
    "agent", "horizon", "rep", "t", "reward", "reward_smoothed",
    "cum_regret_full_expected", "cum_regret_full_sampled",
    "cum_regret_half_expected", "cum_regret_half_sampled",
]


def synth_csvs(tmp_path, agents=("A", "B"), horizons=(10, 20), reps=2):
    rng = np.random.default_rng(0)
    summary_rows, series_rows = [], []
    for agent in agents:
        for T in horizons:
            for rep in range(reps):
                base = (hash(agent) % 7 + 1) * T / 10
                summary_rows.append({
                    "agent": agent, "horizon": T, "rep": rep, "committed_mask": 2,
                    "final_regret_full_expected": base + rep,
                    "final_regret_full_sampled": base + rep + 0.1,
                    "final_regret_half_expected": base / 2,
                    "final_regret_half_sampled": base / 2 + 0.1,
                    "explore_steps": T // 2, "m": 3,
                })
                cum = 0.0
                for t in range(5, T + 1, 5):
                    cum += rng.uniform(0, 1)
                    series_rows.append({
                        "agent": agent, "horizon": T, "rep": rep, "t": t,
                        "reward": rng.uniform(0, 1),
                        "reward_smoothed": rng.uniform(0, 1),
                        "cum_regret_full_expected": cum,
                        "cum_regret_full_sampled": cum + 0.1,
                        "cum_regret_half_expected": cum / 2,
                        "cum_regret_half_sampled": cum / 2 + 0.1,
                    })
    summary = tmp_path / "summary.csv"
    series = tmp_path / "series.csv"
    pd.DataFrame(summary_rows, columns=SUMMARY_COLUMNS).to_csv(summary, index=False)
    pd.DataFrame(series_rows, columns=SERIES_COLUMNS).to_csv(series, index=False)
    return summary, series


def spec_for(tmp_path, **kwargs):
    summary, series = synth_csvs(tmp_path)
    defaults = dict(summary_csv=summary, series_csv=series, out_path=tmp_path / "fig.png")
    return FigureSpec(**{**defaults, **kwargs})


def test_panel_a_uses_configured_horizons_and_rep_means(tmp_path):
    data = build_three_panel_data(spec_for(tmp_path))
    assert data.horizons == (10, 20)
    assert data.largest_horizon == 20
    assert data.agents == ("A", "B")
    summary = pd.read_csv(tmp_path / "summary.csv")
    for agent in data.agents:
        for i, T in enumerate(data.horizons):
            rows = summary[(summary["agent"] == agent) & (summary["horizon"] == T)]
            assert data.final_regret[agent][i] == pytest.approx(
                rows["final_regret_full_expected"].mean()
            )


def test_panel_c_values_match_series_column_exactly(tmp_path):
    data = build_three_panel_data(spec_for(tmp_path))
    series = pd.read_csv(tmp_path / "series.csv")
    for agent in data.agents:
        rows = series[(series["agent"] == agent) & (series["horizon"] == 20)
                      & (series["rep"] == 0)].sort_values("t")
        t, values = data.cumulative_regret[agent]
        assert np.array_equal(values, rows["cum_regret_full_expected"].to_numpy())
        assert np.array_equal(t, rows["t"].to_numpy())


def test_panel_b_averages_smoothed_rewards_across_reps(tmp_path):
    data = build_three_panel_data(spec_for(tmp_path))
    series = pd.read_csv(tmp_path / "series.csv")
    rows = series[(series["agent"] == "A") & (series["horizon"] == 20)]
    want = rows.groupby("t")["reward_smoothed"].mean()
    t, values = data.smoothed_reward["A"]
    assert np.allclose(values, want.to_numpy())


def test_baseline_and_alpha_select_columns(tmp_path):
    spec = spec_for(tmp_path, baseline="sampled", alpha=0.5)
    assert spec.final_column == "final_regret_half_sampled"
    assert spec.cumulative_column == "cum_regret_half_sampled"
    data = build_three_panel_data(spec)
    series = pd.read_csv(tmp_path / "series.csv")
    rows = series[(series["agent"] == "A") & (series["horizon"] == 20)
                  & (series["rep"] == 0)].sort_values("t")
    assert np.array_equal(data.cumulative_regret["A"][1],
                          rows["cum_regret_half_sampled"].to_numpy())


def test_agent_subset_and_order(tmp_path):
    data = build_three_panel_data(spec_for(tmp_path, agents=("B", "A")))
    assert data.agents == ("B", "A")
    single = build_three_panel_data(spec_for(tmp_path, agents=("B",)))
    assert single.agents == ("B",)
    fig = build_figure(single, spec_for(tmp_path, agents=("B",)))
    assert all(len(ax.lines) == 1 for ax in fig.axes)


def test_one_curve_per_agent_in_every_panel(tmp_path):
    spec = spec_for(tmp_path)
    fig = build_figure(build_three_panel_data(spec), spec)
    assert len(fig.axes) == 3
    assert all(len(ax.lines) == 2 for ax in fig.axes)
    assert fig.axes[0].get_xscale() == "log"


def test_validation_errors(tmp_path):
    spec = spec_for(tmp_path)
    with pytest.raises(FigureDataError, match="baseline"):
        FigureSpec(spec.summary_csv, spec.series_csv, spec.out_path, baseline="median")
    with pytest.raises(FigureDataError, match="alpha"):
        FigureSpec(spec.summary_csv, spec.series_csv, spec.out_path, alpha=0.25)
    with pytest.raises(FigureDataError, match="not present"):
        build_three_panel_data(FigureSpec(spec.summary_csv, spec.series_csv, spec.out_path,
                                          agents=("Z",)))
    with pytest.raises(FigureDataError, match="not present"):
        build_three_panel_data(FigureSpec(spec.summary_csv, spec.series_csv, spec.out_path,
                                          horizons=(999,)))

    # drop a required column
    summary = pd.read_csv(spec.summary_csv)
    summary.drop(columns=["final_regret_full_expected"]).to_csv(spec.summary_csv, index=False)
    with pytest.raises(FigureDataError, match="missing column"):
        build_three_panel_data(spec)


def test_empty_data_rejected(tmp_path):
    summary, series = synth_csvs(tmp_path)
    pd.read_csv(summary).iloc[0:0].to_csv(summary, index=False)
    with pytest.raises(FigureDataError, match="no data rows"):
        build_three_panel_data(FigureSpec(summary, series, tmp_path / "fig.png"))


def test_render_writes_png_and_is_byte_stable(tmp_path):
    spec = spec_for(tmp_path)
    render_three_panel(spec)
    first = (tmp_path / "fig.png").read_bytes()
    assert first[:8] == b"\x89PNG\r\n\x1a\n"
    render_three_panel(spec)
    assert (tmp_path / "fig.png").read_bytes() == first


def test_cli_roundtrip(tmp_path, capsys):
    from regretfig.cli import main

    summary, series = synth_csvs(tmp_path)
    out = tmp_path / "cli.png"
    assert main(["--summary", str(summary), "--series", str(series), "--out", str(out),
                 "--baseline", "expected", "--alpha", "1.0", "--agents", "B,A"]) == 0
    assert out.exists()
    assert "2 agent(s)" in capsys.readouterr().out
    assert main(["--summary", str(tmp_path / "nope.csv"), "--series", str(series),
                 "--out", str(out)]) == 1
    assert "error:" in capsys.readouterr().err
