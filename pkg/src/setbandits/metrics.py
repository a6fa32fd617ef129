"""Regret series, reward smoothing, and cross-repetition aggregation.

Regret at step ``t`` is ``alpha * (baseline reward) - (trace reward)``:
``alpha = 1`` gives full regret against the optimal set, ``alpha = 1/2`` the
half-optimum benchmark that matches what polynomial-query maximization of a
non-monotone objective can guarantee. The baseline is either the exact
expected value of the optimal set or a paired independent reward stream
sampled for it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .core import AgentTrace, ArmSet
from .oracle import OptResult


class BaselineKind(Enum):
    SAMPLED_OPT = "sampled-opt"
    EXPECTED_OPT = "expected-opt"


@dataclass(frozen=True)
class RegretSeries:
    """Per-step and cumulative regret of one run against one baseline."""

    per_step: np.ndarray
    cumulative: np.ndarray
    baseline_kind: BaselineKind
    alpha: float

    def __post_init__(self) -> None:
        per_step = np.ascontiguousarray(self.per_step, dtype=np.float64)
        cumulative = np.ascontiguousarray(self.cumulative, dtype=np.float64)
        if per_step.shape != cumulative.shape or per_step.ndim != 1:
            raise ValueError("per_step and cumulative must be 1-d arrays of equal length")
        object.__setattr__(self, "per_step", per_step)
        object.__setattr__(self, "cumulative", cumulative)
        per_step.setflags(write=False)
        cumulative.setflags(write=False)

    @property
    def horizon(self) -> int:
        return len(self.per_step)

    @property
    def final(self) -> float:
        return float(self.cumulative[-1]) if self.horizon else 0.0


def regret_series(
    trace: AgentTrace,
    opt: OptResult,
    alpha: float = 1.0,
    baseline: BaselineKind = BaselineKind.EXPECTED_OPT,
    opt_rewards: Sequence[float] | None = None,
) -> RegretSeries:
    """Regret of ``trace`` against the optimal set, at approximation factor ``alpha``.

    ``BaselineKind.SAMPLED_OPT`` compares against ``opt_rewards``, an
    independent reward stream for the optimal set of the same length as the
    trace; ``BaselineKind.EXPECTED_OPT`` uses the exact value
    ``opt.opt_value`` at every step.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    if baseline is BaselineKind.SAMPLED_OPT:
        if opt_rewards is None:
            raise ValueError("SAMPLED_OPT baseline requires opt_rewards")
        base = np.ascontiguousarray(opt_rewards, dtype=np.float64)
        if base.shape != (trace.horizon,):
            raise ValueError(
                f"opt_rewards length {base.shape} does not match horizon {trace.horizon}"
            )
    else:
        base = np.full(trace.horizon, opt.opt_value)
    per_step = alpha * base - trace.rewards
    return RegretSeries(per_step, np.cumsum(per_step), baseline, alpha)


def moving_average(series: Sequence[float], window: int) -> np.ndarray:
    """Trailing mean with a partial window at the start.

    Entry ``t`` averages the last ``window`` values up to and including ``t``;
    for ``t < window - 1`` it averages whatever is available so far.
    """
    if window < 1:
        raise ValueError(f"window must be positive, got {window}")
    x = np.ascontiguousarray(series, dtype=np.float64)
    if x.size == 0:
        return x.copy()
    csum = np.cumsum(x)
    shifted = np.zeros_like(csum)
    if window < len(x):
        shifted[window:] = csum[:-window]
    denom = np.minimum(np.arange(1, len(x) + 1), window)
    return (csum - shifted) / denom


@dataclass(frozen=True)
class AggregateResult:
    """Pointwise mean over repetitions plus per-repetition summaries."""

    mean_cumulative: np.ndarray
    rep_count: int
    per_rep_final: tuple[float, ...]
    committed_sets: Counter


def aggregate(
    series_list: Sequence[RegretSeries], committed: Sequence[ArmSet | None]
) -> AggregateResult:
    """Average cumulative regret pointwise across repetitions.

    All series must share horizon, alpha, and baseline kind. ``committed``
    holds one entry per repetition; runs that never committed contribute
    nothing to the committed-set tally.
    """
    if not series_list:
        raise ValueError("need at least one repetition to aggregate")
    if len(committed) != len(series_list):
        raise ValueError("committed must have one entry per series")
    first = series_list[0]
    for s in series_list[1:]:
        if s.horizon != first.horizon:
            raise ValueError("all series must have the same horizon")
        if s.alpha != first.alpha or s.baseline_kind is not first.baseline_kind:
            raise ValueError("cannot aggregate series with mixed alpha or baseline kinds")
    stacked = np.vstack([s.cumulative for s in series_list])
    return AggregateResult(
        mean_cumulative=stacked.mean(axis=0),
        rep_count=len(series_list),
        per_rep_final=tuple(s.final for s in series_list),
        committed_sets=Counter(c for c in committed if c is not None),
    )
