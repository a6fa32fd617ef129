"""Combinatorial bandits for unconstrained subset selection under full-bandit feedback.

Agents observe only the scalar reward of a played subset. The main agent,
RGL, decides arm by arm whether to add it to a growing set or drop it from a
shrinking one, using randomized greedy decisions on estimated marginal gains,
then exploits the decided set. Baselines (OPT, RND, R-ETCG), stochastic
set-function environments, an exhaustive oracle, regret metrics, and a
reproducible experiment runner round out the package.
"""

from .core import AgentTrace, ArmSet, GroundSet, Phase
from .environments import (
    Environment,
    ExpectedValue,
    LinearMinusCostEnv,
    NetworkRevenueEnv,
    NoiseSpec,
    TabularEnv,
    check_monotone,
    check_submodular_in_expectation,
    default_linear_minus_cost,
    load_network,
    normalize,
)
from .oracle import OptResult, exact_marginal_pair, exact_maximizer
from .algorithms import (
    AgentConfig,
    AgentRunResult,
    RGLDiagnostics,
    compute_sample_budget,
    confidence_radius,
    etcg_budget,
    opt_run,
    retcg_run,
    rgl_anytime_run,
    rgl_phase_decision,
    rgl_run,
    rnd_run,
    run_agent,
)
from .metrics import (
    AggregateResult,
    BaselineKind,
    RegretSeries,
    aggregate,
    moving_average,
    regret_series,
)
from .runner import (
    ConfigError,
    ExperimentConfig,
    RunKey,
    SeedPurpose,
    build_environment,
    derive_seed,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "AgentConfig",
    "AgentRunResult",
    "AgentTrace",
    "AggregateResult",
    "ArmSet",
    "BaselineKind",
    "ConfigError",
    "Environment",
    "ExpectedValue",
    "ExperimentConfig",
    "GroundSet",
    "LinearMinusCostEnv",
    "NetworkRevenueEnv",
    "NoiseSpec",
    "OptResult",
    "Phase",
    "RGLDiagnostics",
    "RegretSeries",
    "RunKey",
    "SeedPurpose",
    "TabularEnv",
    "aggregate",
    "build_environment",
    "check_monotone",
    "check_submodular_in_expectation",
    "compute_sample_budget",
    "confidence_radius",
    "default_linear_minus_cost",
    "derive_seed",
    "etcg_budget",
    "exact_marginal_pair",
    "exact_maximizer",
    "load_network",
    "moving_average",
    "normalize",
    "opt_run",
    "regret_series",
    "retcg_run",
    "rgl_anytime_run",
    "rgl_phase_decision",
    "rgl_run",
    "rnd_run",
    "run_agent",
    "run_experiment",
]
