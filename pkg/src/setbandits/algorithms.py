"""Online agents for unconstrained subset selection under full-bandit feedback.

The main agent, RGL (randomized greedy learning), sweeps the arms once. For
arm ``i`` it keeps two nested sets, a growing ``X`` (initially empty) and a
shrinking ``Y`` (initially the full ground set), estimates the add-marginal
``a_bar = f(X + u_i) - f(X)`` and the remove-marginal
``b_bar = f(Y - u_i) - f(Y)`` from ``m`` fresh samples of each of the four
sets, then adds the arm to ``X`` with probability
``max(a_bar,0) / (max(a_bar,0) + max(b_bar,0))`` (probability 1 when both
clip to zero) or else removes it from ``Y``. After the sweep ``X == Y`` and
that set is exploited for the rest of the horizon.

Baselines: OPT (plays a given set forever), RND (fresh uniform subset each
step), and R-ETCG (explore-then-commit greedy on a uniformly random
cardinality budget). A doubling-trick wrapper restarts RGL on geometrically
growing windows when the total horizon is unknown upfront.

Every agent takes the environment-noise generator as ``rng`` and draws its
own decisions (acceptance coins, random subsets, budgets) from a separate
``coin_rng`` stream, so replaying a seed with a different noise level leaves
the decision coins untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AgentTrace, ArmSet
from .environments import Environment

AGENT_KINDS = ("RGL", "OPT", "RND", "R-ETCG", "RGL-anytime")


def compute_sample_budget(T: int) -> int:
    """Per-set sample count for RGL at horizon ``T``:
    ``ceil((T * sqrt(25/32 * ln T))^(2/3))``.

    Balances the 4*n*m exploration steps against the concentration of the
    marginal estimates; natural logarithm, ``T >= 2``.
    """
    T = int(T)
    if T < 2:
        raise ValueError(f"horizon must be at least 2, got {T}")
    return math.ceil((T * math.sqrt(25.0 / 32.0 * math.log(T))) ** (2.0 / 3.0))


def confidence_radius(T: int, m: int) -> float:
    """Equal-sized confidence radius ``sqrt(2 * ln(T) / m)`` of the estimates."""
    if T < 2 or m < 1:
        raise ValueError(f"need T >= 2 and m >= 1, got T={T}, m={m}")
    return math.sqrt(2.0 * math.log(T) / m)


def etcg_budget(T: int, n: int, k: int) -> int:
    """Per-candidate sample count for R-ETCG:
    ``ceil((T * sqrt(2 ln T) / (n + 2nk * sqrt(2 ln T)))^(2/3))``."""
    T, n, k = int(T), int(n), int(k)
    if T < 2:
        raise ValueError(f"horizon must be at least 2, got {T}")
    if n < 1:
        raise ValueError(f"need at least one arm, got n={n}")
    if k < 0:
        raise ValueError(f"cardinality budget must be nonnegative, got k={k}")
    root = math.sqrt(2.0 * math.log(T))
    return math.ceil((T * root / (n + 2.0 * n * k * root)) ** (2.0 / 3.0))


def rgl_phase_decision(
    a_bar: float, b_bar: float, rng: np.random.Generator
) -> tuple[bool, float]:
    """One randomized greedy accept/remove decision.

    Clips the estimates at zero and accepts (adds the arm) with probability
    ``a'/(a'+b')``; when both clip to zero the probability is 1. Always
    consumes exactly one uniform draw so replay alignment is stable.
    """
    a_prime = max(a_bar, 0.0)
    b_prime = max(b_bar, 0.0)
    denom = a_prime + b_prime
    p = a_prime / denom if denom > 0.0 else 1.0
    accepted = bool(rng.random() < p)
    return accepted, p


@dataclass(frozen=True)
class PhaseRecord:
    """Diagnostics of one completed RGL phase (arm decision)."""

    arm: int
    a_bar: float
    b_bar: float
    a_prime: float
    b_prime: float
    p: float
    accepted: bool
    x: ArmSet
    y: ArmSet


@dataclass(frozen=True)
class RGLDiagnostics:
    """Budget, confidence radius, and per-phase records of an RGL run.

    ``truncated`` flags runs whose horizon was too short for the full
    ``4*n*m`` exploration schedule; such runs carry records only for the
    phases that completed and never commit.
    """

    m: int
    rad: float
    phases: tuple[PhaseRecord, ...]
    truncated: bool


def _spawn_coin_rng(rng: np.random.Generator) -> np.random.Generator:
    return rng.spawn(1)[0]


def _rgl_sweep(
    env: Environment,
    horizon: int,
    play_steps: int,
    env_rng: np.random.Generator,
    coin_rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, ArmSet | None, RGLDiagnostics]:
    """One RGL instance planned for ``horizon`` but playing ``play_steps`` steps.

    ``play_steps < horizon`` happens inside the doubling-trick wrapper when
    the final window is cut short.
    """
    n = env.ground.n
    m = compute_sample_budget(horizon)
    rad = confidence_radius(horizon, m)
    actions = np.empty(play_steps, dtype=np.uint64)
    rewards = np.empty(play_steps)
    explore = np.zeros(play_steps, dtype=bool)

    x = env.ground.empty()
    y = env.ground.full()
    phases: list[PhaseRecord] = []
    pos = 0
    for arm in range(n):
        if pos >= play_steps:
            break
        x_add = x.with_arm(arm)
        y_drop = y.without_arm(arm)
        room = play_steps - pos
        iters = min(m, room // 4)
        tail = room - 4 * iters if iters < m else 0
        cycle = (x_add, x, y, y_drop)
        counts = tuple(iters + (1 if tail > off else 0) for off in range(4))
        draws = tuple(
            env.sample_many(s, env_rng, c) if c else np.empty(0)
            for s, c in zip(cycle, counts)
        )
        length = 4 * iters + tail
        for off, (s, d) in enumerate(zip(cycle, draws)):
            rewards[pos + off : pos + length : 4] = d
            actions[pos + off : pos + length : 4] = s.mask
        explore[pos : pos + length] = True
        pos += length
        if iters < m:
            break  # horizon ran out mid-phase; no decision for this arm
        f_add, f_x, f_y, f_drop = draws
        a_bar = float(np.mean(f_add - f_x))
        b_bar = float(np.mean(f_drop - f_y))
        accepted, p = rgl_phase_decision(a_bar, b_bar, coin_rng)
        if accepted:
            x = x_add
        else:
            y = y_drop
        phases.append(
            PhaseRecord(arm, a_bar, b_bar, max(a_bar, 0.0), max(b_bar, 0.0), p, accepted, x, y)
        )

    committed: ArmSet | None = None
    if len(phases) == n:
        assert x.mask == y.mask
        committed = x
        remaining = play_steps - pos
        if remaining > 0:
            rewards[pos:] = env.sample_many(committed, env_rng, remaining)
            actions[pos:] = committed.mask
    diag = RGLDiagnostics(m, rad, tuple(phases), truncated=play_steps < 4 * n * m)
    return actions, rewards, explore, committed, diag


def rgl_run(
    env: Environment,
    T: int,
    rng: np.random.Generator,
    *,
    coin_rng: np.random.Generator | None = None,
    agent_id: str = "RGL",
    seed: int = 0,
) -> tuple[AgentTrace, RGLDiagnostics]:
    """Run RGL for ``T`` steps and return the trace plus phase diagnostics.

    Exploration takes exactly ``4*n*m`` steps when they fit in ``T``; the
    committed set is then exploited for the remainder. Shorter horizons
    truncate exploration at step ``T`` without committing.
    """
    T = int(T)
    if T < 2:
        raise ValueError(f"horizon must be at least 2, got {T}")
    if coin_rng is None:
        coin_rng = _spawn_coin_rng(rng)
    actions, rewards, explore, committed, diag = _rgl_sweep(env, T, T, rng, coin_rng)
    trace = AgentTrace(env.ground, actions, rewards, explore, committed, agent_id, seed)
    return trace, diag


def opt_run(
    env: Environment,
    T: int,
    opt_set: ArmSet,
    rng: np.random.Generator,
    *,
    agent_id: str = "OPT",
    seed: int = 0,
) -> AgentTrace:
    """Play ``opt_set`` at every step (pure exploitation baseline)."""
    T = int(T)
    if T < 1:
        raise ValueError(f"horizon must be positive, got {T}")
    if opt_set.n != env.ground.n:
        raise ValueError("opt_set belongs to a different ground set")
    rewards = env.sample_many(opt_set, rng, T)
    actions = np.full(T, opt_set.mask, dtype=np.uint64)
    explore = np.zeros(T, dtype=bool)
    return AgentTrace(env.ground, actions, rewards, explore, opt_set, agent_id, seed)


def rnd_run(
    env: Environment,
    T: int,
    rng: np.random.Generator,
    *,
    coin_rng: np.random.Generator | None = None,
    agent_id: str = "RND",
    seed: int = 0,
) -> AgentTrace:
    """Play a fresh uniform subset each step (each arm kept with probability 1/2)."""
    T = int(T)
    if T < 1:
        raise ValueError(f"horizon must be positive, got {T}")
    if coin_rng is None:
        coin_rng = _spawn_coin_rng(rng)
    n = env.ground.n
    masks = coin_rng.integers(0, 1 << n, size=T, dtype=np.uint64, endpoint=False)
    rewards = env.sample_batch(masks, rng)
    explore = np.ones(T, dtype=bool)
    return AgentTrace(env.ground, masks, np.clip(rewards, 0.0, 1.0), explore, None, agent_id, seed)


def retcg_run(
    env: Environment,
    T: int,
    rng: np.random.Generator,
    *,
    coin_rng: np.random.Generator | None = None,
    k: int | None = None,
    agent_id: str = "R-ETCG",
    seed: int = 0,
) -> tuple[AgentTrace, int]:
    """Explore-then-commit greedy with a random cardinality budget.

    Draws ``k`` uniformly from {0, ..., n} (or uses the forced value), then
    greedily grows a set over ``k`` phases, playing every remaining candidate
    arm ``m`` times per phase and keeping the best empirical mean (ties break
    to the lowest arm index). The final set is exploited; ``k = 0`` skips the
    budget entirely and exploits the empty set. When the horizon runs out
    mid-exploration the trace simply ends without committing.
    """
    T = int(T)
    if T < 2:
        raise ValueError(f"horizon must be at least 2, got {T}")
    if coin_rng is None:
        coin_rng = _spawn_coin_rng(rng)
    n = env.ground.n
    if k is None:
        k = int(coin_rng.integers(0, n + 1))
    elif not 0 <= k <= n:
        raise ValueError(f"cardinality budget k={k} outside 0..{n}")

    empty = env.ground.empty()
    if k == 0:
        rewards = env.sample_many(empty, rng, T)
        actions = np.full(T, empty.mask, dtype=np.uint64)
        explore = np.zeros(T, dtype=bool)
        return AgentTrace(env.ground, actions, rewards, explore, empty, agent_id, seed), 0

    m = etcg_budget(T, n, k)
    actions = np.empty(T, dtype=np.uint64)
    rewards = np.empty(T)
    explore = np.zeros(T, dtype=bool)
    pos = 0
    s = empty
    committed: ArmSet | None = None
    for _ in range(k):
        candidates = [a for a in range(n) if not s.contains(a)]
        means = np.empty(len(candidates))
        complete = True
        for ci, a in enumerate(candidates):
            count = min(m, T - pos)
            cand = s.with_arm(a)
            draws = env.sample_many(cand, rng, count)
            rewards[pos : pos + count] = draws
            actions[pos : pos + count] = cand.mask
            explore[pos : pos + count] = True
            pos += count
            if count < m:
                complete = False
                break
            means[ci] = draws.mean()
        if not complete:
            break
        s = s.with_arm(candidates[int(np.argmax(means))])
    else:
        committed = s

    if committed is not None and pos < T:
        rewards[pos:] = env.sample_many(committed, rng, T - pos)
        actions[pos:] = committed.mask
    trace = AgentTrace(env.ground, actions, rewards, explore, committed, agent_id, seed)
    return trace, k


def rgl_anytime_run(
    env: Environment,
    total_steps: int,
    T0: int,
    rng: np.random.Generator,
    *,
    coin_rng: np.random.Generator | None = None,
    agent_id: str = "RGL-anytime",
    seed: int = 0,
) -> AgentTrace:
    """Horizon-free RGL via the geometric doubling trick.

    Restarts RGL from scratch on windows of length ``T0 * 2**i`` for
    i = 0, 1, 2, ... (so restarts land at steps T0+1, 3*T0+1, 7*T0+1, ...),
    each restart computing its sample budget from its own window length. The
    final window is truncated at ``total_steps``. The trace carries no single
    committed set.
    """
    total_steps, T0 = int(total_steps), int(T0)
    if T0 < 2:
        raise ValueError(f"T0 must be at least 2, got {T0}")
    if total_steps < 1:
        raise ValueError(f"total_steps must be positive, got {total_steps}")
    if coin_rng is None:
        coin_rng = _spawn_coin_rng(rng)

    pieces_a, pieces_r, pieces_e = [], [], []
    pos = 0
    window = 0
    while pos < total_steps:
        length = T0 * (1 << window)
        play = min(length, total_steps - pos)
        actions, rewards, explore, _, _ = _rgl_sweep(env, length, play, rng, coin_rng)
        pieces_a.append(actions)
        pieces_r.append(rewards)
        pieces_e.append(explore)
        pos += play
        window += 1
    return AgentTrace(
        env.ground,
        np.concatenate(pieces_a),
        np.concatenate(pieces_r),
        np.concatenate(pieces_e),
        None,
        agent_id,
        seed,
    )


@dataclass(frozen=True)
class AgentConfig:
    """One agent's run parameters: kind, horizon, seed, and kind-specific extras."""

    kind: str
    horizon: int
    seed: int = 0
    opt_set: ArmSet | None = None
    t0: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in AGENT_KINDS:
            raise ValueError(f"unknown agent kind {self.kind!r}; expected one of {AGENT_KINDS}")
        if self.horizon < 1:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if (self.kind == "OPT") != (self.opt_set is not None):
            raise ValueError("opt_set is required for OPT and only for OPT")
        if (self.kind == "RGL-anytime") != (self.t0 is not None):
            raise ValueError("t0 is required for RGL-anytime and only for RGL-anytime")


@dataclass(frozen=True)
class AgentRunResult:
    """Trace plus whatever extras the agent kind produces."""

    trace: AgentTrace
    m: int = 0
    diagnostics: RGLDiagnostics | None = None
    chosen_k: int | None = None


def run_agent(
    env: Environment,
    config: AgentConfig,
    rng: np.random.Generator,
    coin_rng: np.random.Generator | None = None,
) -> AgentRunResult:
    """Dispatch one run through the uniform agent interface."""
    T = config.horizon
    if config.kind == "RGL":
        trace, diag = rgl_run(env, T, rng, coin_rng=coin_rng, seed=config.seed)
        return AgentRunResult(trace, m=diag.m, diagnostics=diag)
    if config.kind == "OPT":
        assert config.opt_set is not None
        return AgentRunResult(opt_run(env, T, config.opt_set, rng, seed=config.seed))
    if config.kind == "RND":
        return AgentRunResult(rnd_run(env, T, rng, coin_rng=coin_rng, seed=config.seed))
    if config.kind == "R-ETCG":
        trace, k = retcg_run(env, T, rng, coin_rng=coin_rng, seed=config.seed)
        return AgentRunResult(trace, m=etcg_budget(T, env.ground.n, k) if k else 0, chosen_k=k)
    if config.kind == "RGL-anytime":
        assert config.t0 is not None
        trace = rgl_anytime_run(env, T, config.t0, rng, coin_rng=coin_rng, seed=config.seed)
        return AgentRunResult(trace)
    raise AssertionError(f"unhandled agent kind {config.kind!r}")
