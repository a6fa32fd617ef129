"""Stochastic set-function environments and structural checkers.

Every environment draws bounded rewards in [0, 1] for a played subset and
exposes expected values where they are analytically available. Sampling takes
an externally supplied :class:`numpy.random.Generator`, so concurrent
repetitions each own a private stream; environments themselves are immutable
after construction.
"""

from __future__ import annotations

import math
import warnings
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .core import ArmSet, GroundSet

MC_DEFAULT_SAMPLES = 1_000_000
CHECKER_MAX_ARMS = 20
CHECKER_TOLERANCE = 1e-12
_BATCH_CHUNK = 65536


class ExpectedValue(NamedTuple):
    """An expected reward together with its provenance.

    ``exact`` is True for closed-form / table values and False for
    Monte-Carlo estimates, in which case ``std_error`` reports the standard
    error of the mean.
    """

    value: float
    exact: bool
    std_error: float | None = None


@dataclass(frozen=True)
class NoiseSpec:
    """Additive Gaussian reward noise with mean ``mu`` and scale ``sigma``."""

    mu: float = 0.0
    sigma: float = 0.0

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")


class Environment(ABC):
    """A stochastic set-function oracle over a fixed ground set.

    Rewards are i.i.d. conditioned on the played subset and always clamped
    into [0, 1]. ``expected_value`` returns the design mean exactly where one
    exists, otherwise a Monte-Carlo estimate with a declared sample count.
    """

    @property
    @abstractmethod
    def ground(self) -> GroundSet: ...

    @property
    @abstractmethod
    def has_exact_expectations(self) -> bool:
        """True when ``expected_value`` is exact for every subset."""

    @abstractmethod
    def sample_many(self, s: ArmSet, rng: np.random.Generator, size: int) -> np.ndarray:
        """Draw ``size`` independent rewards for playing ``s``."""

    @abstractmethod
    def expected_value(
        self,
        s: ArmSet,
        *,
        mc_samples: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> ExpectedValue: ...

    def sample(self, s: ArmSet, rng: np.random.Generator) -> float:
        """Draw one reward for playing ``s``."""
        return float(self.sample_many(s, rng, 1)[0])

    def sample_batch(self, masks: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        """Draw one reward per entry of ``masks`` (possibly all different sets)."""
        n = self.ground.n
        return np.array(
            [self.sample(ArmSet(int(m), n), rng) for m in masks], dtype=np.float64
        )

    def expected_values_all(self) -> np.ndarray | None:
        """Exact expected values for every subset, indexed by bitmask.

        Returns None when exact values are unavailable or the ground set is
        too large to enumerate.
        """
        if not self.has_exact_expectations or self.ground.n > CHECKER_MAX_ARMS:
            return None
        n = self.ground.n
        return np.array(
            [self.expected_value(ArmSet(mask, n)).value for mask in range(1 << n)]
        )

    def mc_expected_value(
        self,
        s: ArmSet,
        rng: np.random.Generator | None = None,
        n_samples: int = MC_DEFAULT_SAMPLES,
    ) -> ExpectedValue:
        """Monte-Carlo estimate of the true (clamped) mean reward of ``s``."""
        if rng is None:
            rng = np.random.default_rng([s.mask, s.n, 0x5E7BA0D1])
        draws = self.sample_many(s, rng, n_samples)
        se = float(draws.std(ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else None
        return ExpectedValue(float(draws.mean()), False, se)

    def _check_set(self, s: ArmSet) -> None:
        if s.n != self.ground.n:
            raise ValueError(
                f"subset over n={s.n} arms does not match environment n={self.ground.n}"
            )


class TabularEnv(Environment):
    """Environment defined by a full table of per-subset design means.

    A reward for subset ``S`` is ``min(max(g(S) + eps, 0), 1)`` with
    ``eps ~ N(mu, sigma)``. ``expected_value`` reports the design mean
    ``g(S) + mu`` (clamped); near the boundaries the clamp biases the true
    sample mean away from it, which :meth:`Environment.mc_expected_value`
    measures.
    """

    def __init__(self, ground: GroundSet, table: Sequence[float], noise: NoiseSpec):
        g = np.ascontiguousarray(table, dtype=np.float64)
        if g.shape != (1 << ground.n,):
            raise ValueError(
                f"table must cover all {1 << ground.n} subsets, got {g.shape[0]} entries"
            )
        if g.min() < 0.0 or g.max() > 1.0:
            raise ValueError("table values must lie in [0, 1]")
        g.setflags(write=False)
        self._ground = ground
        self._g = g
        self._noise = noise

    @property
    def ground(self) -> GroundSet:
        return self._ground

    @property
    def noise(self) -> NoiseSpec:
        return self._noise

    @property
    def table(self) -> np.ndarray:
        return self._g

    @property
    def has_exact_expectations(self) -> bool:
        return True

    def g(self, s: ArmSet) -> float:
        self._check_set(s)
        return float(self._g[s.mask])

    def sample_many(self, s: ArmSet, rng: np.random.Generator, size: int) -> np.ndarray:
        self._check_set(s)
        loc = self._g[s.mask] + self._noise.mu
        if self._noise.sigma == 0.0:
            return np.full(size, min(max(loc, 0.0), 1.0))
        return np.clip(rng.normal(loc, self._noise.sigma, size), 0.0, 1.0)

    def sample_batch(self, masks: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        loc = self._g[np.asarray(masks, dtype=np.int64)] + self._noise.mu
        if self._noise.sigma == 0.0:
            return np.clip(loc, 0.0, 1.0)
        return np.clip(rng.normal(loc, self._noise.sigma), 0.0, 1.0)

    def expected_value(
        self,
        s: ArmSet,
        *,
        mc_samples: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> ExpectedValue:
        self._check_set(s)
        loc = float(self._g[s.mask]) + self._noise.mu
        return ExpectedValue(min(max(loc, 0.0), 1.0), True)

    def expected_values_all(self) -> np.ndarray | None:
        return np.clip(self._g + self._noise.mu, 0.0, 1.0)

    @classmethod
    def from_dict(cls, spec: Mapping) -> "TabularEnv":
        """Build from ``{"n": ..., "sigma": ..., "mu": ..., "table": [[mask, g], ...]}``.

        The table must list every subset bitmask exactly once.
        """
        try:
            n = int(spec["n"])
            rows = spec["table"]
            sigma = float(spec.get("sigma", 0.0))
            mu = float(spec.get("mu", 0.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed tabular environment spec: {exc}") from exc
        ground = GroundSet(n)
        g = np.full(1 << n, np.nan)
        for row in rows:
            mask, value = int(row[0]), float(row[1])
            if not 0 <= mask < (1 << n):
                raise ValueError(f"subset bitmask {mask} out of range for n={n}")
            if not np.isnan(g[mask]):
                raise ValueError(f"duplicate table row for bitmask {mask}")
            g[mask] = value
        missing = np.flatnonzero(np.isnan(g))
        if missing.size:
            raise ValueError(f"table is missing {missing.size} subset(s), e.g. bitmask {missing[0]}")
        return cls(ground, g, NoiseSpec(mu=mu, sigma=sigma))


class LinearMinusCostEnv(Environment):
    """Per-arm linear reward minus a cardinality cost, with one special subset.

    Playing ``S`` draws a clamped Gaussian reward ``r(a)`` per member arm and
    returns ``min(max(sum_a r(a) - |S|/k_star, 0), 1)``; the designated
    ``special_set`` deterministically pays 1. With ``sigma == 0`` all
    expectations are closed-form; otherwise they are Monte-Carlo estimates
    (the special set stays exact).
    """

    def __init__(
        self,
        mu_per_arm: Sequence[float],
        sigma: float,
        k_star: int,
        special_set: ArmSet | None = None,
        ground: GroundSet | None = None,
    ):
        mu = np.ascontiguousarray(mu_per_arm, dtype=np.float64)
        if ground is None:
            ground = GroundSet(len(mu))
        if mu.shape != (ground.n,):
            raise ValueError("mu_per_arm must have one entry per arm")
        if mu.min() < 0.0 or mu.max() > 1.0:
            raise ValueError("per-arm means must lie in [0, 1]")
        if sigma < 0:
            raise ValueError("sigma must be nonnegative")
        if k_star < 1:
            raise ValueError("k_star must be a positive integer")
        if special_set is not None and special_set.n != ground.n:
            raise ValueError("special_set belongs to a different ground set")
        mu.setflags(write=False)
        self._ground = ground
        self._mu = mu
        self._sigma = float(sigma)
        self._k_star = int(k_star)
        self._special = special_set

    @property
    def ground(self) -> GroundSet:
        return self._ground

    @property
    def mu_per_arm(self) -> np.ndarray:
        return self._mu

    @property
    def sigma(self) -> float:
        return self._sigma

    @property
    def k_star(self) -> int:
        return self._k_star

    @property
    def special_set(self) -> ArmSet | None:
        return self._special

    @property
    def has_exact_expectations(self) -> bool:
        return self._sigma == 0.0

    def _design_value(self, s: ArmSet) -> float:
        if self._special is not None and s == self._special:
            return 1.0
        if s.size == 0:
            return 0.0
        total = float(np.clip(self._mu[list(s.members)], 0.0, 1.0).sum())
        return min(max(total - s.size / self._k_star, 0.0), 1.0)

    def sample_many(self, s: ArmSet, rng: np.random.Generator, size: int) -> np.ndarray:
        self._check_set(s)
        if self._special is not None and s == self._special:
            return np.ones(size)
        k = s.size
        if k == 0:
            return np.zeros(size)
        mu_sel = self._mu[list(s.members)]
        if self._sigma == 0.0:
            return np.full(size, self._design_value(s))
        draws = np.clip(rng.normal(mu_sel, self._sigma, size=(size, k)), 0.0, 1.0)
        return np.clip(draws.sum(axis=1) - k / self._k_star, 0.0, 1.0)

    def sample_batch(self, masks: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.uint64)
        n = self._ground.n
        out = np.empty(len(masks))
        special_mask = np.uint64(self._special.mask) if self._special is not None else None
        for start in range(0, len(masks), _BATCH_CHUNK):
            chunk = masks[start : start + _BATCH_CHUNK]
            member = ((chunk[:, None] >> np.arange(n, dtype=np.uint64)) & np.uint64(1)).astype(
                bool
            )
            sizes = member.sum(axis=1)
            if self._sigma == 0.0:
                vals = np.where(member, np.clip(self._mu, 0.0, 1.0), 0.0).sum(axis=1)
            else:
                draws = np.clip(rng.normal(self._mu, self._sigma, size=member.shape), 0.0, 1.0)
                vals = np.where(member, draws, 0.0).sum(axis=1)
            res = np.clip(vals - sizes / self._k_star, 0.0, 1.0)
            res[sizes == 0] = 0.0
            if special_mask is not None:
                res[chunk == special_mask] = 1.0
            out[start : start + _BATCH_CHUNK] = res
        return out

    def expected_value(
        self,
        s: ArmSet,
        *,
        mc_samples: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> ExpectedValue:
        self._check_set(s)
        if (self._special is not None and s == self._special) or s.size == 0:
            return ExpectedValue(self._design_value(s), True)
        if self._sigma == 0.0:
            return ExpectedValue(self._design_value(s), True)
        return self.mc_expected_value(s, rng, mc_samples or MC_DEFAULT_SAMPLES)


def default_linear_minus_cost(sigma: float = 0.02) -> LinearMinusCostEnv:
    """The bundled 8-arm instance: means 0..0.35 in steps of 0.05, k*=6.

    Its special subset is arms {5,6,7,8} in 1-based labels ({4,5,6,7}
    0-based), which deterministically pays 1 and is the unique maximizer.
    """
    mu = np.arange(8) * 0.05
    special = ArmSet.from_indices([4, 5, 6, 7], 8)
    return LinearMinusCostEnv(mu, sigma=sigma, k_star=6, special_set=special)


class NetworkRevenueEnv(Environment):
    """Community-influence revenue on a graph, minus a per-node cost.

    The raw value of ``S`` is a Gaussian around the sum over communities of
    the maximum member degree in ``S`` (empty intersections contribute 0)
    minus ``alpha * |S|``. Raw values are affinely rescaled by
    ``value_bounds`` and clamped so sampled rewards lie in [0, 1].
    ``expected_value`` reports the rescaled noiseless design mean.
    """

    def __init__(
        self,
        ground: GroundSet,
        degrees: Sequence[int],
        communities: Sequence[ArmSet],
        alpha: float,
        sigma: float,
        value_bounds: tuple[float, float],
    ):
        deg = np.ascontiguousarray(degrees, dtype=np.float64)
        if deg.shape != (ground.n,):
            raise ValueError("degrees must have one entry per node")
        if deg.min() < 0:
            raise ValueError("degrees must be nonnegative")
        union = 0
        for c in communities:
            if c.n != ground.n:
                raise ValueError("community over a different ground set")
            if union & c.mask:
                raise ValueError("communities overlap; they must partition the node set")
            union |= c.mask
        if union != ground.full_mask:
            raise ValueError("communities do not cover every node")
        if alpha < 0:
            raise ValueError("alpha must be nonnegative")
        if sigma < 0:
            raise ValueError("sigma must be nonnegative")
        f_min, f_max = float(value_bounds[0]), float(value_bounds[1])
        if not f_max > f_min:
            raise ValueError(f"value_bounds must satisfy f_max > f_min, got {value_bounds}")
        deg.setflags(write=False)
        self._ground = ground
        self._degrees = deg
        self._communities = tuple(communities)
        self._alpha = float(alpha)
        self._sigma = float(sigma)
        self._bounds = (f_min, f_max)
        # per community: member indices sorted by degree descending, for fast maxima
        self._by_degree = tuple(
            tuple(sorted(c.members, key=lambda v: (-deg[v], v))) for c in self._communities
        )

    @property
    def ground(self) -> GroundSet:
        return self._ground

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    @property
    def communities(self) -> tuple[ArmSet, ...]:
        return self._communities

    @property
    def alpha(self) -> float:
        return self._alpha

    @property
    def sigma(self) -> float:
        return self._sigma

    @property
    def value_bounds(self) -> tuple[float, float]:
        return self._bounds

    @property
    def has_exact_expectations(self) -> bool:
        return True

    def raw_mean(self, s: ArmSet) -> float:
        """Noiseless revenue before rescaling: sum of community maxima minus cost."""
        self._check_set(s)
        influence = 0.0
        for c in self._communities:
            inter = s.mask & c.mask
            if inter:
                influence += max(self._degrees[v] for v in ArmSet(inter, s.n).members)
        return influence - self._alpha * s.size

    def _normalize(self, raw: np.ndarray | float):
        f_min, f_max = self._bounds
        return np.clip((raw - f_min) / (f_max - f_min), 0.0, 1.0)

    def sample_many(self, s: ArmSet, rng: np.random.Generator, size: int) -> np.ndarray:
        mean = self.raw_mean(s)
        if self._sigma == 0.0:
            return np.full(size, float(self._normalize(mean)))
        return self._normalize(rng.normal(mean, self._sigma, size))

    def sample_batch(self, masks: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.uint64)
        influence = np.zeros(len(masks))
        for order in self._by_degree:
            remaining = np.ones(len(masks), dtype=bool)
            for v in order:
                hit = remaining & (((masks >> np.uint64(v)) & np.uint64(1)) == 1)
                influence[hit] += self._degrees[v]
                remaining &= ~hit
        sizes = np.zeros(len(masks))
        for v in range(self._ground.n):
            sizes += ((masks >> np.uint64(v)) & np.uint64(1)).astype(np.float64)
        raw = influence - self._alpha * sizes
        if self._sigma > 0.0:
            raw = rng.normal(raw, self._sigma)
        return self._normalize(raw)

    def expected_value(
        self,
        s: ArmSet,
        *,
        mc_samples: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> ExpectedValue:
        return ExpectedValue(float(self._normalize(self.raw_mean(s))), True)

    def design_opt_set(self) -> ArmSet:
        """Maximizer of the noiseless design mean, computed per community.

        Including any node beyond a community's highest-degree one only adds
        cost, so the optimum keeps exactly the top-degree node of each
        community whose degree exceeds ``alpha`` (ties break to the lowest
        node index).
        """
        chosen = []
        for order in self._by_degree:
            best = order[0]
            if self._degrees[best] > self._alpha:
                chosen.append(best)
        return ArmSet.from_indices(chosen, self._ground.n)


class NormalizedEnvironment(Environment):
    """Affine [f_min, f_max] -> [0, 1] rescaling wrapper around another environment.

    Expected values are transformed without clamping, so the maximizing
    subsets are unchanged; samples are clamped into [0, 1] like every other
    environment.
    """

    def __init__(self, inner: Environment, f_min: float, f_max: float):
        if not f_max > f_min:
            raise ValueError(f"normalization requires f_max > f_min, got ({f_min}, {f_max})")
        self._inner = inner
        self._f_min = float(f_min)
        self._span = float(f_max) - float(f_min)

    @property
    def ground(self) -> GroundSet:
        return self._inner.ground

    @property
    def has_exact_expectations(self) -> bool:
        return self._inner.has_exact_expectations

    def sample_many(self, s: ArmSet, rng: np.random.Generator, size: int) -> np.ndarray:
        raw = self._inner.sample_many(s, rng, size)
        return np.clip((raw - self._f_min) / self._span, 0.0, 1.0)

    def sample_batch(self, masks: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        raw = self._inner.sample_batch(masks, rng)
        return np.clip((raw - self._f_min) / self._span, 0.0, 1.0)

    def expected_value(
        self,
        s: ArmSet,
        *,
        mc_samples: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> ExpectedValue:
        ev = self._inner.expected_value(s, mc_samples=mc_samples, rng=rng)
        se = None if ev.std_error is None else ev.std_error / self._span
        return ExpectedValue((ev.value - self._f_min) / self._span, ev.exact, se)

    def expected_values_all(self) -> np.ndarray | None:
        vals = self._inner.expected_values_all()
        if vals is None:
            return None
        return (vals - self._f_min) / self._span


def normalize(env: Environment, f_min: float, f_max: float) -> NormalizedEnvironment:
    """Wrap ``env`` so raw values in [f_min, f_max] map onto [0, 1]."""
    return NormalizedEnvironment(env, f_min, f_max)


@dataclass(frozen=True)
class SubmodularityViolation:
    """A triple ``A <= B``, ``x not in B`` whose marginal gains are inverted.

    ``gap`` is ``[Ef(A+x) - Ef(A)] - [Ef(B+x) - Ef(B)]``; a violation has
    ``gap < -tol``.
    """

    a: ArmSet
    b: ArmSet
    x: int
    gap: float


@dataclass(frozen=True)
class MonotonicityViolation:
    """A pair ``A <= B`` with ``Ef(A) > Ef(B)``; ``gap = Ef(A) - Ef(B)``."""

    a: ArmSet
    b: ArmSet
    gap: float


def _exact_table_or_raise(env: Environment, op: str) -> np.ndarray:
    if not env.has_exact_expectations:
        raise ValueError(f"{op} requires an environment with exact expected values")
    if env.ground.n > CHECKER_MAX_ARMS:
        raise ValueError(
            f"{op} enumerates subsets and is limited to n <= {CHECKER_MAX_ARMS}, "
            f"got n={env.ground.n}"
        )
    vals = env.expected_values_all()
    assert vals is not None
    return vals


def check_submodular_in_expectation(
    env: Environment, tol: float = CHECKER_TOLERANCE
) -> list[SubmodularityViolation]:
    """Every diminishing-returns violation of the expected values, or [] if none.

    Enumerates all ``A <= B`` and ``x not in B`` and reports triples where the
    marginal gain at ``A`` falls short of the gain at ``B`` by more than
    ``tol``.
    """
    vals = _exact_table_or_raise(env, "check_submodular_in_expectation")
    n = env.ground.n
    violations = []
    for bmask in range(1 << n):
        outside = [x for x in range(n) if not bmask >> x & 1]
        if not outside:
            continue
        amask = bmask
        while True:
            for x in outside:
                bit = 1 << x
                gap = (vals[amask | bit] - vals[amask]) - (vals[bmask | bit] - vals[bmask])
                if gap < -tol:
                    violations.append(
                        SubmodularityViolation(ArmSet(amask, n), ArmSet(bmask, n), x, float(gap))
                    )
            if amask == 0:
                break
            amask = (amask - 1) & bmask
    return violations


def check_monotone(env: Environment, tol: float = CHECKER_TOLERANCE) -> list[MonotonicityViolation]:
    """Every pair ``A <= B`` whose expected value decreases, or [] if monotone."""
    vals = _exact_table_or_raise(env, "check_monotone")
    n = env.ground.n
    violations = []
    for bmask in range(1 << n):
        amask = bmask
        while True:
            if amask != bmask:
                gap = vals[amask] - vals[bmask]
                if gap > tol:
                    violations.append(
                        MonotonicityViolation(ArmSet(amask, n), ArmSet(bmask, n), float(gap))
                    )
            if amask == 0:
                break
            amask = (amask - 1) & bmask
    return violations


def load_edge_list(path: str | Path) -> tuple[list[int], set[tuple[int, int]]]:
    """Parse an undirected edge list of whitespace-separated ``u v`` pairs.

    Node ids are arbitrary positive integers (conventionally 1-based); lines
    starting with ``#`` and blank lines are skipped. Duplicate edges are
    collapsed with a warning.
    """
    path = Path(path)
    nodes: set[int] = set()
    edges: set[tuple[int, int]] = set()
    duplicates = 0
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'u v', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer node id in {line!r}") from exc
            if u == v:
                raise ValueError(f"{path}:{lineno}: self-loop at node {u}")
            edge = (min(u, v), max(u, v))
            if edge in edges:
                duplicates += 1
            edges.add(edge)
            nodes.update(edge)
    if duplicates:
        warnings.warn(f"{path}: collapsed {duplicates} duplicate edge(s)", stacklevel=2)
    if not nodes:
        raise ValueError(f"{path}: empty edge list")
    return sorted(nodes), edges


def load_communities(path: str | Path, nodes: Iterable[int]) -> dict[int, str]:
    """Parse ``node community_id`` lines into a partition of ``nodes``."""
    path = Path(path)
    node_set = set(nodes)
    assignment: dict[int, str] = {}
    with path.open() as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'node community_id', got {line!r}")
            node = int(parts[0])
            if node not in node_set:
                raise ValueError(f"{path}:{lineno}: unknown node {node}")
            if node in assignment:
                raise ValueError(f"{path}:{lineno}: node {node} assigned twice")
            assignment[node] = parts[1]
    missing = node_set - assignment.keys()
    if missing:
        raise ValueError(f"{path}: {len(missing)} node(s) without a community, e.g. {min(missing)}")
    return assignment


def load_network(
    edge_list: str | Path,
    communities: str | Path,
    alpha: float,
    sigma: float,
    value_bounds: tuple[float, float] | None = None,
) -> NetworkRevenueEnv:
    """Build a :class:`NetworkRevenueEnv` from an edge-list and community file.

    ``value_bounds`` defaults to the noiseless extremes
    ``(-alpha * |V|, sum of per-community maximum degrees)``, which keep the
    rescaled design means inside [0, 1] without disturbing their ordering.
    """
    node_ids, edges = load_edge_list(edge_list)
    assignment = load_communities(communities, node_ids)
    index = {node: i for i, node in enumerate(node_ids)}
    n = len(node_ids)
    degrees = np.zeros(n)
    for u, v in edges:
        degrees[index[u]] += 1
        degrees[index[v]] += 1
    by_community: dict[str, list[int]] = {}
    for node, cid in assignment.items():
        by_community.setdefault(cid, []).append(index[node])
    community_sets = tuple(
        ArmSet.from_indices(members, n) for _, members in sorted(by_community.items())
    )
    if value_bounds is None:
        f_max = float(sum(max(degrees[v] for v in c.members) for c in community_sets))
        value_bounds = (-float(alpha) * n, f_max)
    ground = GroundSet(n, labels=tuple(str(node) for node in node_ids))
    return NetworkRevenueEnv(ground, degrees, community_sets, alpha, sigma, value_bounds)
