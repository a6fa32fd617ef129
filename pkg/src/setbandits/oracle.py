"""Exhaustive ground truth over small ground sets.

Scans all ``2**n`` subsets to find the exact maximizer of the expected reward
and computes exact marginal-gain pairs. Used for regret baselines and for
independently checking the online agents.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ArmSet
from .environments import Environment

ENUMERATION_MAX_ARMS = 20
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class OptResult:
    """The maximizing subset of the expected reward, with ties.

    ``ties`` lists every subset within ``TIE_TOLERANCE`` of the maximum, in
    deterministic order (smallest cardinality first, then lexicographically
    smallest index tuple); ``opt_set`` is its first element. ``exact`` is
    False when the scan ran on Monte-Carlo estimates.
    """

    opt_set: ArmSet
    opt_value: float
    ties: tuple[ArmSet, ...]
    exact: bool = True


def _tie_key(s: ArmSet) -> tuple[int, tuple[int, ...]]:
    return (s.size, s.members)


def exact_maximizer(
    env: Environment,
    *,
    monte_carlo: bool = False,
    mc_samples: int | None = None,
    rng: np.random.Generator | None = None,
    tol: float = TIE_TOLERANCE,
) -> OptResult:
    """Exhaustively maximize the expected reward over all subsets.

    Requires ``n <= 20``. Environments without exact expectations are
    rejected unless ``monte_carlo=True``, in which case every subset's value
    is estimated with ``mc_samples`` draws from ``rng`` (deterministic
    per-subset fallback streams when ``rng`` is None).
    """
    n = env.ground.n
    if n > ENUMERATION_MAX_ARMS:
        raise ValueError(
            f"exhaustive maximization is limited to n <= {ENUMERATION_MAX_ARMS}, got n={n}"
        )
    exact = env.has_exact_expectations
    if not exact and not monte_carlo:
        raise ValueError(
            "environment has no exact expected values; pass monte_carlo=True to "
            "maximize Monte-Carlo estimates instead"
        )
    values = env.expected_values_all() if exact else None
    if values is None:
        values = np.empty(1 << n)
        for mask in range(1 << n):
            values[mask] = env.expected_value(
                ArmSet(mask, n), mc_samples=mc_samples, rng=rng
            ).value
    best = float(values.max())
    ties = sorted(
        (ArmSet(mask, n) for mask in np.flatnonzero(values >= best - tol)), key=_tie_key
    )
    opt_set = ties[0]
    return OptResult(opt_set, float(values[opt_set.mask]), tuple(ties), exact=exact)


def exact_marginal_pair(
    env: Environment, x: ArmSet, y: ArmSet, u: int
) -> tuple[float, float]:
    """Exact add/remove marginal gains for an arm between nested subsets.

    For ``x <= y`` and ``u in y \\ x`` returns
    ``(Ef(x + u) - Ef(x), Ef(y - u) - Ef(y))``.
    """
    if not env.has_exact_expectations:
        raise ValueError("exact marginal gains require exact expected values")
    if not x.issubset(y):
        raise ValueError(f"{x} is not a subset of {y}")
    if not y.contains(u) or x.contains(u):
        raise ValueError(f"arm {u} must belong to {y} but not {x}")
    ev = env.expected_value
    ea = ev(x.with_arm(u)).value - ev(x).value
    eb = ev(y.without_arm(u)).value - ev(y).value
    return ea, eb
