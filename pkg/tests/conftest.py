import numpy as np
import pytest

from setbandits import GroundSet, NoiseSpec, TabularEnv

# The two 2-arm reference tables used throughout the suite, in 0-based masks:
# mask 0 = {}, mask 1 = {0}, mask 2 = {1}, mask 3 = {0,1}.
SUBMODULAR_TABLE = (0.2, 0.0, 0.6, 0.2)  # maximizer {1}, submodular, non-monotone
NONSUBMODULAR_TABLE = (0.3, 0.0, 0.5, 0.9)  # maximizer {0,1}, not submodular


def two_arm_env(table, sigma=0.0, mu=0.0) -> TabularEnv:
    return TabularEnv(GroundSet(2), table, NoiseSpec(mu=mu, sigma=sigma))


@pytest.fixture
def submodular_env():
    return two_arm_env(SUBMODULAR_TABLE)


@pytest.fixture
def nonsubmodular_env():
    return two_arm_env(NONSUBMODULAR_TABLE)


def coverage_table(rng: np.random.Generator, n: int, universe: int | None = None) -> np.ndarray:
    """A random weighted-coverage table over all 2**n subsets, scaled into [0, 1].

    Each arm covers a random subset of a small weighted universe and a
    subset's value is the total weight it covers. Coverage functions are
    monotone and submodular, so these tables make good positive instances
    for the structure checkers.
    """
    q = universe or 2 * n + 2
    weights = rng.uniform(0.1, 1.0, size=q)
    covers = rng.random((n, q)) < 0.45
    table = np.empty(1 << n)
    for mask in range(1 << n):
        covered = np.zeros(q, dtype=bool)
        for i in range(n):
            if mask >> i & 1:
                covered |= covers[i]
        table[mask] = weights[covered].sum()
    return table / weights.sum()


def coverage_env(rng: np.random.Generator, n: int, sigma: float = 0.0) -> TabularEnv:
    return TabularEnv(GroundSet(n), coverage_table(rng, n), NoiseSpec(sigma=sigma))
