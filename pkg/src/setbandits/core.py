"""Ground sets, subset actions, and per-run traces.

Subsets of base arms are bitmask-backed value types: cheap to copy, hashable,
structurally comparable, and safe to share across worker threads. Arm indices
are 0-based everywhere inside the library; reports and data files may use
1-based labels (see :meth:`ArmSet.render`).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

MAX_BITMASK_ARMS = 64


class Phase(Enum):
    """Whether a step was spent gathering estimates or playing a committed set."""

    EXPLORE = "explore"
    EXPLOIT = "exploit"


@dataclass(frozen=True)
class GroundSet:
    """The universe of ``n`` base arms, indexed ``0..n-1``.

    ``labels`` optionally attaches a human-readable name to each arm (for
    example the original node ids of a graph).
    """

    n: int
    labels: tuple[str, ...] | None = None
    max_arms: int = MAX_BITMASK_ARMS

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"ground set needs at least one arm, got n={self.n}")
        if self.n > self.max_arms:
            raise ValueError(
                f"bitmask-backed sets support at most {self.max_arms} arms, got n={self.n}"
            )
        if self.labels is not None:
            if not isinstance(self.labels, tuple):
                object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.n:
                raise ValueError(
                    f"labels must have exactly one entry per arm ({len(self.labels)} != {self.n})"
                )

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def empty(self) -> "ArmSet":
        return ArmSet(0, self.n)

    def full(self) -> "ArmSet":
        return ArmSet(self.full_mask, self.n)

    def subset(self, indices: Sequence[int]) -> "ArmSet":
        return ArmSet.from_indices(indices, self.n)

    def all_subsets(self) -> Iterator["ArmSet"]:
        """Yield all ``2**n`` subsets in increasing bitmask order."""
        for mask in range(1 << self.n):
            yield ArmSet(mask, self.n)

    def label(self, i: int) -> str:
        if not 0 <= i < self.n:
            raise ValueError(f"arm index {i} out of range for n={self.n}")
        return self.labels[i] if self.labels is not None else str(i)


@dataclass(frozen=True)
class ArmSet:
    """An immutable subset of arm indices, stored as a bitmask.

    Bit ``i`` is set iff arm ``i`` is a member. All operations return new
    values; instances are hashable and compare structurally.
    """

    mask: int
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mask", int(self.mask))
        object.__setattr__(self, "n", int(self.n))
        if self.n < 1 or self.n > MAX_BITMASK_ARMS:
            raise ValueError(f"invalid ground-set size n={self.n}")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask:#x} has bits outside 0..{self.n - 1}")

    @classmethod
    def from_indices(cls, indices: Sequence[int], n: int) -> "ArmSet":
        mask = 0
        for i in indices:
            if not 0 <= int(i) < n:
                raise ValueError(f"arm index {i} out of range for n={n}")
            mask |= 1 << int(i)
        return cls(mask, n)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.mask >> i & 1)

    def contains(self, i: int) -> bool:
        self._check_index(i)
        return bool(self.mask >> i & 1)

    def with_arm(self, i: int) -> "ArmSet":
        self._check_index(i)
        return ArmSet(self.mask | (1 << i), self.n)

    def without_arm(self, i: int) -> "ArmSet":
        self._check_index(i)
        return ArmSet(self.mask & ~(1 << i), self.n)

    def complement(self) -> "ArmSet":
        return ArmSet(self.mask ^ ((1 << self.n) - 1), self.n)

    def issubset(self, other: "ArmSet") -> bool:
        return self.mask & ~other.mask == 0

    def render(self, one_based: bool = False) -> str:
        """Braced, sorted, comma-separated rendering, e.g. ``{5,6,7,8}``."""
        offset = 1 if one_based else 0
        return "{" + ",".join(str(i + offset) for i in self.members) + "}"

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise ValueError(f"arm index {i} out of range for n={self.n}")

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class AgentTrace:
    """Step-by-step record of one agent run over a horizon of ``T`` steps.

    Stored columnarly: ``actions`` holds the played subsets as uint64
    bitmasks, ``rewards`` the observed scalar rewards in [0, 1], and
    ``explore`` flags exploration steps (False = exploitation). ``committed``
    is the subset exploited after exploration finished, or None if the run
    never reached a commit decision (horizon exhausted mid-exploration, or a
    restarting agent with no single final set).
    """

    ground: GroundSet
    actions: np.ndarray
    rewards: np.ndarray
    explore: np.ndarray
    committed: ArmSet | None
    agent_id: str
    seed: int

    def __post_init__(self) -> None:
        actions = np.ascontiguousarray(self.actions, dtype=np.uint64)
        rewards = np.ascontiguousarray(self.rewards, dtype=np.float64)
        explore = np.ascontiguousarray(self.explore, dtype=bool)
        for name, arr in (("actions", actions), ("rewards", rewards), ("explore", explore)):
            if arr.ndim != 1:
                raise ValueError(f"{name} must be one-dimensional")
            object.__setattr__(self, name, arr)
            arr.setflags(write=False)
        T = len(actions)
        if len(rewards) != T or len(explore) != T:
            raise ValueError("actions, rewards, and explore must have equal length")
        if T and (rewards.min() < 0.0 or rewards.max() > 1.0):
            raise ValueError("rewards must lie in [0, 1]")
        if T and int(actions.max()) > self.ground.full_mask:
            raise ValueError("action bitmask outside the ground set")
        if self.committed is not None:
            if self.committed.n != self.ground.n:
                raise ValueError("committed set belongs to a different ground set")
            exploit_actions = actions[~explore]
            if exploit_actions.size and not np.all(
                exploit_actions == np.uint64(self.committed.mask)
            ):
                raise ValueError("every exploitation step must play the committed set")

    @property
    def horizon(self) -> int:
        return len(self.rewards)

    @property
    def explore_steps(self) -> int:
        return int(self.explore.sum())

    @property
    def exploit_steps(self) -> int:
        return self.horizon - self.explore_steps

    def steps(self) -> Iterator[tuple[int, ArmSet, float, Phase]]:
        """Yield ``(t, action, reward, phase)`` with 1-based ``t``.

        Convenience for tests and small traces; large runs should use the
        columnar arrays directly.
        """
        for idx in range(self.horizon):
            phase = Phase.EXPLORE if self.explore[idx] else Phase.EXPLOIT
            yield idx + 1, ArmSet(int(self.actions[idx]), self.ground.n), float(
                self.rewards[idx]
            ), phase
