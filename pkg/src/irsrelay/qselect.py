"""Relay selection: gain-ratio reward matrix and tabular epsilon-greedy Q-learning."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QLearnConfig:
    learning_rate: float = 0.5
    discount: float = 0.8
    explore_prob: float = 0.7
    episodes: int = 10000
    seed: int = 0

    def __post_init__(self):
        for name in ("learning_rate", "discount", "explore_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.episodes < 1:
            raise ValueError(f"episodes must be >= 1, got {self.episodes}")


@dataclass(frozen=True)
class RewardMatrix:
    """Relay-gain ratios gains[j]/gains[i], with ratios below one zeroed out."""

    entries: np.ndarray  # (R, R)
    gains: np.ndarray  # (R,)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        gains = np.asarray(self.gains, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"entries must be square, got shape {entries.shape}")
        if gains.shape != (entries.shape[0],):
            raise ValueError("gains length must match the matrix size")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "gains", gains)

    @property
    def num_relays(self) -> int:
        return int(self.entries.shape[0])


@dataclass
class QTable:
    """State-action values, state = current relay, action = relay moved to."""

    values: np.ndarray  # (R, R)

    @classmethod
    def zeros(cls, num_relays: int) -> "QTable":
        return cls(np.zeros((num_relays, num_relays)))


def relay_gain(h_relay_irs) -> float:
    """Summed power gain of one relay's IRS link: sum_n |h[n]|^2."""
    h = np.asarray(h_relay_irs)
    if h.ndim != 1 or h.size < 1:
        raise ValueError("expected a non-empty per-element channel vector")
    return float(np.sum(np.abs(h) ** 2))


def build_reward_matrix(gains) -> RewardMatrix:
    """Row i holds gains[:] / gains[i]; entries below 1 are zeroed, which trims
    transitions toward weaker relays from the search without forbidding them."""
    g = np.asarray(gains, dtype=float)
    if g.ndim != 1 or g.size < 1:
        raise ValueError("gains must be a non-empty vector")
    if not np.all(np.isfinite(g)) or np.any(g <= 0):
        raise ValueError("gains must be finite and > 0")
    entries = g[None, :] / g[:, None]
    entries[entries < 1.0] = 0.0
    return RewardMatrix(entries=entries, gains=g.copy())


def q_update(
    q: QTable, s: int, a: int, reward: float, s_next: int, learning_rate: float, discount: float
) -> QTable:
    """One temporal-difference backup
    Q(s,a) += lr * (reward + discount * max_a' Q(s_next, a') - Q(s,a));
    updates the table in place and returns it."""
    target = reward + discount * float(q.values[s_next].max())
    q.values[s, a] += learning_rate * (target - q.values[s, a])
    return q


def _run_episodes(rw: RewardMatrix, config: QLearnConfig, checkpoints: tuple[int, ...]):
    # All randomness is pre-drawn as three arrays from one generator seeded by
    # config.seed (visited states, exploration coin flips, random actions), so
    # greedy episodes still consume their random-action draw and the stream
    # never depends on the learned values.
    n = rw.num_relays
    episodes = max(checkpoints) if checkpoints else config.episodes
    rng = np.random.default_rng(config.seed)
    states = rng.integers(0, n, size=episodes)
    explore = rng.random(episodes)
    random_actions = rng.integers(0, n, size=episodes)

    values = np.zeros((n, n))
    marks = sorted(set(int(c) for c in checkpoints))
    snapshots: list[tuple[int, QTable]] = []
    mark_pos = 0
    lr = config.learning_rate
    disc = config.discount
    eps = config.explore_prob
    for z in range(episodes):
        s = int(states[z])
        if explore[z] < eps:
            a = int(random_actions[z])
        else:
            a = int(np.argmax(values[s]))  # ties resolve to the lowest index
        reward = rw.entries[s, a]
        values[s, a] += lr * (reward + disc * values[a].max() - values[s, a])
        if mark_pos < len(marks) and z + 1 == marks[mark_pos]:
            snapshots.append((z + 1, QTable(values.copy())))
            mark_pos += 1
    return QTable(values), snapshots


def train(rw: RewardMatrix, config: QLearnConfig) -> QTable:
    """Run ``config.episodes`` epsilon-greedy episodes over the reward matrix.

    Each episode draws a uniformly random start state, explores with
    probability ``explore_prob`` (greedy otherwise), moves to the relay named
    by the action, and backs up the reward-matrix entry.  Deterministic under
    ``config.seed``.
    """
    if rw.num_relays < 1:
        raise ValueError("reward matrix must cover at least one relay")
    table, _ = _run_episodes(rw, config, ())
    return table


def train_trace(rw: RewardMatrix, config: QLearnConfig, checkpoints) -> list[tuple[int, QTable]]:
    """Like :func:`train` but snapshots the table after each checkpoint episode;
    runs max(checkpoints) episodes total, sharing the episode loop with train."""
    marks = tuple(int(c) for c in checkpoints)
    if not marks or min(marks) < 1:
        raise ValueError("checkpoints must be a non-empty list of episode counts >= 1")
    _, snapshots = _run_episodes(rw, config, marks)
    return snapshots


def select_relay(q: QTable) -> int:
    """Action column with the highest value from any state; ties -> lowest index."""
    return int(np.argmax(q.values.max(axis=0)))


def greedy_max_gain_relay(gains) -> int:
    """Index of the largest gain; ties -> lowest index."""
    g = np.asarray(gains, dtype=float)
    if g.ndim != 1 or g.size < 1:
        raise ValueError("gains must be a non-empty vector")
    return int(np.argmax(g))
