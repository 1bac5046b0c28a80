"""Cascaded direct-plus-IRS link gains, per-slot SNR, and end-to-end rate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi
LOG2 = math.log(2.0)


@dataclass(frozen=True)
class PhaseCodebook:
    """Uniform discrete phase set {0, step, ..., step*(K-1)} with K = 2**bits levels."""

    bits: int = 4

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError(f"bits must be >= 0, got {self.bits}")

    @property
    def levels(self) -> int:
        return 2 ** self.bits

    @property
    def step(self) -> float:
        return TWO_PI / self.levels

    @property
    def angles(self) -> np.ndarray:
        return np.arange(self.levels) * self.step

    @classmethod
    def from_levels(cls, levels: int) -> "PhaseCodebook":
        if levels < 1 or levels & (levels - 1):
            raise ValueError(f"levels must be a power of two, got {levels}")
        return cls(bits=levels.bit_length() - 1)

    def nearest_index(self, angle_rad: float) -> int:
        """Index of the codebook angle closest to ``angle_rad`` in circular distance."""
        delta = np.abs((self.angles - angle_rad + math.pi) % TWO_PI - math.pi)
        return int(np.argmin(delta))


@dataclass(frozen=True)
class PhaseConfig:
    """Per-element codebook indices of one reflection pattern (unit amplitudes)."""

    codebook: PhaseCodebook
    indices: np.ndarray

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).reshape(-1)
        if idx.size and (idx.min() < 0 or idx.max() >= self.codebook.levels):
            raise ValueError("phase index outside the codebook")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return int(self.indices.size)

    @property
    def angles(self) -> np.ndarray:
        return self.indices * self.codebook.step

    @property
    def phasors(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    @classmethod
    def zeros(cls, codebook: PhaseCodebook, count: int) -> "PhaseConfig":
        return cls(codebook, np.zeros(count, dtype=np.int64))


@dataclass(frozen=True)
class SlotSnr:
    """Linear SNRs of the two communication time slots."""

    gamma1: float
    gamma2: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {value}")


def cascade_gain(h_direct: complex, h_rx, phases: PhaseConfig, h_tx) -> complex:
    """Direct coefficient plus the phase-steered element-wise reflection sum
    h_direct + sum_n e^{j phi_n} h_rx[n] h_tx[n]."""
    h_rx = np.asarray(h_rx)
    h_tx = np.asarray(h_tx)
    if not (h_rx.shape == h_tx.shape == (len(phases),)):
        raise ValueError(
            f"length mismatch: rx {h_rx.shape}, tx {h_tx.shape}, phases {len(phases)}"
        )
    return complex(h_direct + np.sum(phases.phasors * h_rx * h_tx))


def snr(gain: complex, tx_power_w: float, noise_w: float) -> float:
    """Receive SNR tx_power * |gain|^2 / noise, all linear."""
    if noise_w <= 0:
        raise ValueError(f"noise power must be > 0, got {noise_w}")
    if tx_power_w < 0:
        raise ValueError(f"transmit power must be >= 0, got {tx_power_w}")
    return tx_power_w * abs(gain) ** 2 / noise_w


def slot_rate(snr_linear: float) -> float:
    """Shannon rate log2(1 + snr) in bps/Hz."""
    if snr_linear < 0:
        raise ValueError(f"snr must be >= 0, got {snr_linear}")
    return math.log1p(snr_linear) / LOG2


def end_to_end_rate(c_t1: float, c_t2: float) -> float:
    """Half the bottleneck slot rate: one message needs both time slots."""
    if c_t1 < 0 or c_t2 < 0:
        raise ValueError("slot rates must be >= 0")
    return 0.5 * min(c_t1, c_t2)
