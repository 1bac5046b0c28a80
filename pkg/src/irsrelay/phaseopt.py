"""Coordinate-ascent optimization of discrete IRS phases, one element at a time.

With theta_n = h_rx[n] * h_tx[n] and unit-modulus v_n = e^{j phi_n}, the squared
cascade magnitude |h_d + sum_n v_n theta_n|^2 equals the Hermitian quadratic form
v^H A v + 2 Re{v^H b} + |h_d|^2 where A = conj(theta) outer theta (rank one) and
b = conj(theta) * h_d.  Freezing all elements but one makes the form affine in
that element, so the best codebook phase for element l maximizes
2 Re{conj(v_l) w_l} with w_l = sum_{k != l} A[l, k] v_k + b[l]; every such update
can only increase the objective, and a finite codebook makes the sweep loop
terminate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from irsrelay.linkrate import LOG2, PhaseCodebook, PhaseConfig


@dataclass(frozen=True)
class QuadraticForm:
    """Quadratic-form view of one slot's cascade power."""

    theta: np.ndarray  # (N,) element-wise rx*tx products
    a_matrix: np.ndarray  # (N, N) Hermitian, rank <= 1
    b_vector: np.ndarray  # (N,)
    direct_power: float

    def value_at(self, v) -> float:
        """Squared cascade magnitude at unit-modulus phases ``v``."""
        v = np.asarray(v, dtype=complex)
        quad = np.real(np.conj(v) @ self.a_matrix @ v)
        cross = 2.0 * np.real(np.conj(v) @ self.b_vector)
        return float(quad + cross + self.direct_power)


@dataclass(frozen=True)
class RefinementConfig:
    """Stop rule of the element-wise sweep loop.

    Sweeps run until one changes no index, so the stopping sweep improves the
    rate by exactly 0, below any positive ``tolerance``; index stability is
    required (not just a small rate delta) so the returned configuration is
    always element-wise optimal.  ``max_sweeps`` caps the loop regardless.
    """

    tolerance: float = 1e-4  # bps/Hz; ceiling on the stopping sweep's improvement
    max_sweeps: int = 100

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_sweeps < 1:
            raise ValueError(f"max_sweeps must be >= 1, got {self.max_sweeps}")


def build_quadratic_form(h_direct: complex, h_rx, h_tx) -> QuadraticForm:
    """Assemble theta, A, b, and the constant |h_direct|^2 for one slot."""
    h_rx = np.asarray(h_rx, dtype=complex)
    h_tx = np.asarray(h_tx, dtype=complex)
    if h_rx.shape != h_tx.shape or h_rx.ndim != 1:
        raise ValueError(f"vector length mismatch: {h_rx.shape} vs {h_tx.shape}")
    theta = h_rx * h_tx
    return QuadraticForm(
        theta=theta,
        a_matrix=np.outer(np.conj(theta), theta),
        b_vector=np.conj(theta) * complex(h_direct),
        direct_power=abs(complex(h_direct)) ** 2,
    )


def compute_w(form: QuadraticForm, v, l: int) -> complex:
    """Affine coefficient of element ``l``: sum_{k != l} A[l, k] v_k + b[l]."""
    v = np.asarray(v, dtype=complex)
    n = form.theta.size
    if not 0 <= l < n:
        raise IndexError(f"element index {l} out of range for {n} elements")
    row = form.a_matrix[l]
    return complex(row @ v - row[l] * v[l] + form.b_vector[l])


def _best_index(w: complex, conj_phasors: np.ndarray) -> int:
    # Exhaustive codebook check of the per-element term Re{conj(v_l) w_l};
    # argmax resolves exact ties toward the lowest index.
    return int(np.argmax((conj_phasors * w).real))


def refine_element(form: QuadraticForm, v, l: int, codebook: PhaseCodebook) -> int:
    """Codebook index maximizing the cascade magnitude with only element ``l`` free."""
    w = compute_w(form, v, l)
    return _best_index(w, np.exp(-1j * codebook.angles))


def successive_refinement(
    h_direct: complex,
    h_rx,
    h_tx,
    tx_power_w: float,
    noise_w: float,
    codebook: PhaseCodebook,
    config: RefinementConfig | None = None,
    initial: PhaseConfig | None = None,
) -> tuple[PhaseConfig, float]:
    """Sweep the elements until a full sweep changes no phase index (or
    ``max_sweeps`` is hit); returns the final phases and the slot rate.

    Uses the rank-one shortcut w_l = conj(theta_l) * (h_direct + sum_{k != l}
    theta_k v_k) instead of materializing A, with the same exhaustive codebook
    check per element as :func:`refine_element`.
    """
    if config is None:
        config = RefinementConfig()
    if noise_w <= 0:
        raise ValueError(f"noise power must be > 0, got {noise_w}")
    if tx_power_w < 0:
        raise ValueError(f"transmit power must be >= 0, got {tx_power_w}")
    h_rx = np.asarray(h_rx, dtype=complex)
    h_tx = np.asarray(h_tx, dtype=complex)
    if h_rx.shape != h_tx.shape or h_rx.ndim != 1:
        raise ValueError(f"vector length mismatch: {h_rx.shape} vs {h_tx.shape}")
    theta = h_rx * h_tx
    n = theta.size
    if initial is None:
        initial = PhaseConfig.zeros(codebook, n)
    if initial.codebook != codebook or len(initial) != n:
        raise ValueError("initial phases must match the codebook and element count")

    phasor_tab = np.exp(1j * codebook.angles)
    conj_tab = np.conj(phasor_tab)
    scale = tx_power_w / noise_w

    indices = initial.indices.tolist()
    v = phasor_tab[initial.indices].tolist()
    theta_l = theta.tolist()
    total = complex(h_direct) + complex(np.dot(theta, phasor_tab[initial.indices]))

    def rate_of(t: complex) -> float:
        return math.log1p(scale * (t.real * t.real + t.imag * t.imag)) / LOG2

    for _ in range(config.max_sweeps):
        changed = False
        for l in range(n):
            tl = theta_l[l]
            rest = total - tl * v[l]
            k = _best_index(tl.conjugate() * rest, conj_tab)
            if k != indices[l]:
                changed = True
                indices[l] = k
                v[l] = complex(phasor_tab[k])
            total = rest + tl * v[l]
        if not changed:
            break
    return PhaseConfig(codebook, np.asarray(indices, dtype=np.int64)), rate_of(total)
