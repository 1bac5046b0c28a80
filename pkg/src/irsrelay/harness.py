"""Monte Carlo experiment driver with deterministic per-trial substreams."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from irsrelay.linkrate import PhaseCodebook, end_to_end_rate, slot_rate
from irsrelay.netmodel import (
    ChannelRealization,
    LinkBudgetParams,
    NetworkTopology,
    realize_channels,
    sample_relay_positions,
    substream,
)
from irsrelay.phaseopt import RefinementConfig
from irsrelay.qselect import (
    QLearnConfig,
    build_reward_matrix,
    relay_gain,
    select_relay,
    train_trace,
)
from irsrelay.schemes import SchemeId, refined_two_slot, run_scheme


class ExperimentKind(Enum):
    POWER = "power"
    RELAYS = "relays"
    CENTER = "center"
    CONVERGENCE = "convergence"


SWEEP_PARAMS = {
    ExperimentKind.POWER: "tx_power_dbm",
    ExperimentKind.RELAYS: "num_relays",
    ExperimentKind.CENTER: "cell_center_y_m",
    ExperimentKind.CONVERGENCE: "episode",
}

DEFAULT_SWEEPS = {
    ExperimentKind.POWER: tuple(float(p) for p in range(0, 71, 10)),
    ExperimentKind.RELAYS: (5.0, 10.0, 15.0, 20.0, 25.0, 30.0),
    ExperimentKind.CENTER: (0.0, 5.0, 10.0, 15.0, 20.0),
    ExperimentKind.CONVERGENCE: tuple(float(e) for e in range(100, 10001, 100)),
}

# Scene defaults: source, IRS, destination, and a 10 m relay disk at z = 0.
DEFAULT_SOURCE_POS = (20.0, -10.0, 2.0)
DEFAULT_IRS_POS = (0.0, 0.0, 1.0)
DEFAULT_DEST_POS = (20.0, 20.0, 1.0)
DEFAULT_DISK_CENTER = (10.0, 10.0, 0.0)
DEFAULT_DISK_RADIUS = 10.0
DEFAULT_NUM_RELAYS = 10
DEFAULT_TRIALS = 500
DEFAULT_FIXED_PHASE_RAD = 2.1

# Fixed per-scheme stream ids, so one scheme's randomness does not depend on
# which other schemes run alongside it.
_SCHEME_STREAM = {scheme: i for i, scheme in enumerate(SchemeId)}


@dataclass(frozen=True)
class ExperimentSpec:
    kind: ExperimentKind
    sweep_values: tuple[float, ...]
    schemes: tuple[SchemeId, ...]
    trials: int
    master_seed: int
    params: LinkBudgetParams
    source_pos: tuple[float, float, float] = DEFAULT_SOURCE_POS
    irs_pos: tuple[float, float, float] = DEFAULT_IRS_POS
    dest_pos: tuple[float, float, float] = DEFAULT_DEST_POS
    disk_center: tuple[float, float, float] = DEFAULT_DISK_CENTER
    disk_radius: float = DEFAULT_DISK_RADIUS
    num_relays: int = DEFAULT_NUM_RELAYS
    codebook: PhaseCodebook = field(default_factory=PhaseCodebook)
    refine_cfg: RefinementConfig = field(default_factory=RefinementConfig)
    ql_cfg: QLearnConfig = field(default_factory=QLearnConfig)
    fixed_phase_rad: float = DEFAULT_FIXED_PHASE_RAD
    freeze_relay_positions: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.sweep_values:
            raise ValueError("sweep_values must be non-empty")
        if any(b <= a for a, b in zip(self.sweep_values, self.sweep_values[1:])):
            raise ValueError("sweep_values must be strictly increasing")
        if not self.schemes:
            raise ValueError("schemes must be non-empty")
        if self.kind in (ExperimentKind.RELAYS, ExperimentKind.CONVERGENCE):
            if min(self.sweep_values) < 1 or any(v != int(v) for v in self.sweep_values):
                raise ValueError(f"{self.kind.value} sweep values must be whole numbers >= 1")


@dataclass(frozen=True)
class RateStats:
    mean_rate: float
    std_rate: float
    trials: int


@dataclass(frozen=True)
class AggregateResult:
    experiment: str
    sweep_param: str
    master_seed: int
    stats: dict[tuple[SchemeId, float], RateStats]


def default_power_dbm(kind: ExperimentKind) -> float:
    """Fixed transmit power used when the sweep is not over power."""
    return 30.0 if kind is ExperimentKind.CONVERGENCE else 40.0


def build_spec(
    kind: ExperimentKind,
    *,
    schemes=None,
    trials: int = DEFAULT_TRIALS,
    master_seed: int = 0,
    params: LinkBudgetParams | None = None,
    sweep_values=None,
    **overrides,
) -> ExperimentSpec:
    """ExperimentSpec with per-kind sweep grid and transmit-power defaults."""
    if params is None:
        power = default_power_dbm(kind)
        params = LinkBudgetParams(source_power_dbm=power, relay_power_dbm=power)
    if schemes is None:
        schemes = tuple(SchemeId)
    if sweep_values is None:
        sweep_values = DEFAULT_SWEEPS[kind]
    return ExperimentSpec(
        kind=kind,
        sweep_values=tuple(float(v) for v in sweep_values),
        schemes=tuple(schemes),
        trials=trials,
        master_seed=master_seed,
        params=params,
        **overrides,
    )


def _realize_trial(
    spec: ExperimentSpec,
    trial: int,
    num_relays: int,
    disk_center,
    params: LinkBudgetParams,
) -> ChannelRealization:
    # Substream scheme (master_seed first in every key):
    #   (0, trial)          relay-independent links S-IRS, IRS-D, S-D
    #   (1[, trial])        relay placement (trial omitted when frozen)
    #   (2, trial)          relay-side links
    #   (3, trial, scheme)  per-scheme randomness
    # The sweep value enters through geometry/power only, never the keys, so
    # sweep points are paired: the no-relay scheme sees bit-identical channels
    # at every sweep value and relay sets nest as the count grows.
    seed = spec.master_seed
    if spec.freeze_relay_positions:
        placement = substream(seed, 1)
    else:
        placement = substream(seed, 1, trial)
    positions = sample_relay_positions(disk_center, spec.disk_radius, num_relays, placement)
    topology = NetworkTopology(
        source_pos=spec.source_pos,
        dest_pos=spec.dest_pos,
        irs_pos=spec.irs_pos,
        relay_pos=positions,
        relay_disk_center=disk_center,
        relay_disk_radius=spec.disk_radius,
    )
    return realize_channels(
        topology, params, substream(seed, 2, trial), common_rng=substream(seed, 0, trial)
    )


def _sweep_point(spec: ExperimentSpec, value: float):
    """(params, disk_center, num_relays) of one sweep point."""
    params = spec.params
    center = spec.disk_center
    num_relays = spec.num_relays
    if spec.kind is ExperimentKind.POWER:
        params = replace(params, source_power_dbm=value, relay_power_dbm=value)
    elif spec.kind is ExperimentKind.RELAYS:
        num_relays = int(value)
    elif spec.kind is ExperimentKind.CENTER:
        center = (spec.disk_center[0], value, spec.disk_center[2])
    return params, center, num_relays


def collect_trial_rates(spec: ExperimentSpec) -> dict[tuple[SchemeId, float], np.ndarray]:
    """Per-trial achievable rates for every (scheme, sweep value).

    Trials are independently keyed off the master seed, so rates[t] does not
    depend on the total trial count or on execution order.
    """
    if spec.kind is ExperimentKind.CONVERGENCE:
        return _convergence_rates(spec)
    rates = {
        (scheme, value): np.empty(spec.trials)
        for scheme in spec.schemes
        for value in spec.sweep_values
    }
    for value in spec.sweep_values:
        params, center, num_relays = _sweep_point(spec, value)
        for trial in range(spec.trials):
            realization = _realize_trial(spec, trial, num_relays, center, params)
            for scheme in spec.schemes:
                rng = substream(spec.master_seed, 3, trial, _SCHEME_STREAM[scheme])
                result = run_scheme(
                    scheme,
                    realization,
                    params,
                    spec.codebook,
                    spec.refine_cfg,
                    spec.ql_cfg,
                    spec.fixed_phase_rad,
                    rng,
                )
                rates[(scheme, value)][trial] = result.rate
    return rates


def _convergence_rates(spec: ExperimentSpec) -> dict[tuple[SchemeId, float], np.ndarray]:
    # Rate at checkpoint k = the two-slot rate using the greedy relay of the
    # Q-table after k episodes, with fully refined phases; schemes without a
    # training loop contribute their (constant) per-trial rate at every
    # checkpoint.
    checkpoints = [int(v) for v in spec.sweep_values]
    rates = {
        (scheme, value): np.empty(spec.trials)
        for scheme in spec.schemes
        for value in spec.sweep_values
    }
    for trial in range(spec.trials):
        realization = _realize_trial(spec, trial, spec.num_relays, spec.disk_center, spec.params)
        for scheme in spec.schemes:
            rng = substream(spec.master_seed, 3, trial, _SCHEME_STREAM[scheme])
            if scheme is SchemeId.QL_JIRA:
                ql_seed = int(rng.integers(0, 2**31 - 1))
                rw = build_reward_matrix(
                    [relay_gain(row) for row in realization.h_relay_irs]
                )
                snapshots = train_trace(rw, replace(spec.ql_cfg, seed=ql_seed), checkpoints)
                cache: dict[int, float] = {}
                for (episode, table), value in zip(snapshots, spec.sweep_values):
                    relay = select_relay(table)
                    if relay not in cache:
                        gamma1, gamma2, _, _ = refined_two_slot(
                            realization, relay, spec.params, spec.codebook, spec.refine_cfg
                        )
                        cache[relay] = end_to_end_rate(slot_rate(gamma1), slot_rate(gamma2))
                    rates[(scheme, value)][trial] = cache[relay]
            else:
                result = run_scheme(
                    scheme,
                    realization,
                    spec.params,
                    spec.codebook,
                    spec.refine_cfg,
                    spec.ql_cfg,
                    spec.fixed_phase_rad,
                    rng,
                )
                for value in spec.sweep_values:
                    rates[(scheme, value)][trial] = result.rate
    return rates


def run_experiment(spec: ExperimentSpec) -> AggregateResult:
    """Aggregate per-trial rates into mean/std per (scheme, sweep value)."""
    rates = collect_trial_rates(spec)
    stats = {}
    for key, values in rates.items():
        std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
        stats[key] = RateStats(mean_rate=float(np.mean(values)), std_rate=std, trials=values.size)
    return AggregateResult(
        experiment=spec.kind.value,
        sweep_param=SWEEP_PARAMS[spec.kind],
        master_seed=spec.master_seed,
        stats=stats,
    )
