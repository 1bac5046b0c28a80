"""Link-level simulator for relay- and IRS-assisted two-slot communication."""

from irsrelay.harness import ExperimentKind, ExperimentSpec, build_spec, run_experiment
from irsrelay.linkrate import PhaseCodebook, PhaseConfig
from irsrelay.netmodel import (
    ChannelRealization,
    LinkBudgetParams,
    NetworkTopology,
    realize_channels,
)
from irsrelay.phaseopt import RefinementConfig, successive_refinement
from irsrelay.qselect import QLearnConfig, build_reward_matrix, select_relay, train
from irsrelay.schemes import SchemeId, SchemeResult, run_scheme

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization",
    "ExperimentKind",
    "ExperimentSpec",
    "LinkBudgetParams",
    "NetworkTopology",
    "PhaseCodebook",
    "PhaseConfig",
    "QLearnConfig",
    "RefinementConfig",
    "SchemeId",
    "SchemeResult",
    "build_reward_matrix",
    "build_spec",
    "realize_channels",
    "run_experiment",
    "run_scheme",
    "select_relay",
    "successive_refinement",
    "train",
]
