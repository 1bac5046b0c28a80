"""One end-to-end trial of each relay/IRS scheme over a single channel realization."""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from irsrelay.linkrate import (
    PhaseCodebook,
    PhaseConfig,
    SlotSnr,
    cascade_gain,
    end_to_end_rate,
    slot_rate,
    snr,
)
from irsrelay.netmodel import ChannelRealization, LinkBudgetParams
from irsrelay.phaseopt import RefinementConfig, successive_refinement
from irsrelay.qselect import (
    QLearnConfig,
    build_reward_matrix,
    greedy_max_gain_relay,
    relay_gain,
    select_relay,
    train,
)


class SchemeId(Enum):
    QL_JIRA = "ql-jira"  # Q-learning relay selection + refined phases in both slots
    R_IRS_OPTIMAL = "r-irs-optimal"  # max-gain relay + refined phases in both slots
    RANDOM_SELECTION = "rs"  # uniformly random relay + refined phases in both slots
    FIXED_PHASE = "fpa"  # max-gain relay, slot-2 phases fixed to one angle
    RANDOM_PHASE = "rpa"  # max-gain relay, slot-2 phases drawn at random
    NO_RELAY = "no-relay"  # single-slot source-to-destination via the IRS


RELAY_SCHEMES = frozenset(s for s in SchemeId if s is not SchemeId.NO_RELAY)


@dataclass(frozen=True)
class SchemeResult:
    """Outcome of one trial: chosen relay, per-slot SNRs, and achievable rate."""

    scheme: SchemeId
    selected_relay: int | None
    gamma1: float
    gamma2: float | None
    rate: float
    phi1: PhaseConfig
    phi2: PhaseConfig | None

    @property
    def slot_snr(self) -> SlotSnr:
        if self.gamma2 is None:
            raise ValueError("single-slot result has no second-slot SNR")
        return SlotSnr(self.gamma1, self.gamma2)


def refined_two_slot(
    realization: ChannelRealization,
    relay: int,
    params: LinkBudgetParams,
    codebook: PhaseCodebook,
    refine_cfg: RefinementConfig,
) -> tuple[float, float, PhaseConfig, PhaseConfig]:
    """Refine both slots for one relay; returns (gamma1, gamma2, phi1, phi2)."""
    noise = params.noise_power_w
    phi1, _ = successive_refinement(
        realization.h_s_relay[relay],
        realization.h_irs_relay[relay],
        realization.h_s_irs,
        params.source_power_w,
        noise,
        codebook,
        refine_cfg,
    )
    phi2, _ = successive_refinement(
        realization.h_relay_dest[relay],
        realization.h_irs_dest,
        realization.h_relay_irs[relay],
        params.relay_power_w,
        noise,
        codebook,
        refine_cfg,
    )
    gamma1 = snr(
        cascade_gain(
            realization.h_s_relay[relay], realization.h_irs_relay[relay], phi1, realization.h_s_irs
        ),
        params.source_power_w,
        noise,
    )
    gamma2 = snr(
        cascade_gain(
            realization.h_relay_dest[relay],
            realization.h_irs_dest,
            phi2,
            realization.h_relay_irs[relay],
        ),
        params.relay_power_w,
        noise,
    )
    return gamma1, gamma2, phi1, phi2


def run_scheme(
    scheme: SchemeId,
    realization: ChannelRealization,
    params: LinkBudgetParams,
    codebook: PhaseCodebook,
    refine_cfg: RefinementConfig,
    ql_cfg: QLearnConfig,
    fixed_phase_rad: float,
    rng: np.random.Generator,
    *,
    no_relay_half_slot: bool = False,
) -> SchemeResult:
    """Run one trial of ``scheme`` on a fixed realization.

    ``rng`` feeds only the scheme's own randomness, drawn up front in a fixed
    order: the Q-learning seed (ql-jira), the relay pick (rs), or the slot-2
    indices (rpa).  The no-relay scheme keeps the whole slot by default;
    ``no_relay_half_slot`` applies the two-slot 1/2 factor instead.
    """
    noise = params.noise_power_w
    if scheme is SchemeId.NO_RELAY:
        phi1, _ = successive_refinement(
            realization.h_s_dest,
            realization.h_irs_dest,
            realization.h_s_irs,
            params.source_power_w,
            noise,
            codebook,
            refine_cfg,
        )
        gamma1 = snr(
            cascade_gain(realization.h_s_dest, realization.h_irs_dest, phi1, realization.h_s_irs),
            params.source_power_w,
            noise,
        )
        rate = slot_rate(gamma1)
        if no_relay_half_slot:
            rate *= 0.5
        return SchemeResult(scheme, None, gamma1, None, rate, phi1, None)

    num_relays = realization.num_relays
    if num_relays < 1:
        raise ValueError(f"scheme '{scheme.value}' needs at least one relay")
    gains = np.array([relay_gain(row) for row in realization.h_relay_irs])

    if scheme is SchemeId.QL_JIRA:
        # Per-trial exploration seed so independently seeded trials stay independent.
        ql_seed = int(rng.integers(0, 2**31 - 1))
        table = train(build_reward_matrix(gains), replace(ql_cfg, seed=ql_seed))
        relay = select_relay(table)
    elif scheme is SchemeId.RANDOM_SELECTION:
        relay = int(rng.integers(0, num_relays))
    else:
        relay = greedy_max_gain_relay(gains)

    if scheme in (SchemeId.FIXED_PHASE, SchemeId.RANDOM_PHASE):
        n = realization.num_elements
        if scheme is SchemeId.FIXED_PHASE:
            phi2 = PhaseConfig(
                codebook, np.full(n, codebook.nearest_index(fixed_phase_rad), dtype=np.int64)
            )
        else:
            phi2 = PhaseConfig(codebook, rng.integers(0, codebook.levels, size=n))
        phi1, _ = successive_refinement(
            realization.h_s_relay[relay],
            realization.h_irs_relay[relay],
            realization.h_s_irs,
            params.source_power_w,
            noise,
            codebook,
            refine_cfg,
        )
        gamma1 = snr(
            cascade_gain(
                realization.h_s_relay[relay],
                realization.h_irs_relay[relay],
                phi1,
                realization.h_s_irs,
            ),
            params.source_power_w,
            noise,
        )
        gamma2 = snr(
            cascade_gain(
                realization.h_relay_dest[relay],
                realization.h_irs_dest,
                phi2,
                realization.h_relay_irs[relay],
            ),
            params.relay_power_w,
            noise,
        )
    else:
        gamma1, gamma2, phi1, phi2 = refined_two_slot(
            realization, relay, params, codebook, refine_cfg
        )

    rate = end_to_end_rate(slot_rate(gamma1), slot_rate(gamma2))
    return SchemeResult(scheme, relay, gamma1, gamma2, rate, phi1, phi2)
