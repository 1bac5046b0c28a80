"""Network geometry, 3GPP TR 38.901 UMi street-canyon path loss, and Rician fading draws."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

TWO_PI = 2.0 * math.pi


class LinkClass(Enum):
    """Propagation class of a link; selects the path-loss formula and K-factor."""

    LOS = "los"
    NLOS = "nlos"


# The IRS has an unobstructed view of every terminal; all terminal-to-terminal
# links (source-destination, source-relay, relay-destination) are obstructed.
LINK_CLASSES = {
    "s_irs": LinkClass.LOS,
    "irs_dest": LinkClass.LOS,
    "irs_relay": LinkClass.LOS,
    "relay_irs": LinkClass.LOS,
    "s_dest": LinkClass.NLOS,
    "s_relay": LinkClass.NLOS,
    "relay_dest": LinkClass.NLOS,
}


def dbm_to_watts(power_dbm: float) -> float:
    return 10.0 ** ((power_dbm - 30.0) / 10.0)


def db_to_linear(value_db: float) -> float:
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class LinkBudgetParams:
    """Link-budget constants shared by every trial.

    Powers are dBm, the carrier frequency is GHz, and the Rician K-factors are
    dB (``-inf`` dB means pure Rayleigh scattering).
    """

    carrier_freq_ghz: float = 24.2
    terminal_height_m: float = 1.0
    noise_power_dbm: float = -60.0
    source_power_dbm: float = 40.0
    relay_power_dbm: float = 40.0
    num_irs_elements: int = 256
    rician_k_los_db: float = 10.0
    rician_k_nlos_db: float = float("-inf")

    def __post_init__(self):
        if self.carrier_freq_ghz <= 0:
            raise ValueError(f"carrier_freq_ghz must be > 0, got {self.carrier_freq_ghz}")
        if self.num_irs_elements < 0:
            raise ValueError(f"num_irs_elements must be >= 0, got {self.num_irs_elements}")

    @property
    def noise_power_w(self) -> float:
        return dbm_to_watts(self.noise_power_dbm)

    @property
    def source_power_w(self) -> float:
        return dbm_to_watts(self.source_power_dbm)

    @property
    def relay_power_w(self) -> float:
        return dbm_to_watts(self.relay_power_dbm)

    @property
    def k_los_linear(self) -> float:
        return db_to_linear(self.rician_k_los_db)

    @property
    def k_nlos_linear(self) -> float:
        return db_to_linear(self.rician_k_nlos_db)


@dataclass(frozen=True)
class NetworkTopology:
    """Node placement: source, destination, IRS, and relays inside a horizontal disk."""

    source_pos: np.ndarray
    dest_pos: np.ndarray
    irs_pos: np.ndarray
    relay_pos: np.ndarray  # (R, 3)
    relay_disk_center: np.ndarray
    relay_disk_radius: float

    def __post_init__(self):
        for name in ("source_pos", "dest_pos", "irs_pos", "relay_disk_center"):
            point = np.asarray(getattr(self, name), dtype=float).reshape(3)
            if not np.all(np.isfinite(point)):
                raise ValueError(f"{name} must be finite, got {point}")
            object.__setattr__(self, name, point)
        relays = np.asarray(self.relay_pos, dtype=float).reshape(-1, 3)
        if not np.all(np.isfinite(relays)):
            raise ValueError("relay positions must be finite")
        if self.relay_disk_radius < 0:
            raise ValueError(f"relay_disk_radius must be >= 0, got {self.relay_disk_radius}")
        horiz = np.hypot(
            relays[:, 0] - self.relay_disk_center[0],
            relays[:, 1] - self.relay_disk_center[1],
        )
        slack = 1e-9 * max(1.0, self.relay_disk_radius)
        if np.any(horiz > self.relay_disk_radius + slack):
            raise ValueError("relay positions must lie within the relay disk")
        object.__setattr__(self, "relay_pos", relays)

    @property
    def num_relays(self) -> int:
        return int(self.relay_pos.shape[0])


@dataclass(frozen=True)
class ChannelRealization:
    """One fading draw of every link, scaled to its path-loss amplitude.

    Vector channels have one entry per IRS element; per-relay quantities carry
    a leading relay axis.
    """

    h_s_relay: np.ndarray  # (R,)
    h_irs_relay: np.ndarray  # (R, N)
    h_s_irs: np.ndarray  # (N,)
    h_relay_dest: np.ndarray  # (R,)
    h_irs_dest: np.ndarray  # (N,)
    h_relay_irs: np.ndarray  # (R, N)
    h_s_dest: complex

    @property
    def num_relays(self) -> int:
        return int(self.h_s_relay.shape[0])

    @property
    def num_elements(self) -> int:
        return int(self.h_s_irs.shape[0])


def distance(a, b) -> float:
    """Euclidean distance in metres between two 3-D points."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("coordinates must be finite")
    return float(np.linalg.norm(a - b))


def sample_relay_positions(center, radius: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` points uniformly over the horizontal disk around ``center``.

    z is pinned to the center's z.  The two uniform variates of each point are
    drawn pair-wise, so the first k positions do not depend on ``count``.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    center = np.asarray(center, dtype=float).reshape(3)
    uv = rng.random((count, 2))
    r = radius * np.sqrt(uv[:, 0])
    ang = TWO_PI * uv[:, 1]
    return np.column_stack(
        [center[0] + r * np.cos(ang), center[1] + r * np.sin(ang), np.full(count, center[2])]
    )


def _checked_distance(d_m):
    d = np.asarray(d_m, dtype=float)
    if np.any(d <= 0) or not np.all(np.isfinite(d)):
        raise ValueError("distance must be positive and finite")
    return d


def path_loss_los_db(d_m, fc_ghz: float):
    """Line-of-sight UMi street-canyon path loss in dB (d in metres, f_c in GHz)."""
    d = _checked_distance(d_m)
    if fc_ghz <= 0:
        raise ValueError(f"carrier frequency must be > 0, got {fc_ghz}")
    pl = 32.4 + 21.0 * np.log10(d) + 20.0 * np.log10(fc_ghz)
    return float(pl) if np.isscalar(d_m) else pl


def path_loss_nlos_db(d_m, fc_ghz: float, h_ut_m: float = 1.0):
    """Non-line-of-sight UMi street-canyon path loss in dB, floored at the LoS value."""
    d = _checked_distance(d_m)
    if fc_ghz <= 0:
        raise ValueError(f"carrier frequency must be > 0, got {fc_ghz}")
    nlos = 22.4 + 35.5 * np.log10(d) + 21.3 * np.log10(fc_ghz) - 0.3 * (h_ut_m - 1.5)
    pl = np.maximum(32.4 + 21.0 * np.log10(d) + 20.0 * np.log10(fc_ghz), nlos)
    return float(pl) if np.isscalar(d_m) else pl


def link_path_loss_db(link_class: LinkClass, d_m, params: LinkBudgetParams):
    """Path loss of a link of the given class under the shared link budget."""
    if link_class is LinkClass.LOS:
        return path_loss_los_db(d_m, params.carrier_freq_ghz)
    return path_loss_nlos_db(d_m, params.carrier_freq_ghz, params.terminal_height_m)


def draw_small_scale(k_factor_linear: float, shape, rng: np.random.Generator) -> np.ndarray:
    """Unit-mean-power Rician draw(s): fixed-magnitude component of power K/(K+1)
    at a uniformly random phase, plus circularly-symmetric scatter of power 1/(K+1).

    ``k_factor_linear = inf`` collapses to a pure unit-modulus coefficient.  The
    phase and scatter variates are always consumed in the same order, so the
    stream position does not depend on K.
    """
    if not k_factor_linear >= 0:
        raise ValueError(f"K-factor must be >= 0, got {k_factor_linear}")
    shape = (shape,) if isinstance(shape, int) else tuple(shape)
    phase = rng.random(shape)
    scatter = rng.standard_normal(shape + (2,))
    los = np.exp(1j * TWO_PI * phase)
    if math.isinf(k_factor_linear):
        return los
    los_amp = math.sqrt(k_factor_linear / (k_factor_linear + 1.0))
    scat_amp = math.sqrt(1.0 / (k_factor_linear + 1.0))
    return los_amp * los + scat_amp * (scatter[..., 0] + 1j * scatter[..., 1]) / math.sqrt(2.0)


def realize_channels(
    topology: NetworkTopology,
    params: LinkBudgetParams,
    rng: np.random.Generator,
    common_rng: np.random.Generator | None = None,
) -> ChannelRealization:
    """Draw one fading realization of all links, amplitude-scaled by 10^(-PL/20).

    Each channel array comes from its own child generator, spawned in a fixed
    order (S-IRS, IRS-D, S-D from ``common_rng``; S-relay, IRS-relay, relay-D,
    relay-IRS from ``rng``), so one link's draw never depends on another
    link's shape and leading relay rows are stable as the relay count grows.
    ``common_rng`` lets callers hold the relay-independent links fixed while
    sweeping relay placement; it defaults to ``rng``.
    """
    if common_rng is None:
        common_rng = rng
    c_s_irs, c_irs_dest, c_s_dest = common_rng.spawn(3)
    c_s_rel, c_irs_rel, c_rel_dest, c_rel_irs = rng.spawn(4)

    n = params.num_irs_elements
    k_los = params.k_los_linear
    k_nlos = params.k_nlos_linear

    def amp(link_class, d):
        return 10.0 ** (-np.asarray(link_path_loss_db(link_class, d, params)) / 20.0)

    d_s_irs = distance(topology.source_pos, topology.irs_pos)
    d_irs_dest = distance(topology.irs_pos, topology.dest_pos)
    d_s_dest = distance(topology.source_pos, topology.dest_pos)
    relays = topology.relay_pos
    d_s_rel = np.linalg.norm(relays - topology.source_pos, axis=1)
    d_irs_rel = np.linalg.norm(relays - topology.irs_pos, axis=1)
    d_rel_dest = np.linalg.norm(relays - topology.dest_pos, axis=1)

    r = topology.num_relays
    h_s_irs = amp(LinkClass.LOS, d_s_irs) * draw_small_scale(k_los, (n,), c_s_irs)
    h_irs_dest = amp(LinkClass.LOS, d_irs_dest) * draw_small_scale(k_los, (n,), c_irs_dest)
    h_s_dest = amp(LinkClass.NLOS, d_s_dest) * draw_small_scale(k_nlos, (), c_s_dest)
    h_s_relay = amp(LinkClass.NLOS, d_s_rel) * draw_small_scale(k_nlos, (r,), c_s_rel)
    h_irs_relay = amp(LinkClass.LOS, d_irs_rel)[:, None] * draw_small_scale(k_los, (r, n), c_irs_rel)
    h_relay_dest = amp(LinkClass.NLOS, d_rel_dest) * draw_small_scale(k_nlos, (r,), c_rel_dest)
    h_relay_irs = amp(LinkClass.LOS, d_irs_rel)[:, None] * draw_small_scale(k_los, (r, n), c_rel_irs)

    return ChannelRealization(
        h_s_relay=h_s_relay,
        h_irs_relay=h_irs_relay,
        h_s_irs=h_s_irs,
        h_relay_dest=h_relay_dest,
        h_irs_dest=h_irs_dest,
        h_relay_irs=h_relay_irs,
        h_s_dest=complex(h_s_dest),
    )


def substream(master_seed: int, *path: int) -> np.random.Generator:
    """Generator keyed by (master_seed, *path); the same key always gives the
    same stream, so independently keyed draws are order-independent."""
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), *map(int, path)]))
