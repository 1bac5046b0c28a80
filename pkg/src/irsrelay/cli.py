"""Command-line entry point: configure an experiment, run it, write a CSV."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from irsrelay.harness import (
    AggregateResult,
    DEFAULT_TRIALS,
    ExperimentKind,
    ExperimentSpec,
    build_spec,
    default_power_dbm,
    run_experiment,
)
from irsrelay.linkrate import PhaseCodebook
from irsrelay.netmodel import LinkBudgetParams
from irsrelay.phaseopt import RefinementConfig
from irsrelay.qselect import QLearnConfig
from irsrelay.schemes import SchemeId

CSV_HEADER = "experiment,scheme,sweep_param,sweep_value,trials,mean_rate_bps_hz,std_rate_bps_hz,seed"

_SCHEMES_BY_NAME = {scheme.value: scheme for scheme in SchemeId}
_KINDS_BY_NAME = {kind.value: kind for kind in ExperimentKind}

_DEFAULTS = {
    "experiment": "power",
    "schemes": ",".join(s.value for s in SchemeId),
    "trials": DEFAULT_TRIALS,
    "seed": 0,
    "out": None,
    "fc": 24.2,
    "elements": 256,
    "levels": 16,
    "relays": 10,
    "noise-dbm": -60.0,
    "power-dbm": None,
    "discount": 0.8,
    "egreedy": 0.7,
    "learning-rate": 0.5,
    "episodes": 10000,
    "fixed-phase": 2.1,
    "k-los-db": 10.0,
    "k-nlos-db": float("-inf"),
    "tol": 1e-4,
    "max-sweeps": 100,
    "freeze-relays": False,
}

_CASTS = {
    "experiment": str,
    "schemes": str,
    "trials": int,
    "seed": int,
    "out": str,
    "fc": float,
    "elements": int,
    "levels": int,
    "relays": int,
    "noise-dbm": float,
    "power-dbm": float,
    "discount": float,
    "egreedy": float,
    "learning-rate": float,
    "episodes": int,
    "fixed-phase": float,
    "k-los-db": float,
    "k-nlos-db": float,
    "tol": float,
    "max-sweeps": int,
    "freeze-relays": lambda s: s.strip().lower() in ("1", "true", "yes", "on"),
}


@dataclass(frozen=True)
class RunConfig:
    spec: ExperimentSpec
    out: str


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irsrelay",
        description=(
            "Monte Carlo link-level simulator for relay- and IRS-assisted two-slot "
            "communication. Units: powers in dBm, frequencies in GHz, distances in "
            "metres, angles in radians."
        ),
    )
    parser.add_argument(
        "--experiment",
        choices=sorted(_KINDS_BY_NAME),
        default=None,
        help="experiment kind: sweep transmit power, relay count, relay-disk "
        "center y, or trace Q-learning convergence (default: power)",
    )
    parser.add_argument(
        "--schemes",
        default=None,
        metavar="LIST",
        help=f"comma-separated scheme names (default: all of {','.join(_SCHEMES_BY_NAME)})",
    )
    parser.add_argument("--trials", type=int, default=None, help="trials per sweep point (default: 500)")
    parser.add_argument("--seed", type=int, default=None, help="master seed (default: 0)")
    parser.add_argument("--out", default=None, metavar="PATH", help="output CSV path (required)")
    parser.add_argument(
        "--config",
        default=None,
        metavar="PATH",
        help="key=value config file ('#' comments); flags override file values",
    )
    parser.add_argument("--fc", type=float, default=None, help="carrier frequency, GHz (default: 24.2)")
    parser.add_argument("--elements", type=int, default=None, help="IRS element count N (default: 256)")
    parser.add_argument("--levels", type=int, default=None, help="discrete phase levels, power of two (default: 16)")
    parser.add_argument("--relays", type=int, default=None, help="relay count for non-relay sweeps (default: 10)")
    parser.add_argument("--noise-dbm", type=float, default=None, help="noise power, dBm (default: -60)")
    parser.add_argument(
        "--power-dbm",
        type=float,
        default=None,
        help="fixed transmit power, dBm; ignored by the power sweep "
        "(default: 40, or 30 for convergence)",
    )
    parser.add_argument("--discount", type=float, default=None, help="Q-learning discount factor (default: 0.8)")
    parser.add_argument("--egreedy", type=float, default=None, help="exploration probability (default: 0.7)")
    parser.add_argument("--learning-rate", type=float, default=None, help="Q-learning step size (default: 0.5)")
    parser.add_argument("--episodes", type=int, default=None, help="Q-learning episodes (default: 10000)")
    parser.add_argument("--fixed-phase", type=float, default=None, help="fpa slot-2 phase, radians (default: 2.1)")
    parser.add_argument("--k-los-db", type=float, default=None, help="Rician K of LoS links, dB (default: 10)")
    parser.add_argument("--k-nlos-db", type=float, default=None, help="Rician K of NLoS links, dB (default: -inf)")
    parser.add_argument("--tol", type=float, default=None, help="refinement stop threshold, bps/Hz (default: 1e-4)")
    parser.add_argument("--max-sweeps", type=int, default=None, help="refinement sweep cap (default: 100)")
    parser.add_argument(
        "--freeze-relays",
        action="store_const",
        const=True,
        default=None,
        help="draw relay positions once instead of per trial",
    )
    return parser


def _load_config_file(path: str, parser: argparse.ArgumentParser) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        parser.error(f"--config: cannot read '{path}': {exc}")
    values = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            parser.error(f"--config: line {lineno}: expected key=value, got '{line}'")
        key, _, text = line.partition("=")
        key = key.strip()
        if key not in _CASTS:
            parser.error(f"--config: unknown key '{key}'")
        try:
            values[key] = _CASTS[key](text.strip())
        except ValueError:
            parser.error(f"--config: invalid value for '{key}': '{text.strip()}'")
    return values


def _parse_schemes(text: str, parser: argparse.ArgumentParser) -> tuple[SchemeId, ...]:
    names = [token.strip() for token in text.split(",") if token.strip()]
    if not names:
        parser.error("--schemes: expected at least one scheme name")
    schemes = []
    for name in names:
        if name not in _SCHEMES_BY_NAME:
            parser.error(
                f"--schemes: unknown scheme '{name}' (choose from {', '.join(_SCHEMES_BY_NAME)})"
            )
        schemes.append(_SCHEMES_BY_NAME[name])
    return tuple(schemes)


def parse_args(argv) -> RunConfig:
    """Resolve flags over config-file values over built-in defaults."""
    parser = build_parser()
    args = parser.parse_args(argv)

    merged = dict(_DEFAULTS)
    if args.config is not None:
        merged.update(_load_config_file(args.config, parser))
    flag_values = {
        key: getattr(args, key.replace("-", "_")) for key in _DEFAULTS if key != "out"
    }
    flag_values["out"] = args.out
    merged.update({key: value for key, value in flag_values.items() if value is not None})

    if merged["out"] is None:
        parser.error("--out: an output CSV path is required")
    if merged["experiment"] not in _KINDS_BY_NAME:
        parser.error(f"--experiment: unknown experiment '{merged['experiment']}'")
    kind = _KINDS_BY_NAME[merged["experiment"]]
    schemes = _parse_schemes(merged["schemes"], parser)

    power = merged["power-dbm"]
    if power is None:
        power = default_power_dbm(kind)
    try:
        params = LinkBudgetParams(
            carrier_freq_ghz=merged["fc"],
            noise_power_dbm=merged["noise-dbm"],
            source_power_dbm=power,
            relay_power_dbm=power,
            num_irs_elements=merged["elements"],
            rician_k_los_db=merged["k-los-db"],
            rician_k_nlos_db=merged["k-nlos-db"],
        )
        spec = build_spec(
            kind,
            schemes=schemes,
            trials=merged["trials"],
            master_seed=merged["seed"],
            params=params,
            num_relays=merged["relays"],
            codebook=PhaseCodebook.from_levels(merged["levels"]),
            refine_cfg=RefinementConfig(tolerance=merged["tol"], max_sweeps=merged["max-sweeps"]),
            ql_cfg=QLearnConfig(
                learning_rate=merged["learning-rate"],
                discount=merged["discount"],
                explore_prob=merged["egreedy"],
                episodes=merged["episodes"],
            ),
            fixed_phase_rad=merged["fixed-phase"],
            freeze_relay_positions=bool(merged["freeze-relays"]),
        )
    except ValueError as exc:
        parser.error(str(exc))
    return RunConfig(spec=spec, out=merged["out"])


def write_csv(result: AggregateResult, path: str) -> None:
    """One sorted row per (scheme, sweep value); floats carry 6 decimals."""
    rows = sorted(result.stats.items(), key=lambda item: (item[0][0].value, item[0][1]))
    lines = [CSV_HEADER]
    for (scheme, value), stats in rows:
        lines.append(
            f"{result.experiment},{scheme.value},{result.sweep_param},{value:.6f},"
            f"{stats.trials},{stats.mean_rate:.6f},{stats.std_rate:.6f},{result.master_seed}"
        )
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def main(argv=None) -> int:
    config = parse_args(sys.argv[1:] if argv is None else argv)
    result = run_experiment(config.spec)
    try:
        write_csv(result, config.out)
    except OSError as exc:
        print(f"error: cannot write '{config.out}': {exc}", file=sys.stderr)
        return 1
    print(
        f"{config.spec.kind.value}: {len(result.stats)} (scheme, sweep) rows "
        f"x {config.spec.trials} trials -> {config.out}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
