"""Acceptance suite: one test per criterion, printing one PASS/FAIL line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines as they
complete; the heavy Monte Carlo fixtures are shared across criteria.
"""

import itertools
import math
import time

import numpy as np
import pytest

from irsrelay.cli import main
from irsrelay.harness import ExperimentKind, build_spec, collect_trial_rates
from irsrelay.linkrate import PhaseCodebook
from irsrelay.phaseopt import build_quadratic_form, refine_element, successive_refinement
from irsrelay.qselect import QLearnConfig, build_reward_matrix, greedy_max_gain_relay, select_relay, train
from irsrelay.schemes import RELAY_SCHEMES, SchemeId

TRIALS = 500
SEED = 0


def report(name: str, ok: bool, detail: str) -> bool:
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'} | {name} | {detail}")
    return ok


def timed(builder):
    start = time.perf_counter()
    value = builder()
    return value, time.perf_counter() - start


@pytest.fixture(scope="module")
def fig2():
    return timed(
        lambda: collect_trial_rates(
            build_spec(ExperimentKind.POWER, trials=TRIALS, master_seed=SEED)
        )
    )


@pytest.fixture(scope="module")
def fig3():
    return timed(
        lambda: collect_trial_rates(
            build_spec(
                ExperimentKind.RELAYS,
                trials=TRIALS,
                master_seed=SEED,
                schemes=(SchemeId.QL_JIRA, SchemeId.NO_RELAY),
            )
        )
    )


@pytest.fixture(scope="module")
def fig4():
    return timed(
        lambda: collect_trial_rates(
            build_spec(ExperimentKind.CENTER, trials=TRIALS, master_seed=SEED)
        )
    )


@pytest.fixture(scope="module")
def fig5():
    return timed(
        lambda: collect_trial_rates(
            build_spec(
                ExperimentKind.CONVERGENCE,
                trials=TRIALS,
                master_seed=SEED,
                schemes=(SchemeId.QL_JIRA,),
            )
        )
    )


def random_instance(rng, n):
    h_direct = (rng.standard_normal() + 1j * rng.standard_normal()) / math.sqrt(2)
    h_rx = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2)
    h_tx = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2)
    return h_direct, h_rx, h_tx


def test_phase_optimizer_local_optimality():
    """200 random instances (N=16, K=16): no single-element improvement exists."""
    start = time.perf_counter()
    rng = np.random.default_rng(101)
    cb = PhaseCodebook(bits=4)
    failures = 0
    for _ in range(200):
        h_direct, h_rx, h_tx = random_instance(rng, 16)
        cfg, _ = successive_refinement(h_direct, h_rx, h_tx, 1.0, 1.0, cb)
        theta = h_rx * h_tx
        phasors = np.exp(1j * cb.angles[cfg.indices])
        best = abs(h_direct + np.sum(phasors * theta))
        for l in range(16):
            for k in range(cb.levels):
                trial = phasors.copy()
                trial[l] = np.exp(1j * cb.angles[k])
                if abs(h_direct + np.sum(trial * theta)) > best + 1e-12:
                    failures += 1
        elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60
    assert report(
        "phase optimizer local optimality",
        ok,
        f"{failures} improvable instances of 200, {elapsed:.1f}s",
    )


def test_phase_optimizer_exhaustive_oracle():
    """100 random instances (N=4, K=4) against all 256 configurations."""
    start = time.perf_counter()
    rng = np.random.default_rng(202)
    cb = PhaseCodebook(bits=2)
    matches = 0
    monotone_violations = 0
    below_init = 0
    for _ in range(100):
        h_direct, h_rx, h_tx = random_instance(rng, 4)
        theta = h_rx * h_tx
        form = build_quadratic_form(h_direct, h_rx, h_tx)

        # replay the sweep loop element by element to watch every update
        indices = [0, 0, 0, 0]
        v = np.ones(4, dtype=complex)  # all-zero phase indices
        init = abs(h_direct + np.sum(v * theta))
        last = init
        for _sweep in range(100):
            changed = False
            for l in range(4):
                k = refine_element(form, v, l, cb)
                changed |= k != indices[l]
                indices[l] = k
                v[l] = np.exp(1j * cb.angles[k])
                current = abs(h_direct + np.sum(v * theta))
                if current < last - 1e-12:
                    monotone_violations += 1
                last = current
            if not changed:
                break

        cfg, _ = successive_refinement(h_direct, h_rx, h_tx, 1.0, 1.0, cb)
        final = abs(h_direct + np.sum(np.exp(1j * cb.angles[cfg.indices]) * theta))
        assert final == pytest.approx(last, rel=1e-12)  # replay mirrors the optimizer
        if final < init - 1e-12:
            below_init += 1
        best = max(
            abs(h_direct + np.sum(np.exp(1j * cb.angles[list(combo)]) * theta))
            for combo in itertools.product(range(4), repeat=4)
        )
        if final >= best - 1e-12:
            matches += 1
    elapsed = time.perf_counter() - start
    ok = monotone_violations == 0 and below_init == 0 and elapsed < 10
    assert report(
        "phase optimizer exhaustive oracle",
        ok,
        f"global-optimum matches {matches}/100, monotone violations {monotone_violations}, "
        f"below-init {below_init}, {elapsed:.1f}s",
    )


def test_q_learning_selects_max_gain_relay():
    """R=10 random gain vectors: trained selection equals arg-max gain >= 95/100."""
    start = time.perf_counter()
    rng = np.random.default_rng(303)
    hits = 0
    for run in range(100):
        gains = rng.uniform(0.1, 10.0, 10)
        table = train(build_reward_matrix(gains), QLearnConfig(seed=1000 + run))
        hits += select_relay(table) == greedy_max_gain_relay(gains)
    elapsed = time.perf_counter() - start
    ok = hits >= 95 and elapsed < 30
    assert report("q-learning relay selection", ok, f"{hits}/100 arg-max picks, {elapsed:.1f}s")


def test_power_anchor_at_40_dbm(fig2):
    """40 dBm point: ql-jira tracks r-irs-optimal within 0.2, the scheme ordering
    ql-jira > rs > max(fpa, rpa) > no-relay holds, and the ql-jira mean lands in
    [2.5, 5.5] bps/Hz."""
    rates, elapsed = fig2
    mean = {s: float(np.mean(rates[(s, 40.0)])) for s in SchemeId}
    checks = {
        "|ql-jira - r-irs-optimal| <= 0.2": abs(mean[SchemeId.QL_JIRA] - mean[SchemeId.R_IRS_OPTIMAL])
        <= 0.2,
        "ql-jira > rs": mean[SchemeId.QL_JIRA] > mean[SchemeId.RANDOM_SELECTION],
        "rs > max(fpa, rpa)": mean[SchemeId.RANDOM_SELECTION]
        > max(mean[SchemeId.FIXED_PHASE], mean[SchemeId.RANDOM_PHASE]),
        "max(fpa, rpa) > no-relay": max(mean[SchemeId.FIXED_PHASE], mean[SchemeId.RANDOM_PHASE])
        > mean[SchemeId.NO_RELAY],
        "ql-jira mean in [2.5, 5.5]": 2.5 <= mean[SchemeId.QL_JIRA] <= 5.5,
        "runtime < 5 min": elapsed < 300,
    }
    means_txt = ", ".join(f"{s.value}={mean[s]:.3f}" for s in SchemeId)
    failed = [name for name, ok in checks.items() if not ok]
    assert report(
        "power anchor at 40 dBm",
        not failed,
        f"{means_txt}; failed: {failed or 'none'}",
    )


def test_power_trend_monotone(fig2):
    """Every scheme's mean rate is non-decreasing across the 0..70 dBm sweep."""
    rates, elapsed = fig2
    sweep = tuple(float(p) for p in range(0, 71, 10))
    offenders = []
    for scheme in SchemeId:
        means = [float(np.mean(rates[(scheme, v)])) for v in sweep]
        if any(means[i + 1] < means[i] for i in range(len(means) - 1)):
            offenders.append(scheme.value)
    ok = not offenders and elapsed < 600
    assert report(
        "power trend monotone", ok, f"offenders: {offenders or 'none'}, sweep took {elapsed:.0f}s"
    )


def test_relay_count_trend(fig3):
    """ql-jira at 30 relays >= its 5-relay mean minus one standard error;
    no-relay bit-identical across relay counts."""
    rates, elapsed = fig3
    q5 = rates[(SchemeId.QL_JIRA, 5.0)]
    q30 = rates[(SchemeId.QL_JIRA, 30.0)]
    threshold = float(np.mean(q5) - np.std(q5, ddof=1) / math.sqrt(q5.size))
    scaling_ok = float(np.mean(q30)) >= threshold
    nr = [rates[(SchemeId.NO_RELAY, v)] for v in (5.0, 10.0, 15.0, 20.0, 25.0, 30.0)]
    flat_ok = all(np.array_equal(nr[0], x) for x in nr[1:])
    ok = scaling_ok and flat_ok
    assert report(
        "relay count trend",
        ok,
        f"ql mean30={np.mean(q30):.4f} vs mean5-stderr={threshold:.4f}, "
        f"no-relay identical={flat_ok}, {elapsed:.0f}s",
    )


def test_cell_center_trend(fig4):
    """Every relay-using scheme's mean at center y=0 >= its mean at y=20; the
    no-relay curve is flat."""
    rates, elapsed = fig4
    offenders = []
    detail = []
    for scheme in RELAY_SCHEMES:
        near = float(np.mean(rates[(scheme, 0.0)]))
        far = float(np.mean(rates[(scheme, 20.0)]))
        detail.append(f"{scheme.value}: y0={near:.3f} y20={far:.3f}")
        if near < far:
            offenders.append(scheme.value)
    nr = [rates[(SchemeId.NO_RELAY, v)] for v in (0.0, 5.0, 10.0, 15.0, 20.0)]
    flat_ok = all(np.array_equal(nr[0], x) for x in nr[1:])
    ok = not offenders and flat_ok
    assert report(
        "cell center trend",
        ok,
        f"{'; '.join(sorted(detail))}; offenders: {offenders or 'none'}; "
        f"no-relay flat={flat_ok}; {elapsed:.0f}s",
    )


def test_convergence_plateau(fig5):
    """30 dBm trace: the 500-episode moving average changes < 1% beyond 4000."""
    rates, elapsed = fig5
    sweep = tuple(float(e) for e in range(100, 10001, 100))
    trace = np.array([float(np.mean(rates[(SchemeId.QL_JIRA, v)])) for v in sweep])
    window = 5  # 500 episodes at 100-episode checkpoints
    moving = np.convolve(trace, np.ones(window) / window, mode="valid")
    episodes = np.array(sweep[window - 1 :])
    rel_change = np.abs(np.diff(moving)) / moving[:-1]
    beyond = episodes[1:] > 4000
    worst = float(rel_change[beyond].max())
    ok = bool((rel_change[beyond] < 0.01).all())
    assert report(
        "convergence plateau",
        ok,
        f"max relative change beyond 4000 episodes = {worst:.2e}, "
        f"final mean rate {trace[-1]:.4f} bps/Hz, {elapsed:.0f}s",
    )


def test_csv_determinism(tmp_path):
    """Identical (config, seed) produces byte-identical CSV on consecutive runs."""
    args = [
        "--experiment", "power", "--trials", "10", "--elements", "16",
        "--relays", "4", "--episodes", "2000", "--seed", "11",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    ok = a.read_bytes() == b.read_bytes()
    assert report("csv determinism", ok, f"{a.stat().st_size} bytes, all schemes, 8 sweep points")
