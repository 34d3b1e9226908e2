"""End-to-end acceptance gate: nine numbered checks on the whole package.

Each test prints one [PASS]/[FAIL] summary line directly on the terminal
(bypassing capture) and then asserts, so a plain pytest run shows the
scorecard even when everything is green.
"""

import dataclasses
import math
import time

import numpy as np
import pytest
from scipy import stats

from oracles import stationary_from_step
from secjam import (
    SystemParams,
    estimate_regime_means_and_beta,
    geo_geo1_steady_state,
    jamming_gain,
    null_space_precoder,
    optimal_weights,
    predict_mu_a_alice_saturated,
    predict_mu_a_jimmy_saturated,
    sample_channels,
    simulate,
    validation,
)

_GRID9 = [i / 10 for i in range(1, 10)]
_GRID10 = [i / 10 for i in range(1, 11)]
_SWEEP_SLOTS = 200_000


def _report(capsys, num, label, ok, detail):
    with capsys.disabled():
        status = "PASS" if ok else "FAIL"
        print(f"[{status}] criterion {num}: {label} ({detail})", flush=True)


@pytest.fixture(scope="module")
def regime_batches():
    """Sixteen independent regime-mean estimates at the default parameters.

    Row b holds (mean_jammed, mean_unjammed, beta_hat) from 25000 draws, so
    predictor values get both a point estimate and a t confidence interval.
    """
    p = SystemParams()
    children = np.random.default_rng(p.seed).spawn(16)
    rows = [estimate_regime_means_and_beta(p, 25_000, rng=c) for c in children]
    return np.array(rows)


@pytest.fixture(scope="module")
def jammer_arrival_sweep():
    """Simulated curve over lambda_j at default parameters (six antennas)."""
    return {
        lam: simulate(SystemParams(lambda_j=lam), _SWEEP_SLOTS) for lam in _GRID10
    }


def _predictor_interval(values):
    values = np.asarray(values)
    half = stats.t.ppf(0.975, values.size - 1) * values.std(ddof=1) / math.sqrt(values.size)
    return float(values.mean()), float(half)


def test_beamformer_dominates_sampled_competitors(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2026)
    worst_rel_margin = math.inf
    worst_leak = 0.0
    for k in range(2, 7):
        bank = rng.standard_normal((1_000_000, k - 1, 2)).view(np.complex128)[..., 0]
        bank /= np.linalg.norm(bank, axis=1, keepdims=True)
        for _ in range(100):
            ch = sample_channels(rng, k)
            weights = optimal_weights(ch.h_jb, ch.h_je)
            opt = jamming_gain(weights, ch.h_je)
            worst_leak = max(worst_leak, abs(np.vdot(weights.g, ch.h_jb)))
            basis = null_space_precoder(ch.h_jb).matrix
            rivals = np.abs(bank.conj() @ (basis.conj().T @ ch.h_je)) ** 2
            worst_rel_margin = min(worst_rel_margin, (opt - rivals.max()) / opt)
    elapsed = time.perf_counter() - t0
    ok = worst_rel_margin >= -1e-12 and worst_leak <= 1e-10 and elapsed <= 60.0
    _report(
        capsys, 1, "beamformer dominates sampled competitors",
        ok,
        f"min margin {worst_rel_margin:.1e} of optimum, "
        f"max destination leak {worst_leak:.1e}, {elapsed:.0f}s",
    )
    assert ok


def test_battery_closed_form_matches_linear_solve(capsys):
    worst = 0.0
    for lam in _GRID9:
        for mu in _GRID9:
            for cap in (1, 2, 5, 10, 50):
                nu = geo_geo1_steady_state(lam, mu, cap).steady
                ref = stationary_from_step(lam, mu, cap)
                worst = max(worst, float(np.abs(nu - ref).max()))
    ok = worst < 1e-10
    _report(
        capsys, 2, "battery closed form matches a linear solve",
        ok, f"max deviation {worst:.1e} over a 9x9x5 grid",
    )
    assert ok


def test_large_capacity_empty_probability(capsys):
    worst = 0.0
    for lam in _GRID9:
        for mu in _GRID9:
            if abs(lam - mu) < 0.05:
                continue
            empty = geo_geo1_steady_state(lam, mu, 1000).empty_prob()
            worst = max(worst, abs(empty - (1.0 - min(lam / mu, 1.0))))
    ok = worst < 1e-6
    _report(
        capsys, 3, "large-capacity empty probability reaches its limit",
        ok, f"max gap {worst:.1e} at cap 1000",
    )
    assert ok


def test_jammer_occupancy_matches_queue_formula(capsys):
    t0 = time.perf_counter()
    base = SystemParams(lambda_a=1.0, cap_j=1000)
    _, _, beta = estimate_regime_means_and_beta(base, 100_000)
    worst = 0.0
    for lam_j in _GRID9:
        p = dataclasses.replace(base, lambda_j=lam_j)
        res = simulate(p, 150_000)
        worst = max(worst, abs(res.p_joint_on - min(lam_j / beta, 1.0)))
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.01 and elapsed <= 120.0
    _report(
        capsys, 4, "jammer occupancy matches the queue formula",
        ok, f"max gap {worst:.4f} (allowed 0.01), {elapsed:.0f}s",
    )
    assert ok


def test_saturated_predictors_cover_simulation(capsys, regime_batches, jammer_arrival_sweep):
    worst_ratio = 0.0
    worst_desc = ""
    for lam, res in jammer_arrival_sweep.items():
        pred, pred_ci = _predictor_interval(
            [predict_mu_a_alice_saturated(mj, mu, lam, b) for mj, mu, b in regime_batches]
        )
        gap = abs(res.mu_a - pred)
        allowance = res.ci_halfwidth + pred_ci
        if gap / allowance > worst_ratio:
            worst_ratio = gap / allowance
            worst_desc = f"lambda_j={lam:g} gap {gap:.4f} allowed {allowance:.4f}"
    for lam in _GRID10:
        res = simulate(SystemParams(lambda_a=lam), _SWEEP_SLOTS)
        pred, pred_ci = _predictor_interval(
            [predict_mu_a_jimmy_saturated(mj, lam, b) for mj, _, b in regime_batches]
        )
        gap = abs(res.mu_a - pred)
        allowance = res.ci_halfwidth + pred_ci
        if gap / allowance > worst_ratio:
            worst_ratio = gap / allowance
            worst_desc = f"lambda_a={lam:g} gap {gap:.4f} allowed {allowance:.4f}"
    ok = worst_ratio <= 1.0
    _report(
        capsys, 5, "saturated-regime predictors cover the simulation",
        ok, f"worst point {worst_desc}",
    )
    assert ok


def test_flat_and_linear_regions(capsys):
    # weak jamming power with the duty fraction pinned at one keeps the
    # positive-secrecy probability clearly inside (0, 1), so the arrival
    # grid has room on both sides of it
    base = SystemParams(snr_j=1.0, alpha_fixed=1.0, lambda_a=1.0, cap_j=1000)
    mj, mu, beta = estimate_regime_means_and_beta(base, 400_000)
    slope_pred = (mj - mu) / beta

    def run(lam_j):
        return simulate(dataclasses.replace(base, lambda_j=lam_j), 300_000)

    flat_lo, flat_hi = run(0.92), run(1.0)
    diff = flat_hi.batch_means - flat_lo.batch_means
    flat_slope = diff.mean() / 0.08
    flat_ci = (
        stats.t.ppf(0.975, diff.size - 1) * diff.std(ddof=1) / math.sqrt(diff.size) / 0.08
    )
    ok_flat = abs(flat_slope) <= flat_ci + 1e-12

    lin_lo, lin_hi = run(0.3), run(0.5)
    lin_slope = (lin_hi.mu_a - lin_lo.mu_a) / 0.2
    ok_lin = abs(lin_slope - slope_pred) <= 0.05 * slope_pred

    ok = ok_flat and ok_lin
    _report(
        capsys, 6, "rate is flat above the service rate and linear below",
        ok,
        f"beta {beta:.3f}, flat slope {flat_slope:.2e} (ci {flat_ci:.2e}), "
        f"linear slope {lin_slope:.3f} vs {slope_pred:.3f}",
    )
    assert ok


def test_alpha_optimization_gain_ratio(capsys):
    t0 = time.perf_counter()
    base = SystemParams(lambda_a=0.8, lambda_j=0.9)
    optimized = simulate(base, 40_000)
    pinned = simulate(dataclasses.replace(base, alpha_fixed=1.0), 40_000)
    ratio = optimized.mu_a / pinned.mu_a
    elapsed = time.perf_counter() - t0
    ok = abs(ratio - 5.2) <= 0.25 * 5.2 and elapsed <= 120.0
    _report(
        capsys, 7, "duty-fraction optimization gain ratio",
        ok, f"measured {ratio:.3f} vs target 5.2 +-25%, {elapsed:.0f}s",
    )
    assert ok


def test_antenna_subset_closeness(capsys, jammer_arrival_sweep):
    worst = 0.0
    for lam, full in jammer_arrival_sweep.items():
        subset = simulate(SystemParams(k_active=4, lambda_j=lam), _SWEEP_SLOTS)
        worst = max(worst, abs(subset.mu_a - full.mu_a) / full.mu_a)
    ok = worst <= 0.10
    _report(
        capsys, 8, "four-antenna curve stays close to six",
        ok, f"max relative gap {worst:.3f} (allowed 0.10)",
    )
    assert ok


def test_validation_suites_all_pass(capsys):
    results = validation.run_all(12345)
    n_pass = sum(r.passed for r in results)
    ok = n_pass == len(results)
    failing = ", ".join(r.name for r in results if not r.passed) or "none failing"
    _report(
        capsys, 9, "property suites all pass",
        ok, f"{n_pass}/{len(results)} suites, {failing}",
    )
    assert ok
