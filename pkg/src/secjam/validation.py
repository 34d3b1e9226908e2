"""Self-contained property suites behind the `validate` subcommand.

Each suite checks one structural property of the library against an
independent reference: a dense grid, a direct linear solve, brute-force
competitor sampling, or a plain event-by-event simulation.  Suites are
deterministic for a fixed seed, so the rendered report is byte-stable
and usable as a CI gate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import battery
from .beamforming import (
    jamming_gain,
    null_space_precoder,
    optimal_jamming_gain_block,
    optimal_weights,
    projection_matrix,
)
from .channel import SystemParams, sample_channel_block
from .montecarlo import (
    estimate_regime_means_and_beta,
    predict_mu_a_alice_saturated,
    predict_mu_a_jimmy_saturated,
    simulate,
)
from .secrecy import (
    optimize_alpha,
    optimize_alpha_batch,
    rate_ab,
    rate_ae_jammed,
    secrecy_rate_batch,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


def _channel_terms(p: SystemParams, rng, n: int):
    h_ab, h_ae, h_jb, h_je = sample_channel_block(rng, p.k_active, n)
    bob = p.snr_a * np.abs(h_ab) ** 2
    eve = p.snr_a * np.abs(h_ae) ** 2
    jam = p.snr_j * optimal_jamming_gain_block(h_jb, h_je)
    return bob, eve, jam


def suite_secrecy_clipping_bound(rng) -> SuiteResult:
    """Secrecy rate stays inside [0, rate_ab] for every draw and alpha."""
    p = SystemParams()
    bob, eve, jam = _channel_terms(p, rng, 10000)
    worst = 0.0
    for alpha in (0.25, 0.7, 1.0):
        sec = secrecy_rate_batch(alpha, bob, eve, jam)
        cap = alpha * np.log2(1.0 + bob / alpha)
        worst = max(worst, float((-sec).max()), float((sec - cap).max()))
    # scalar and batch evaluators agree on a subsample
    agree = 0.0
    for i in range(200):
        r_b = rate_ab(1.0, 0.7, bob[i])
        r_e = rate_ae_jammed(1.0, 1.0, 0.7, eve[i], jam[i])
        scalar = max(r_b - r_e, 0.0)
        agree = max(agree, abs(scalar - float(secrecy_rate_batch(0.7, bob[i], eve[i], jam[i]))))
    passed = worst <= 1e-12 and agree <= 1e-9
    return SuiteResult(
        "secrecy_clipping_bound",
        passed,
        f"max bound violation {worst:.3e}, scalar/batch gap {agree:.3e}",
    )


def suite_jammed_dominance(rng) -> SuiteResult:
    """Jamming never lowers the secrecy rate, at fixed or optimized alpha."""
    p = SystemParams()
    bob, eve, jam = _channel_terms(p, rng, 10000)
    worst = float(
        (secrecy_rate_batch(0.7, bob, eve, 0.0) - secrecy_rate_batch(0.7, bob, eve, jam)).max()
    )
    _, sec_j = optimize_alpha_batch(bob, eve, jam, p.alpha_grid)
    _, sec_u = optimize_alpha_batch(bob, eve, 0.0, p.alpha_grid)
    worst = max(worst, float((sec_u - sec_j).max()))
    passed = worst <= 1e-12
    return SuiteResult("jammed_dominance", passed, f"max unjammed excess {worst:.3e}")


def suite_projector_idempotence(rng) -> SuiteResult:
    """The null-steering projector is Hermitian, idempotent, and nulls h_jb."""
    worst = 0.0
    for k in (2, 3, 4, 5, 6) * 40:
        h = (rng.standard_normal(k) + 1j * rng.standard_normal(k)) * np.sqrt(0.5)
        psi = projection_matrix(h)
        worst = max(
            worst,
            float(np.abs(psi @ psi - psi).max()),
            float(np.abs(psi - psi.conj().T).max()),
            float(np.abs(psi @ h).max()) / float(np.linalg.norm(h)),
            abs(np.trace(psi).real - (k - 1)),
        )
    passed = worst <= 1e-12
    return SuiteResult("projector_idempotence", passed, f"max residual {worst:.3e}")


def suite_alpha_optimizer_dense_grid(rng) -> SuiteResult:
    """Duty-fraction search matches a 1e5-point exhaustive grid."""
    p = SystemParams()
    bob, eve, jam = _channel_terms(p, rng, 200)
    dense = np.linspace(1e-5, 1.0, 100000)
    worst = -np.inf
    batch_gap = 0.0
    alpha_b, sec_b = optimize_alpha_batch(bob, eve, jam, p.alpha_grid)
    for i in range(bob.size):
        b, e, c = float(bob[i]), float(eve[i]), float(jam[i])

        def fn(a, b=b, e=e, c=c):
            return max(a * np.log2(1.0 + b / a) - a * np.log2(1.0 + e / (a + c)), 0.0)

        _, found = optimize_alpha(fn, p.alpha_grid)
        best = float(secrecy_rate_batch(dense, b, e, c).max())
        worst = max(worst, best - found)
        batch_gap = max(batch_gap, abs(found - float(sec_b[i])))
    passed = worst <= 1e-6 and batch_gap <= 1e-8
    return SuiteResult(
        "alpha_optimizer_dense_grid",
        passed,
        f"max shortfall vs dense grid {worst:.3e}, scalar/batch gap {batch_gap:.3e}",
    )


def suite_beamformer_oracle(rng) -> SuiteResult:
    """Closed-form weights beat sampled feasible competitors and null Bob."""
    excess = 0.0
    null_leak = 0.0
    gain_gap = 0.0
    for k in (2, 4, 6):
        w = (rng.standard_normal((20000, k - 1)) + 1j * rng.standard_normal((20000, k - 1)))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        for _ in range(20):
            z = (rng.standard_normal(4 * k) + 1j * rng.standard_normal(4 * k)) * np.sqrt(0.5)
            h_jb, h_je = z[:k], z[k : 2 * k]
            g = optimal_weights(h_jb, h_je)
            opt = jamming_gain(g, h_je)
            null_leak = max(null_leak, abs(np.vdot(g.g, h_jb)))
            # feasible competitors are unit vectors in the nulling subspace
            basis = null_space_precoder(h_jb).matrix
            rivals = np.abs(w.conj() @ (basis.conj().T @ h_je)) ** 2
            excess = max(excess, float(rivals.max()) - opt)
            block = float(optimal_jamming_gain_block(h_jb[None, :], h_je[None, :])[0])
            gain_gap = max(gain_gap, abs(block - opt) / max(opt, 1e-300))
    passed = excess <= 1e-9 and null_leak <= 1e-10 and gain_gap <= 1e-9
    return SuiteResult(
        "beamformer_oracle",
        passed,
        f"best rival excess {excess:.3e}, null leakage {null_leak:.3e}, "
        f"closed-form gap {gain_gap:.3e}",
    )


def _stationary_solve(lam: float, mu: float, cap: int) -> np.ndarray:
    """Stationary vector of the battery chain by direct linear solve."""
    n = cap + 1
    tp = np.zeros((n, n))
    for lvl in range(n):
        p_dep = mu if lvl > 0 else 0.0
        for dep, pd in ((0, 1.0 - p_dep), (1, p_dep)):
            if pd == 0.0:
                continue
            for arr, pa in ((0, 1.0 - lam), (1, lam)):
                if pa == 0.0:
                    continue
                tp[lvl, min(lvl - dep + arr, cap)] += pd * pa
    a = tp.T - np.eye(n)
    a[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    return np.linalg.solve(a, rhs)


def suite_markov_chain_oracle(rng) -> SuiteResult:
    """Closed-form battery steady state matches the linear-solve oracle."""
    worst = 0.0
    grid = [0.1, 0.3, 0.5, 0.7, 0.9]
    cases = [(lam, mu, cap) for lam in grid for mu in grid for cap in (1, 5, 10)]
    cases += [(0.3, 0.3, 7), (0.5, 0.5, 7)]  # the eta = 1 limit path
    for lam, mu, cap in cases:
        chain = battery.geo_geo1_steady_state(lam, mu, cap)
        worst = max(worst, float(np.abs(chain.steady - _stationary_solve(lam, mu, cap)).max()))
    passed = worst <= 1e-10
    return SuiteResult("markov_chain_oracle", passed, f"max entry error {worst:.3e}")


def suite_geo_d1_empty_prob(rng) -> SuiteResult:
    """Unit-service queue is empty a 1-lam fraction of slots."""
    lam = 0.35
    n_slots = 1000000
    arrivals = rng.random(n_slots) < lam
    state = battery.BatteryState(level=0, cap=4)
    empty = 0
    for arr in arrivals.tolist():
        if state.level == 0:
            empty += 1
            state = battery.step(state, arr, depart=False)
        else:
            state = battery.step(state, arr, depart=True)
    dev = abs(empty / n_slots - battery.geo_d1_empty_prob(lam))
    passed = dev <= 0.005
    return SuiteResult("geo_d1_empty_prob", passed, f"deviation {dev:.3e} at {n_slots} slots")


def suite_special_case_predictors(rng) -> SuiteResult:
    """Simulation agrees with the saturated-battery closed forms."""
    worst = 0.0
    cases = [
        (dict(lambda_a=1.0, lambda_j=0.4, cap_j=1000), "alice"),
        (dict(lambda_a=0.5, lambda_j=1.0, cap_a=1000), "jimmy"),
    ]
    for overrides, which in cases:
        p = SystemParams(**overrides)
        mean_j, mean_u, beta = estimate_regime_means_and_beta(p, 200000, rng)
        if which == "alice":
            pred = predict_mu_a_alice_saturated(mean_j, mean_u, p.lambda_j, beta)
        else:
            pred = predict_mu_a_jimmy_saturated(mean_j, p.lambda_a, beta)
        res = simulate(p, 200000)
        worst = max(worst, abs(res.mu_a - pred) / (4.0 * res.ci_halfwidth + 0.02 * pred))
    passed = worst <= 1.0
    return SuiteResult(
        "special_case_predictors", passed, f"worst deviation {worst:.3f} of tolerance"
    )


def suite_simulator_determinism(rng) -> SuiteResult:
    """Fixed seed reproduces every statistic, whatever the worker count."""
    p = SystemParams(cap_a=5, cap_j=5, lambda_a=0.8, lambda_j=0.6)
    first = simulate(p, 20000, n_replicas=2)
    repeat = simulate(p, 20000, n_replicas=2)
    pooled = simulate(p, 20000, n_replicas=2, workers=2)
    same = True
    for other in (repeat, pooled):
        for field in (
            "mu_a",
            "p_joint_on",
            "p_a_on_j_off",
            "mu_b_a",
            "mu_b_j",
            "mean_rate_jammed",
            "mean_rate_unjammed",
            "beta_hat",
            "n_slots",
            "ci_halfwidth",
        ):
            same = same and getattr(first, field) == getattr(other, field)
        same = same and np.array_equal(first.batch_means, other.batch_means)
    return SuiteResult(
        "simulator_determinism",
        same,
        "identical across repeats and worker counts" if same else "results diverged",
    )


_SUITES = (
    suite_secrecy_clipping_bound,
    suite_jammed_dominance,
    suite_projector_idempotence,
    suite_alpha_optimizer_dense_grid,
    suite_beamformer_oracle,
    suite_markov_chain_oracle,
    suite_geo_d1_empty_prob,
    suite_special_case_predictors,
    suite_simulator_determinism,
)


def run_all(seed: int = 12345) -> list[SuiteResult]:
    streams = np.random.SeedSequence(seed).spawn(len(_SUITES))
    return [fn(np.random.default_rng(s)) for fn, s in zip(_SUITES, streams)]


def render_report(results: list[SuiteResult]) -> str:
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
    ]
    n_fail = sum(not r.passed for r in results)
    lines.append(
        f"{len(results) - n_fail}/{len(results)} suites passed"
        if n_fail
        else f"all {len(results)} suites passed"
    )
    return "\n".join(lines)
