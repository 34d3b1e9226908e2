"""Slot-level Monte Carlo of the jammer-assisted secrecy scheme.

Each slot the source and the jammer check their batteries.  If both hold
energy, the jammer beamforms artificial noise into the eavesdropper's
channel while staying silent at the destination, the source picks its
duty fraction, and the pair transmits only when the resulting secrecy
rate is positive; one packet then leaves each battery.  If only the
source has energy it transmits alone whenever its channel beats the
eavesdropper's.  Harvested packets arrive as Bernoulli events and are
capped by the battery size.

The slot loop is split in two phases.  Channel draws, beamforming gains
and the duty-fraction search depend on nothing but the channel stream,
so they are evaluated first for a whole replica as vectorized blocks.
The battery recursion is the only sequential part and runs as a plain
integer loop over the precomputed per-slot rates.  Replicas use
deterministically spawned child streams, so results are bit-identical
for a fixed (seed, replica count, slot count), whether or not replicas
run in parallel worker processes.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .beamforming import optimal_jamming_gain_block
from .channel import SystemParams, sample_channel_block
from .secrecy import optimize_alpha_batch, secrecy_rate_batch

_BLOCK = 1 << 16
_BATCHES_PER_REPLICA = 32


@dataclass(frozen=True)
class SimResult:
    """Merged statistics of one simulation run.

    Probabilities and service rates are time averages over the counted
    slots of every replica (warm-up excluded).  mean_rate_jammed and
    mean_rate_unjammed average the two per-slot secrecy rates over all
    counted slots regardless of battery state; channel fading is
    independent of the batteries, so these estimate the same ensemble
    means that the closed-form predictors consume, and the bound
    mu_a <= mean_rate_jammed holds pathwise.  batch_means carries the
    per-batch averages of the recorded secrecy contribution that back
    ci_halfwidth; sweep drivers reuse them for paired comparisons.
    """

    mu_a: float
    p_joint_on: float
    p_a_on_j_off: float
    mu_b_a: float
    mu_b_j: float
    mean_rate_jammed: float
    mean_rate_unjammed: float
    beta_hat: float
    n_slots: int
    ci_halfwidth: float
    batch_means: np.ndarray


@dataclass(frozen=True)
class _ReplicaTally:
    n: int
    rec_sum: float
    joint: int
    solo: int
    dep_a: int
    dep_j: int
    cond_j: int
    sum_jammed: float
    sum_unjammed: float
    batch_means: np.ndarray


def warmup_slots(p: SystemParams) -> int:
    """Slots discarded before statistics start accumulating."""
    return max(10 * p.cap_a, 10 * p.cap_j, 1000)


def _block_rates(p: SystemParams, rng, n: int):
    """Optimized jammed and unjammed secrecy rates for n channel draws."""
    h_ab, h_ae, h_jb, h_je = sample_channel_block(rng, p.k_active, n)
    bob = p.snr_a * np.abs(h_ab) ** 2
    eve = p.snr_a * np.abs(h_ae) ** 2
    jam = p.snr_j * optimal_jamming_gain_block(h_jb, h_je)
    if p.alpha_fixed is None:
        _, sec_j = optimize_alpha_batch(bob, eve, jam, p.alpha_grid)
        _, sec_u = optimize_alpha_batch(bob, eve, 0.0, p.alpha_grid)
    else:
        sec_j = secrecy_rate_batch(p.alpha_fixed, bob, eve, jam)
        sec_u = secrecy_rate_batch(p.alpha_fixed, bob, eve, 0.0)
    return sec_j, sec_u


def _simulate_replica(p: SystemParams, n_slots: int, rng) -> _ReplicaTally:
    rng_ch, rng_arr = rng.spawn(2)
    w = warmup_slots(p)
    total = w + n_slots

    sec_j = np.empty(total)
    sec_u = np.empty(total)
    done = 0
    while done < total:
        n = min(_BLOCK, total - done)
        sec_j[done : done + n], sec_u[done : done + n] = _block_rates(p, rng_ch, n)
        done += n
    # inversion coupling: the uniforms, not the thresholded bits, come from
    # the stream, so sweeping an arrival rate reuses the same randomness
    u = rng_arr.random((total, 2))
    arr_a = (u[:, 0] < p.lambda_a).tolist()
    arr_j = (u[:, 1] < p.lambda_j).tolist()

    sj = sec_j.tolist()
    su = sec_u.tolist()
    cap_a, cap_j = p.cap_a, p.cap_j
    dep_ins = p.deplete_on_insecure

    lvl_a = 0
    lvl_j = 0
    for t in range(w):
        if lvl_a > 0:
            if lvl_j > 0:
                if sj[t] > 0.0 or dep_ins:
                    lvl_a -= 1
                    lvl_j -= 1
            elif su[t] > 0.0 or dep_ins:
                lvl_a -= 1
        if arr_a[t] and lvl_a < cap_a:
            lvl_a += 1
        if arr_j[t] and lvl_j < cap_j:
            lvl_j += 1

    joint = solo = dep_a = dep_j = 0
    recorded = []
    rec_append = recorded.append
    for t in range(w, total):
        if lvl_a > 0:
            if lvl_j > 0:
                joint += 1
                s = sj[t]
                if s > 0.0:
                    rec_append(s)
                    lvl_a -= 1
                    lvl_j -= 1
                    dep_a += 1
                    dep_j += 1
                else:
                    rec_append(0.0)
                    if dep_ins:
                        lvl_a -= 1
                        lvl_j -= 1
                        dep_a += 1
                        dep_j += 1
            else:
                solo += 1
                s = su[t]
                if s > 0.0:
                    rec_append(s)
                    lvl_a -= 1
                    dep_a += 1
                else:
                    rec_append(0.0)
                    if dep_ins:
                        lvl_a -= 1
                        dep_a += 1
        else:
            rec_append(0.0)
        if arr_a[t] and lvl_a < cap_a:
            lvl_a += 1
        if arr_j[t] and lvl_j < cap_j:
            lvl_j += 1

    rec = np.asarray(recorded)
    batch_size = max(1, n_slots // _BATCHES_PER_REPLICA)
    n_batches = n_slots // batch_size
    batch_means = (
        rec[: n_batches * batch_size].reshape(n_batches, batch_size).mean(axis=1)
    )
    counted_j = sec_j[w:]
    return _ReplicaTally(
        n=n_slots,
        rec_sum=float(rec.sum()),
        joint=joint,
        solo=solo,
        dep_a=dep_a,
        dep_j=dep_j,
        cond_j=int((counted_j > 0.0).sum()),
        sum_jammed=float(counted_j.sum()),
        sum_unjammed=float(sec_u[w:].sum()),
        batch_means=batch_means,
    )


def _replica_job(args) -> _ReplicaTally:
    return _simulate_replica(*args)


def simulate(
    p: SystemParams,
    n_slots: int,
    rng=None,
    *,
    n_replicas: int = 1,
    workers: int = 1,
) -> SimResult:
    """Run the scheme for n_slots counted slots per replica and merge.

    Batteries start empty; a warm-up of warmup_slots(p) slots is run and
    discarded before counting.  When rng is omitted the stream derives
    from p.seed, so repeated calls reproduce each other exactly.  With
    workers > 1 the replicas run in separate processes; the merge is in
    replica order either way, so the worker count never changes results.
    """
    if n_slots < 1:
        raise ValueError("n_slots must be at least 1")
    if n_replicas < 1:
        raise ValueError("n_replicas must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    if rng is None:
        rng = np.random.default_rng(p.seed)
    children = rng.spawn(n_replicas)

    jobs = [(p, n_slots, child) for child in children]
    if workers > 1 and n_replicas > 1:
        with ProcessPoolExecutor(max_workers=min(workers, n_replicas)) as pool:
            tallies = list(pool.map(_replica_job, jobs))
    else:
        tallies = [_replica_job(job) for job in jobs]

    n_total = sum(t.n for t in tallies)
    batch_means = np.concatenate([t.batch_means for t in tallies])
    n_batches = batch_means.size
    if n_batches >= 2:
        spread = batch_means.std(ddof=1) / math.sqrt(n_batches)
        ci = float(stats.t.ppf(0.975, n_batches - 1) * spread)
    else:
        ci = math.inf
    return SimResult(
        mu_a=sum(t.rec_sum for t in tallies) / n_total,
        p_joint_on=sum(t.joint for t in tallies) / n_total,
        p_a_on_j_off=sum(t.solo for t in tallies) / n_total,
        mu_b_a=sum(t.dep_a for t in tallies) / n_total,
        mu_b_j=sum(t.dep_j for t in tallies) / n_total,
        mean_rate_jammed=sum(t.sum_jammed for t in tallies) / n_total,
        mean_rate_unjammed=sum(t.sum_unjammed for t in tallies) / n_total,
        beta_hat=sum(t.cond_j for t in tallies) / n_total,
        n_slots=n_total,
        ci_halfwidth=ci,
        batch_means=batch_means,
    )


def estimate_regime_means_and_beta(
    p: SystemParams, n_draws: int, rng=None
) -> tuple[float, float, float]:
    """Channel-ensemble means of the two secrecy rates and the beta estimate.

    Draws i.i.d. channels with both batteries assumed full, optimizes the
    duty fraction per draw (or applies p.alpha_fixed), and returns
    (mean_jammed, mean_unjammed, beta_hat) where beta_hat is the fraction
    of draws whose jammed secrecy rate is positive at the chosen alpha.
    """
    if n_draws < 1:
        raise ValueError("n_draws must be at least 1")
    if rng is None:
        rng = np.random.default_rng(p.seed)
    sum_j = sum_u = 0.0
    cond = 0
    done = 0
    while done < n_draws:
        n = min(_BLOCK, n_draws - done)
        sec_j, sec_u = _block_rates(p, rng, n)
        sum_j += float(sec_j.sum())
        sum_u += float(sec_u.sum())
        cond += int((sec_j > 0.0).sum())
        done += n
    return sum_j / n_draws, sum_u / n_draws, cond / n_draws


def _occupancy(lam: float, beta: float) -> float:
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"arrival probability must lie in [0, 1], got {lam}")
    if beta < 0.0 or beta > 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    if beta == 0.0:
        # degenerate service: any arrivals at all keep the queue occupied
        return 0.0 if lam == 0.0 else 1.0
    return min(lam / beta, 1.0)


def predict_mu_a_alice_saturated(
    mean_jammed: float, mean_unjammed: float, lambda_j: float, beta: float
) -> float:
    """Average secrecy rate when the source battery never empties.

    The jammer's battery behaves as a Geo/Geo/1 queue served at rate
    beta, occupied a min(lambda_j/beta, 1) fraction of the time, so the
    rate interpolates between the two regime means and goes flat at
    mean_jammed once lambda_j >= beta.
    """
    occ = _occupancy(lambda_j, beta)
    return mean_jammed * occ + mean_unjammed * (1.0 - occ)


def predict_mu_a_jimmy_saturated(
    mean_jammed: float, lambda_a: float, beta: float
) -> float:
    """Average secrecy rate when the jammer battery never empties.

    Every transmission is jammed, so the rate grows linearly in lambda_a
    until the source queue saturates at lambda_a = beta.
    """
    return _occupancy(lambda_a, beta) * mean_jammed


def predict_mu_a_geo_d1(
    mean_jammed: float, mean_unjammed: float, lambda_a: float, lambda_j: float
) -> float:
    """Bilinear unit-service model of the average secrecy rate.

    Treats both batteries as Geo/D/1 queues drained every slot, so each
    node transmits with exactly its arrival probability.  Generally a
    pessimistic model: real batteries hold charge across slots.
    """
    for name, lam in (("lambda_a", lambda_a), ("lambda_j", lambda_j)):
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {lam}")
    return lambda_a * (mean_jammed * lambda_j + mean_unjammed * (1.0 - lambda_j))
