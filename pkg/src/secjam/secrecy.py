"""Per-slot link rates, secrecy rates, and the transmission-time search.

The source transmits for a fraction alpha of the slot, concentrating its
per-slot energy into that window, so its received SNR scales as snr/alpha
while the rate carries an alpha prefactor.  The jammer does the same with
its artificial noise, which only the eavesdropper hears:

    rate_ab  = alpha * log2(1 + snr_a*theta_ab/alpha)
    rate_ae  = alpha * log2(1 + snr_a*theta_ae/(alpha + snr_j*jam_gain))
    secrecy  = max(rate_ab - rate_ae, 0)

All noise terms are folded into the two SNR constants, so they never appear
separately.  The duty fraction lives on (0, 1]; the alpha -> 0 boundary is
a vanishing-rate limit handled by continuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beamforming import BeamWeights, jamming_gain
from .channel import ChannelSet, SystemParams, gain

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SlotRates:
    """Rates achieved in one slot at a given duty fraction."""

    alpha: float
    rate_ab: float
    rate_ae: float
    secrecy: float
    jammed: bool


def rate_ab(snr_a: float, alpha: float, theta_ab: float) -> float:
    """Destination link rate in bits/sec/Hz."""
    return alpha * math.log2(1.0 + snr_a * theta_ab / alpha)


def rate_ae_jammed(
    snr_a: float, snr_j: float, alpha: float, theta_ae: float, jam_gain: float
) -> float:
    """Eavesdropper link rate under jamming, bits/sec/Hz.

    Equals alpha*log2(1 + (snr_a*theta_ae/alpha)/(1 + snr_j*jam_gain/alpha));
    multiplying through by alpha gives the folded form used here.
    """
    return alpha * math.log2(1.0 + snr_a * theta_ae / (alpha + snr_j * jam_gain))


def secrecy_rate_jammed(
    ch: ChannelSet, weights: BeamWeights, p: SystemParams, alpha: float
) -> SlotRates:
    """Secrecy rate with the jammer active, clipped at zero.

    Positive exactly when theta_ab > theta_ae/(1 + snr_j*jam_gain/alpha).
    """
    r_b = rate_ab(p.snr_a, alpha, gain(ch.h_ab))
    r_e = rate_ae_jammed(
        p.snr_a, p.snr_j, alpha, gain(ch.h_ae), jamming_gain(weights, ch.h_je)
    )
    return SlotRates(
        alpha=alpha,
        rate_ab=r_b,
        rate_ae=r_e,
        secrecy=max(r_b - r_e, 0.0),
        jammed=True,
    )


def secrecy_rate_unjammed(ch: ChannelSet, p: SystemParams, alpha: float) -> SlotRates:
    """Secrecy rate with the jammer's battery empty.

    Positive exactly when theta_ab > theta_ae, independently of alpha, and
    never exceeds the jammed secrecy rate at the same alpha.
    """
    r_b = rate_ab(p.snr_a, alpha, gain(ch.h_ab))
    r_e = rate_ae_jammed(p.snr_a, p.snr_j, alpha, gain(ch.h_ae), 0.0)
    return SlotRates(
        alpha=alpha,
        rate_ab=r_b,
        rate_ae=r_e,
        secrecy=max(r_b - r_e, 0.0),
        jammed=False,
    )


def _golden_max(fn, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization on [lo, hi].

    Returns the best point among everything it evaluated, endpoints
    included, so a maximum sitting exactly on a bracket edge is never lost.
    Value ties resolve to the smaller abscissa.  lo may be the alpha = 0
    boundary; it is never returned, keeping results inside (0, 1].
    """
    best_x, best_f = hi, fn(hi)
    if lo > 0.0:
        f_lo = fn(lo)
        if f_lo > best_f or (f_lo == best_f and lo < best_x):
            best_x, best_f = lo, f_lo
    a, b = lo, hi
    while b - a > tol:
        h = b - a
        c = b - _INV_PHI * h
        d = a + _INV_PHI * h
        fc = fn(c)
        fd = fn(d)
        if fc > best_f or (fc == best_f and c < best_x):
            best_x, best_f = c, fc
        if fd > best_f or (fd == best_f and d < best_x):
            best_x, best_f = d, fd
        if fc >= fd:
            b = d
        else:
            a = c
    return best_x, best_f


def optimize_alpha(rate_fn, grid_points: int, tol: float = 1e-6) -> tuple[float, float]:
    """Maximize a per-slot secrecy evaluator over the duty fraction.

    Scans a uniform grid over [1/grid_points, 1], then golden-section
    refines the bracket around the best grid point down to `tol` width.
    The bracket's lower edge may reach 0, where the rate is 0 by
    continuity; rate_fn is never called with alpha <= 0.  Ties resolve to
    the smallest maximizing alpha, and the result is never worse than the
    alpha=1 baseline because the grid always contains 1.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")

    def fn(a: float) -> float:
        return rate_fn(a) if a > 0.0 else 0.0

    m = grid_points
    best_x, best_f = 1.0 / m, fn(1.0 / m)
    for i in range(2, m + 1):
        x = i / m
        f = fn(x)
        if f > best_f:
            best_x, best_f = x, f
    lo = max(best_x - 1.0 / m, 0.0)
    hi = min(best_x + 1.0 / m, 1.0)
    ref_x, ref_f = _golden_max(fn, lo, hi, tol)
    if ref_f > best_f or (ref_f == best_f and ref_x < best_x):
        return ref_x, ref_f
    return best_x, best_f


def secrecy_rate_batch(alpha, bob_term, eve_term, jam_term):
    """Clipped secrecy rate for arrays of per-slot channel terms.

    The three terms are snr_a*theta_ab, snr_a*theta_ae and snr_j*jam_gain;
    all arguments broadcast together.  alpha <= 0 yields exactly 0.
    """
    safe = np.maximum(alpha, 1e-30)
    r_b = safe * np.log2(1.0 + bob_term / safe)
    r_e = safe * np.log2(1.0 + eve_term / (safe + jam_term))
    return np.where(alpha > 0.0, np.maximum(r_b - r_e, 0.0), 0.0)


def optimize_alpha_batch(
    bob_term, eve_term, jam_term, grid_points: int, tol: float = 1e-6
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized optimize_alpha for whole blocks of channel draws.

    Same grid, same bracket and the same smallest-alpha tie rule as the
    scalar version, evaluated on (n,) arrays at once.  Returns
    (alpha_star, secrecy_star).
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    m = grid_points
    bob = np.asarray(bob_term, dtype=np.float64)
    eve = np.asarray(eve_term, dtype=np.float64)
    jam = np.broadcast_to(np.asarray(jam_term, dtype=np.float64), bob.shape)

    grid = np.arange(1, m + 1) / m
    vals = secrecy_rate_batch(
        grid[None, :], bob[:, None], eve[:, None], jam[:, None]
    )
    idx = np.argmax(vals, axis=1)  # first maximum: smallest alpha wins
    best_x = grid[idx]
    best_f = np.take_along_axis(vals, idx[:, None], axis=1)[:, 0]

    a = np.maximum(best_x - 1.0 / m, 0.0)
    b = np.minimum(best_x + 1.0 / m, 1.0)
    ref_x = b.copy()
    ref_f = secrecy_rate_batch(b, bob, eve, jam)
    f_lo = secrecy_rate_batch(a, bob, eve, jam)
    upd = (a > 0.0) & ((f_lo > ref_f) | ((f_lo == ref_f) & (a < ref_x)))
    ref_x[upd] = a[upd]
    ref_f[upd] = f_lo[upd]

    width = 2.0 / m
    n_iter = 0
    if width > tol:
        n_iter = int(np.ceil(np.log(tol / width) / np.log(_INV_PHI)))
    a = a.copy()
    b = b.copy()
    for _ in range(n_iter):
        h = b - a
        c = b - _INV_PHI * h
        d = a + _INV_PHI * h
        fc = secrecy_rate_batch(c, bob, eve, jam)
        fd = secrecy_rate_batch(d, bob, eve, jam)
        upd = (fc > ref_f) | ((fc == ref_f) & (c < ref_x))
        ref_x = np.where(upd, c, ref_x)
        ref_f = np.where(upd, fc, ref_f)
        upd = (fd > ref_f) | ((fd == ref_f) & (d < ref_x))
        ref_x = np.where(upd, d, ref_x)
        ref_f = np.where(upd, fd, ref_f)
        go_left = fc >= fd
        b = np.where(go_left, d, b)
        a = np.where(go_left, a, c)

    upd = (ref_f > best_f) | ((ref_f == best_f) & (ref_x < best_x))
    alpha_star = np.where(upd, ref_x, best_x)
    secrecy_star = np.where(upd, ref_f, best_f)
    return alpha_star, secrecy_star
