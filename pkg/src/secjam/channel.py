"""Scenario parameters and flat-fading channel generation.

Every link coefficient is an i.i.d. circularly-symmetric complex Gaussian
with zero mean and unit variance (real and imaginary parts each N(0, 1/2)),
redrawn independently each slot.  The jammer feeds its artificial noise
through k_active of its antennas, always the first ones, so the two
jammer-side links are k_active-vectors while the source links are scalars.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SQRT_HALF = np.sqrt(0.5)


@dataclass(frozen=True)
class SystemParams:
    """All scenario constants for one experiment."""

    n_antennas: int = 6          # antennas available at the jammer
    k_active: int = 6            # antennas actually used (first k_active)
    snr_a: float = 100.0         # source energy per slot over noise, linear
    snr_j: float = 100.0         # jammer energy per slot over noise, linear
    lambda_a: float = 1.0        # energy-packet arrival probability, source
    lambda_j: float = 1.0        # energy-packet arrival probability, jammer
    cap_a: int = 10              # source battery capacity, packets
    cap_j: int = 10              # jammer battery capacity, packets
    alpha_fixed: float | None = None  # pin the duty fraction, disables search
    alpha_grid: int = 64         # coarse grid size for the duty-fraction search
    seed: int = 12345            # master seed, 64-bit
    deplete_on_insecure: bool = False  # spend energy even on insecure slots

    def __post_init__(self) -> None:
        if self.k_active < 2:
            raise ValueError("k_active must be at least 2 for null steering")
        if self.k_active > self.n_antennas:
            raise ValueError("k_active cannot exceed n_antennas")
        if not (self.snr_a > 0.0 and self.snr_j > 0.0):
            raise ValueError("snr_a and snr_j must be positive")
        for name in ("lambda_a", "lambda_j"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.cap_a < 1 or self.cap_j < 1:
            raise ValueError("battery capacities must be at least 1")
        if self.alpha_fixed is not None and not 0.0 < self.alpha_fixed <= 1.0:
            raise ValueError("alpha_fixed must lie in (0, 1]")
        if self.alpha_grid < 2:
            raise ValueError("alpha_grid must be at least 2")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class ChannelSet:
    """One slot's worth of fading coefficients."""

    h_ab: complex        # source -> destination
    h_ae: complex        # source -> eavesdropper
    h_jb: np.ndarray     # jammer -> destination, shape (k_active,)
    h_je: np.ndarray     # jammer -> eavesdropper, shape (k_active,)


def _normals_per_slot(k_active: int) -> int:
    # two scalars plus two k-vectors, two normals per complex coefficient
    return 4 + 4 * k_active


def sample_channels(rng: np.random.Generator, k_active: int) -> ChannelSet:
    """Draw one slot of CN(0, 1) coefficients from `rng`.

    Consumes exactly 4 + 4*k_active standard normals in a fixed layout, so
    the stream is a pure function of (seed, draw index) and the block
    sampler below reproduces it bit for bit.
    """
    z = rng.standard_normal(_normals_per_slot(k_active)) * _SQRT_HALF
    c = z.view(np.complex128)
    return ChannelSet(
        h_ab=complex(c[0]),
        h_ae=complex(c[1]),
        h_jb=c[2:2 + k_active].copy(),
        h_je=c[2 + k_active:].copy(),
    )


def sample_channel_block(
    rng: np.random.Generator, k_active: int, n_slots: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized sample_channels: n_slots consecutive slots in one call.

    Returns (h_ab, h_ae, h_jb, h_je) with shapes (n,), (n,), (n, K), (n, K).
    Row i is bitwise identical to the i-th successive sample_channels call
    on a generator in the same state.
    """
    z = rng.standard_normal((n_slots, _normals_per_slot(k_active)))
    z *= _SQRT_HALF
    c = z.view(np.complex128)
    return c[:, 0], c[:, 1], c[:, 2:2 + k_active], c[:, 2 + k_active:]


def gain(h):
    """Channel gain: squared magnitude, elementwise for vectors."""
    return np.abs(h) ** 2


def spawn_streams(seed: int, n_streams: int) -> list[np.random.Generator]:
    """Derive independent generators from one master seed.

    Stream i is a pure function of (seed, i), so any number of workers can
    consume them in any order and still reproduce the same realizations.
    """
    seq = np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in seq.spawn(n_streams)]
