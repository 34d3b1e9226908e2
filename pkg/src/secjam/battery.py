"""Discrete-time battery queues with Bernoulli energy arrivals.

A battery holds an integer number of energy packets up to a hard cap.  Each
slot it may serve one packet (a transmission or a jamming burst) and may
harvest one packet.  Departure is applied before arrival within a slot and
an arrival that would exceed the cap is dropped, so a freshly harvested
packet cannot be spent in the slot it arrives.

With arrival probability lam and service probability mu the level follows
a finite birth-death chain (a Geo/Geo/1 queue with cap-limited waiting
room) whose steady state is geometric in

    eta = lam * (1 - mu) / ((1 - lam) * mu)

above the empty level.  The closed form is evaluated in the log domain so
eta near or at 1, and caps in the thousands, do not lose precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BatteryState:
    """Integer battery occupancy together with its capacity."""

    level: int
    cap: int

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be a positive integer")
        if not 0 <= self.level <= self.cap:
            raise ValueError(f"level {self.level} outside [0, {self.cap}]")


@dataclass(frozen=True)
class BatteryChain:
    """Steady-state description of one battery's birth-death chain."""

    lam: float
    mu: float
    cap: int
    steady: np.ndarray

    def empty_prob(self) -> float:
        return float(self.steady[0])


def step(state: BatteryState, arrival: bool, depart: bool) -> BatteryState:
    """Advance one slot: serve first, then harvest, then clip at the cap."""
    if depart and state.level == 0:
        raise ValueError("cannot draw a packet from an empty battery")
    level = min(state.level - int(depart) + int(arrival), state.cap)
    return BatteryState(level=level, cap=state.cap)


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def _point_mass(cap: int, at: int) -> np.ndarray:
    nu = np.zeros(cap + 1)
    nu[at] = 1.0
    return nu


def geo_geo1_steady_state(lam: float, mu: float, cap: int) -> BatteryChain:
    """Steady state of the capped Geo/Geo/1 battery chain.

    For 0 < lam < 1 and 0 < mu < 1 the distribution is

        nu[t] = nu[0] * eta**t / (1 - mu),   t = 1..cap

    normalized over the cap+1 levels.  The boundary parameter values do
    not fit that form and are resolved from the chain dynamics directly:

      lam=0            -> all mass at 0 (never charged)
      mu=0, lam>0      -> all mass at cap (never drained)
      lam=1, mu<1      -> all mass at cap (net drift is nonnegative)
      mu=1, lam<1      -> only levels 0 and 1 are reachable: [1-lam, lam]
      lam=1, mu=1      -> every level above 0 is absorbing; starting from
                          empty the chain parks at level 1
    """
    _check_probability("lam", lam)
    _check_probability("mu", mu)
    if cap < 1:
        raise ValueError("cap must be a positive integer")

    if lam == 0.0:
        nu = _point_mass(cap, 0)
    elif mu == 0.0 or (lam == 1.0 and mu < 1.0):
        nu = _point_mass(cap, cap)
    elif lam == 1.0 and mu == 1.0:
        nu = _point_mass(cap, 1)
    elif mu == 1.0:
        nu = np.zeros(cap + 1)
        nu[0] = 1.0 - lam
        nu[1] = lam
    else:
        # log-domain weights: logw[0] = 0, logw[t] = t*log(eta) - log(1-mu).
        # Subtracting the max before exponentiating keeps eta > 1 with a
        # large cap finite, and eta == 1 reduces to the flat geometric-sum
        # limit without any special-casing.
        log_eta = np.log(lam) + np.log1p(-mu) - np.log1p(-lam) - np.log(mu)
        logw = np.arange(cap + 1) * log_eta - np.log1p(-mu)
        logw[0] = 0.0
        logw -= logw.max()
        w = np.exp(logw)
        nu = w / w.sum()

    return BatteryChain(lam=lam, mu=mu, cap=cap, steady=nu)


def empty_prob_large_capacity(lam: float, mu: float) -> float:
    """Empty probability of the chain as cap -> infinity: 1 - min(lam/mu, 1).

    mu=0 means the battery never drains, so it is eventually nonempty for
    any lam > 0 and permanently empty only when lam = 0.
    """
    _check_probability("lam", lam)
    _check_probability("mu", mu)
    if mu == 0.0:
        return 1.0 if lam == 0.0 else 0.0
    return 1.0 - min(lam / mu, 1.0)


def geo_d1_empty_prob(lam: float) -> float:
    """Empty probability of a Geo/D/1 energy queue with unit service rate."""
    _check_probability("lam", lam)
    return 1.0 - lam
