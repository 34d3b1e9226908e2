"""Secrecy-rate analysis for a battery-powered source with a cooperative jammer.

The library models a source that harvests energy into a finite battery
and is protected by a multi-antenna jammer doing the same.  It provides
the null-steering beamformer, per-slot secrecy rates with an optimized
transmission duty fraction, the battery queue models, a slot-level Monte
Carlo simulator, and closed-form predictors for the saturated regimes.
"""

from .battery import (
    BatteryChain,
    BatteryState,
    empty_prob_large_capacity,
    geo_d1_empty_prob,
    geo_geo1_steady_state,
    step,
)
from .beamforming import (
    BeamWeights,
    DegenerateAlignmentError,
    DegenerateChannelError,
    Precoder,
    jamming_gain,
    null_space_precoder,
    optimal_jamming_gain_block,
    optimal_weights,
    projection_matrix,
)
from .channel import ChannelSet, SystemParams, gain, sample_channel_block, sample_channels
from .montecarlo import (
    SimResult,
    estimate_regime_means_and_beta,
    predict_mu_a_alice_saturated,
    predict_mu_a_geo_d1,
    predict_mu_a_jimmy_saturated,
    simulate,
    warmup_slots,
)
from .secrecy import (
    SlotRates,
    optimize_alpha,
    optimize_alpha_batch,
    rate_ab,
    rate_ae_jammed,
    secrecy_rate_batch,
    secrecy_rate_jammed,
    secrecy_rate_unjammed,
)

__all__ = [
    "BatteryChain",
    "BatteryState",
    "BeamWeights",
    "ChannelSet",
    "DegenerateAlignmentError",
    "DegenerateChannelError",
    "Precoder",
    "SimResult",
    "SlotRates",
    "SystemParams",
    "empty_prob_large_capacity",
    "estimate_regime_means_and_beta",
    "gain",
    "geo_d1_empty_prob",
    "geo_geo1_steady_state",
    "jamming_gain",
    "null_space_precoder",
    "optimal_jamming_gain_block",
    "optimal_weights",
    "optimize_alpha",
    "optimize_alpha_batch",
    "predict_mu_a_alice_saturated",
    "predict_mu_a_geo_d1",
    "predict_mu_a_jimmy_saturated",
    "projection_matrix",
    "rate_ab",
    "rate_ae_jammed",
    "sample_channel_block",
    "sample_channels",
    "secrecy_rate_batch",
    "secrecy_rate_jammed",
    "secrecy_rate_unjammed",
    "simulate",
    "step",
    "warmup_slots",
]

__version__ = "0.1.0"
