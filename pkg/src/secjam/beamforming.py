"""Null-steering beamformer for the cooperative jammer.

The jammer must place a null on the destination while concentrating as much
artificial-noise power as possible on the eavesdropper.  With the
eavesdropper's CSI available, the best unit-norm weight vector is the
normalized orthogonal projection of her channel onto the complement of the
destination's channel,

    g = Psi h_je / ||Psi h_je||,    Psi = I - h_jb h_jb^H / ||h_jb||^2,

which achieves jamming gain ||Psi h_je||^2 (closest-point property of the
projection).  Without her CSI, the noise is spread isotropically over the
whole complement through a K x (K-1) orthonormal precoder.  Inner products
use the received-signal (conjugate) convention throughout: a weight vector
g is null at the destination when g^H h_jb = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg


class DegenerateChannelError(ValueError):
    """The destination channel vector is exactly zero; no null is defined."""


class DegenerateAlignmentError(ValueError):
    """Eavesdropper channel lies in the span of the destination channel.

    The projection annihilates it, so no useful weight direction exists.
    Callers treat this probability-zero event as zero jamming gain.
    """


@dataclass(frozen=True)
class BeamWeights:
    """Unit-norm jamming weight vector with a null at the destination."""

    g: np.ndarray


@dataclass(frozen=True)
class Precoder:
    """Orthonormal basis of the complement of the destination channel.

    Artificial noise sent as G @ w for any (K-1)-vector w arrives with zero
    amplitude at the destination.
    """

    matrix: np.ndarray


def projection_matrix(h_jb: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto the complement of span{h_jb}."""
    h = np.asarray(h_jb, dtype=np.complex128)
    norm_sq = np.real(np.vdot(h, h))
    if not norm_sq > 0.0:
        raise DegenerateChannelError("destination channel vector is zero")
    k = h.shape[0]
    return np.eye(k, dtype=np.complex128) - np.outer(h, h.conj()) / norm_sq


def optimal_weights(h_jb: np.ndarray, h_je: np.ndarray) -> BeamWeights:
    """Best unit-norm null-steering weights for known eavesdropper CSI."""
    psi = projection_matrix(h_jb)
    projected = psi @ np.asarray(h_je, dtype=np.complex128)
    norm = np.linalg.norm(projected)
    if norm <= 1e-12:
        raise DegenerateAlignmentError(
            "eavesdropper channel is parallel to the destination channel"
        )
    return BeamWeights(g=projected / norm)


def jamming_gain(g: BeamWeights | np.ndarray, h_je: np.ndarray) -> float:
    """Received artificial-noise gain |g^H h_je|^2 at the eavesdropper."""
    vec = g.g if isinstance(g, BeamWeights) else g
    return float(np.abs(np.vdot(vec, h_je)) ** 2)


def null_space_precoder(h_jb: np.ndarray) -> Precoder:
    """Orthonormal K x (K-1) basis of the complement of span{h_jb}."""
    h = np.asarray(h_jb, dtype=np.complex128)
    if not np.real(np.vdot(h, h)) > 0.0:
        raise DegenerateChannelError("destination channel vector is zero")
    basis = scipy.linalg.null_space(h.conj()[None, :])
    return Precoder(matrix=basis)


def optimal_jamming_gain_block(h_jb: np.ndarray, h_je: np.ndarray) -> np.ndarray:
    """Jamming gain of the optimal weights, row-wise over a block of draws.

    Applies the same projection as optimal_weights to each row of the
    (n, K) channel blocks and returns ||Psi h_je||^2 per row.  Rows where
    the channels are numerically parallel come out as (correctly) zero gain
    instead of raising; sampled fading hits that event with probability 0.
    """
    norm_sq = np.sum(np.abs(h_jb) ** 2, axis=1)
    inner = np.sum(h_jb.conj() * h_je, axis=1)
    residual = h_je - h_jb * (inner / norm_sq)[:, None]
    return np.sum(np.abs(residual) ** 2, axis=1)
