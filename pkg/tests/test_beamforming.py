import numpy as np
import pytest

from oracles import feasible_competitor_gains, qr_projector
from secjam import (
    BeamWeights,
    DegenerateAlignmentError,
    DegenerateChannelError,
    jamming_gain,
    null_space_precoder,
    optimal_jamming_gain_block,
    optimal_weights,
    projection_matrix,
)


def _cn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * np.sqrt(0.5)


def test_projection_axis_aligned():
    psi = projection_matrix(np.array([1.0 + 0.0j, 0.0j]))
    assert np.allclose(psi, np.array([[0.0, 0.0], [0.0, 1.0]]), atol=1e-15)


def test_projection_trace_and_structure():
    rng = np.random.default_rng(5)
    for k in (2, 3, 4, 5, 6):
        h = _cn(rng, k)
        psi = projection_matrix(h)
        assert np.trace(psi).real == pytest.approx(k - 1, abs=1e-12)
        assert np.abs(psi @ psi - psi).max() < 1e-12
        assert np.abs(psi - psi.conj().T).max() < 1e-12
        assert np.abs(psi @ h).max() < 1e-12 * np.linalg.norm(h)


def test_projection_matches_qr_oracle():
    rng = np.random.default_rng(8)
    for _ in range(25):
        h = _cn(rng, 3)
        assert np.abs(projection_matrix(h) - qr_projector(h)).max() < 1e-12


def test_projection_rejects_zero_vector():
    with pytest.raises(DegenerateChannelError):
        projection_matrix(np.zeros(4, dtype=complex))


def test_optimal_weights_orthogonal_pair():
    h_jb = np.array([1.0 + 0.0j, 0.0j])
    h_je = np.array([0.0j, 2.0 + 0.0j])
    g = optimal_weights(h_jb, h_je)
    assert isinstance(g, BeamWeights)
    # equal to (0, 1) up to a global phase
    assert abs(abs(g.g[1]) - 1.0) < 1e-12 and abs(g.g[0]) < 1e-12
    assert jamming_gain(g, h_je) == pytest.approx(4.0, rel=1e-12)


def test_optimal_weights_unit_norm_and_null():
    rng = np.random.default_rng(21)
    for k in (2, 3, 4, 5, 6):
        h_jb, h_je = _cn(rng, k), _cn(rng, k)
        g = optimal_weights(h_jb, h_je).g
        assert abs(np.vdot(g, g).real - 1.0) < 1e-12
        assert abs(np.vdot(g, h_jb)) < 1e-10


def test_optimal_weights_rejects_parallel_channels():
    rng = np.random.default_rng(2)
    h_jb = _cn(rng, 4)
    with pytest.raises(DegenerateAlignmentError):
        optimal_weights(h_jb, (0.3 - 1.1j) * h_jb)


def test_optimal_weights_beat_brute_force_sampling():
    rng = np.random.default_rng(33)
    h_jb, h_je = _cn(rng, 4), _cn(rng, 4)
    best = jamming_gain(optimal_weights(h_jb, h_je), h_je)
    rivals = feasible_competitor_gains(rng, h_jb, h_je, 1000000)
    assert best >= rivals.max() - 1e-12 * best


def test_jamming_gain_equals_projected_energy():
    rng = np.random.default_rng(4)
    for _ in range(50):
        h_jb, h_je = _cn(rng, 5), _cn(rng, 5)
        achieved = jamming_gain(optimal_weights(h_jb, h_je), h_je)
        target = float(np.linalg.norm(projection_matrix(h_jb) @ h_je) ** 2)
        assert achieved == pytest.approx(target, rel=1e-12)


def test_jamming_gain_fixed_values():
    g = np.array([1.0 + 0.0j, 0.0j, 0.0j])
    assert jamming_gain(g, np.array([1.0 + 1.0j, 0.0j, 0.0j])) == pytest.approx(2.0)
    assert jamming_gain(g, np.array([0.0j, 5.0 + 0.0j, 0.0j])) == 0.0


def test_jamming_gain_phase_invariance():
    rng = np.random.default_rng(12)
    h_jb, h_je = _cn(rng, 6), _cn(rng, 6)
    g = optimal_weights(h_jb, h_je)
    base = jamming_gain(g, h_je)
    for phi in (0.3, 1.7, -2.2):
        rotated = optimal_weights(h_jb, np.exp(1j * phi) * h_je)
        assert jamming_gain(rotated, np.exp(1j * phi) * h_je) == pytest.approx(
            base, abs=1e-12 * max(base, 1.0)
        )


def test_precoder_basic_properties():
    rng = np.random.default_rng(6)
    h = _cn(rng, 5)
    basis = null_space_precoder(h).matrix
    assert basis.shape == (5, 4)
    assert np.abs(basis.conj().T @ basis - np.eye(4)).max() < 1e-12
    assert np.abs(h.conj() @ basis).max() < 1e-10
    # the basis spans exactly the projector's range
    psi = projection_matrix(h)
    assert np.abs(basis @ basis.conj().T - psi).max() < 1e-12


def test_precoder_k2_unique_complement():
    basis = null_space_precoder(np.array([1.0 + 0.0j, 0.0j])).matrix
    assert basis.shape == (2, 1)
    assert abs(basis[0, 0]) < 1e-12 and abs(abs(basis[1, 0]) - 1.0) < 1e-12


def test_precoded_noise_is_silent_at_destination():
    rng = np.random.default_rng(17)
    h = _cn(rng, 6)
    basis = null_space_precoder(h).matrix
    noise = basis @ _cn(rng, 5)
    assert abs(np.vdot(noise, h)) < 1e-10


def test_block_gain_matches_scalar_path():
    rng = np.random.default_rng(9)
    h_jb, h_je = _cn(rng, 200, 6), _cn(rng, 200, 6)
    block = optimal_jamming_gain_block(h_jb, h_je)
    for i in range(200):
        scalar = jamming_gain(optimal_weights(h_jb[i], h_je[i]), h_je[i])
        assert block[i] == pytest.approx(scalar, rel=1e-9)


def test_optimality_across_antenna_counts():
    rng = np.random.default_rng(44)
    for k in (2, 3, 4, 5, 6):
        for _ in range(20):
            h_jb, h_je = _cn(rng, k), _cn(rng, k)
            best = jamming_gain(optimal_weights(h_jb, h_je), h_je)
            rivals = feasible_competitor_gains(rng, h_jb, h_je, 20000)
            assert best >= rivals.max() - 1e-12 * best
