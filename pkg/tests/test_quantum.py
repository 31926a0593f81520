"""Closed-form quantum tables against frozen values and the amplitude oracle."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnlsim import (
    InterferometerTopology,
    JointDistribution,
    PhaseSettings,
    TopologyError,
    amplitude_oracle,
    calibrated_topology,
    qm_correlation,
    qm_distinguishable_joint,
    qm_joint,
    qm_joint_probability,
    qm_single_pair_correlation,
    qm_single_pair_joint,
    symmetric_splitter,
)

ATOL = 1e-12

KEY_SETTINGS = PhaseSettings.from_degrees(45.0, -45.0, 90.0)

# Bounded so that argument-reduction error in cos stays far below ATOL.
phases = st.floats(min_value=-25.0, max_value=25.0, allow_nan=False, allow_infinity=False)
settings_strategy = st.builds(PhaseSettings, phases, phases, phases)


def test_key_settings_joint_values() -> None:
    assert qm_joint_probability(KEY_SETTINGS, 1, 1) == pytest.approx(0.5, abs=ATOL)
    assert qm_joint_probability(KEY_SETTINGS, 1, -1) == pytest.approx(0.0, abs=ATOL)
    assert qm_joint_probability(KEY_SETTINGS, -1, 1) == pytest.approx(0.0, abs=ATOL)
    assert qm_joint_probability(KEY_SETTINGS, -1, -1) == pytest.approx(0.5, abs=ATOL)


def test_key_settings_correlation_is_unity() -> None:
    assert abs(qm_correlation(KEY_SETTINGS) - 1.0) < ATOL


def test_zero_final_phase_flattens_the_table() -> None:
    settings = PhaseSettings(0.3, -1.2, 0.0)
    for sigma in (1, -1):
        for omega in (1, -1):
            assert qm_joint_probability(settings, sigma, omega) == pytest.approx(0.25, abs=ATOL)
    assert qm_correlation(settings) == pytest.approx(0.0, abs=ATOL)


def test_single_pair_correlation_values() -> None:
    assert qm_single_pair_correlation(0.7, 0.7) == pytest.approx(1.0, abs=ATOL)
    assert qm_single_pair_correlation(math.radians(45.0), math.radians(-45.0)) == pytest.approx(
        0.0, abs=ATOL
    )
    assert qm_single_pair_correlation(0.0, math.pi) == pytest.approx(-1.0, abs=ATOL)


def test_single_pair_joint_table_matches_its_correlation() -> None:
    table = qm_single_pair_joint(0.9, 0.1)
    e = qm_single_pair_correlation(0.9, 0.1)
    assert table.prob(1, 1) == pytest.approx(0.25 + e / 4.0, abs=ATOL)
    assert table.prob(1, -1) == pytest.approx(0.25 - e / 4.0, abs=ATOL)
    assert table.correlation == pytest.approx(e, abs=ATOL)


def test_distinguishable_table_is_flat() -> None:
    table = qm_distinguishable_joint()
    assert table.as_array().tolist() == [0.25, 0.25, 0.25, 0.25]
    assert table.correlation == 0.0


def test_outcomes_must_be_plus_or_minus_one() -> None:
    with pytest.raises(ValueError):
        qm_joint_probability(KEY_SETTINGS, 0, 1)
    with pytest.raises(ValueError):
        qm_joint(KEY_SETTINGS).prob(1, 2)


def test_non_finite_phase_rejected() -> None:
    with pytest.raises(ValueError):
        PhaseSettings(float("nan"), 0.0, 0.0)
    with pytest.raises(ValueError):
        PhaseSettings(0.0, float("inf"), 0.0)
    with pytest.raises(ValueError):
        qm_single_pair_correlation(float("nan"), 0.0)


def test_from_degrees_conversion() -> None:
    settings = PhaseSettings.from_degrees(180.0, -90.0, 0.0)
    assert settings.phi11 == pytest.approx(math.pi)
    assert settings.phi21 == pytest.approx(-math.pi / 2.0)
    assert settings.phi22 == 0.0


def test_joint_distribution_validation() -> None:
    with pytest.raises(ValueError):
        JointDistribution(0.5, 0.5, 0.5, 0.5)  # sums to 2
    with pytest.raises(ValueError):
        JointDistribution(-0.1, 0.4, 0.4, 0.3)  # genuinely negative
    # A degenerate but normalized table is allowed (used for sampler tests).
    degenerate = JointDistribution(1.0, 0.0, 0.0, 0.0)
    assert degenerate.prob(1, 1) == 1.0
    # Rounding-level negatives clamp to zero.
    clamped = JointDistribution(0.5, -1e-17, 0.0, 0.5)
    assert clamped.p_pm == 0.0


@given(settings_strategy)
def test_table_normalization_and_fair_marginals(settings: PhaseSettings) -> None:
    table = qm_joint(settings)
    assert abs(sum(table.as_array()) - 1.0) < ATOL
    for outcome in (1, -1):
        assert abs(table.marginal_photon1(outcome) - 0.5) < ATOL
        assert abs(table.marginal_photon2(outcome) - 0.5) < ATOL


@given(settings_strategy)
def test_correlation_consistent_with_table(settings: PhaseSettings) -> None:
    table = qm_joint(settings)
    from_table = sum(
        sigma * omega * table.prob(sigma, omega) for sigma in (1, -1) for omega in (1, -1)
    )
    assert abs(from_table - qm_correlation(settings)) < ATOL


@given(settings_strategy)
def test_correlation_equals_product_of_sines(settings: PhaseSettings) -> None:
    expected = math.sin(settings.phi11 - settings.phi21) * math.sin(settings.phi22)
    assert abs(qm_correlation(settings) - expected) < ATOL


@given(settings_strategy, st.sampled_from(["phi11", "phi21", "phi22"]))
def test_two_pi_periodicity(settings: PhaseSettings, which: str) -> None:
    shifted = PhaseSettings(
        **{
            name: getattr(settings, name) + (2.0 * math.pi if name == which else 0.0)
            for name in ("phi11", "phi21", "phi22")
        }
    )
    for sigma in (1, -1):
        for omega in (1, -1):
            delta = qm_joint_probability(settings, sigma, omega) - qm_joint_probability(
                shifted, sigma, omega
            )
            assert abs(delta) < ATOL


# --- amplitude oracle -------------------------------------------------------


def test_oracle_matches_closed_form_at_key_settings() -> None:
    oracle = amplitude_oracle(KEY_SETTINGS)
    closed = qm_joint(KEY_SETTINGS)
    assert np.max(np.abs(oracle.as_array() - closed.as_array())) < ATOL


@given(settings_strategy)
def test_oracle_matches_closed_form(settings: PhaseSettings) -> None:
    deviation = np.max(np.abs(amplitude_oracle(settings).as_array() - qm_joint(settings).as_array()))
    assert deviation < ATOL


def test_oracle_distribution_is_normalized_with_fair_marginals() -> None:
    rng = np.random.default_rng(20240811)
    for _ in range(50):
        settings = PhaseSettings(*rng.uniform(-2.0 * math.pi, 2.0 * math.pi, size=3))
        table = amplitude_oracle(settings)
        assert abs(sum(table.as_array()) - 1.0) < ATOL
        for outcome in (1, -1):
            assert abs(table.marginal_photon1(outcome) - 0.5) < ATOL
            assert abs(table.marginal_photon2(outcome) - 0.5) < ATOL


def test_moving_the_phi21_phase_to_the_other_arm_flips_the_fringe() -> None:
    # The uncalibrated placement produces the phi11 + phi21 fringe instead.
    s = symmetric_splitter()
    flipped = InterferometerTopology(s, s, s, phi21_arm=0)
    settings = PhaseSettings(0.4, 0.9, 1.3)
    mirrored = PhaseSettings(0.4, -0.9, 1.3)
    got = amplitude_oracle(settings, flipped)
    expected = qm_joint(mirrored)
    assert np.max(np.abs(got.as_array() - expected.as_array())) < ATOL


def test_non_unitary_splitter_rejected() -> None:
    bad = np.array([[1.0, 0.0], [0.0, 2.0]], dtype=complex)
    good = symmetric_splitter()
    with pytest.raises(TopologyError):
        InterferometerTopology(bad, good, good)


def test_bad_arm_index_rejected() -> None:
    s = symmetric_splitter()
    with pytest.raises(TopologyError):
        InterferometerTopology(s, s, s, phi11_arm=2)


def test_calibrated_topology_uses_symmetric_splitters() -> None:
    topology = calibrated_topology()
    expected = symmetric_splitter()
    for matrix in (topology.splitter_11, topology.splitter_21, topology.splitter_22):
        assert np.allclose(matrix, expected, atol=ATOL)
