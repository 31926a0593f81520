"""Lorentz boosts, impact classification, geometry presets."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rnlsim import (
    SPEED_OF_LIGHT,
    AmbiguousScheduleError,
    ExperimentGeometry,
    ImpactSchedule,
    PhotonOneLabel,
    PhotonTwoLabel,
    Site,
    SpacetimeEvent,
    TimingAssignment,
    boost_time,
    classify,
    schedule_from_geometry,
    series_preset,
)

ATOL = 1e-12


def _rest_schedule(t11: float, t21: float, t22: float) -> ImpactSchedule:
    """Lab-time ordering only; positions on the proper sides of the source."""
    return ImpactSchedule(
        bs11=SpacetimeEvent(Site.BS11, t11, -SPEED_OF_LIGHT * t11),
        bs21=SpacetimeEvent(Site.BS21, t21, SPEED_OF_LIGHT * t21),
        bs22=SpacetimeEvent(Site.BS22, t22, SPEED_OF_LIGHT * t22),
    )


# --- boosts ------------------------------------------------------------------


def test_boost_identity_at_rest() -> None:
    event = SpacetimeEvent(Site.BS11, 1.0, 123.0)
    assert boost_time(event, 0.0) == 1.0


def test_boost_pure_time_dilation() -> None:
    event = SpacetimeEvent(Site.BS11, 1.0, 0.0)
    assert boost_time(event, 0.6) == pytest.approx(1.25, abs=ATOL)


def test_boost_with_position_offset() -> None:
    # x chosen so that t - beta x / c = t (1 - beta^2), i.e. boosted time t / gamma.
    beta = 0.6
    event = SpacetimeEvent(Site.BS11, 1.0, beta * SPEED_OF_LIGHT * 1.0)
    assert boost_time(event, beta) == pytest.approx(0.8, abs=ATOL)


@pytest.mark.parametrize("beta", [1.0, -1.0, 1.5, float("nan"), float("inf")])
def test_boost_rejects_unphysical_beta(beta: float) -> None:
    with pytest.raises(ValueError):
        boost_time(SpacetimeEvent(Site.BS11, 0.0, 0.0), beta)


@given(
    st.floats(min_value=-1e-6, max_value=1e-6),
    st.floats(min_value=1e-15, max_value=1e-6),
    st.booleans(),
    st.floats(min_value=-100.0, max_value=100.0),
    st.floats(min_value=-0.99, max_value=0.99),
)
def test_same_position_ordering_is_boost_invariant(
    t_a: float, gap: float, later: bool, x: float, beta: float
) -> None:
    # Two events at one position with a resolvable time gap (at or above the
    # classification guard band): their order is frame-independent.
    t_b = t_a + gap if later else t_a - gap
    event_a = SpacetimeEvent(Site.BS11, t_a, x)
    event_b = SpacetimeEvent(Site.BS21, t_b, x)
    boosted_order = boost_time(event_a, beta) - boost_time(event_b, beta)
    assert (t_a > t_b) == (boosted_order > 0)


def test_boost_identity_and_ordering_over_random_events() -> None:
    rng = np.random.default_rng(20240812)
    n = 10_000
    times = rng.uniform(-1e-6, 1e-6, size=n)
    positions = rng.uniform(-100.0, 100.0, size=n)
    betas = rng.uniform(-0.99, 0.99, size=n)
    for i in range(n):
        event = SpacetimeEvent(Site.BS11, times[i], positions[i])
        assert boost_time(event, 0.0) == times[i]
        partner = SpacetimeEvent(Site.BS21, times[(i + 1) % n], positions[i])
        if times[i] != partner.t:
            same_frame = boost_time(event, betas[i]) - boost_time(partner, betas[i])
            assert (times[i] > partner.t) == (same_frame > 0)


# --- schedules and classification ---------------------------------------------


def test_schedule_rejects_wrong_site() -> None:
    good = _rest_schedule(1e-9, 2e-9, 3e-9)
    with pytest.raises(ValueError):
        ImpactSchedule(bs11=good.bs21, bs21=good.bs21, bs22=good.bs22)


def test_schedule_rejects_photon2_order_violation() -> None:
    with pytest.raises(ValueError):
        _rest_schedule(1e-9, 3e-9, 2e-9)


def test_rest_orderings_map_to_series() -> None:
    cases = {
        (3e-9, 1e-9, 2e-9): (PhotonOneLabel.A11_22, PhotonTwoLabel.B22, True, 1),
        (1e-9, 2e-9, 3e-9): (PhotonOneLabel.B11, PhotonTwoLabel.A22, False, 2),
        (2e-9, 1e-9, 3e-9): (PhotonOneLabel.A11_21, PhotonTwoLabel.A22, True, 3),
    }
    for (t11, t21, t22), (label1, label2, bs21_before, series) in cases.items():
        timing = classify(_rest_schedule(t11, t21, t22))
        assert timing.label1 is label1
        assert timing.label2 is label2
        assert timing.bs21_before is bs21_before
        assert timing.series == series


def test_rest_classification_matches_lab_ordering_sweep() -> None:
    rng = np.random.default_rng(20240813)
    for _ in range(300):
        t11, t21, t22 = rng.uniform(1e-9, 100e-9, size=3)
        if t21 >= t22:
            t21, t22 = t22, t21
        if min(abs(t11 - t21), abs(t11 - t22), abs(t22 - t21)) < 1e-12:
            continue
        timing = classify(_rest_schedule(t11, t21, t22))
        if t11 < t21:
            assert timing.series == 2
        elif t11 < t22:
            assert timing.series == 3
        else:
            assert timing.series == 1


def test_near_tie_is_refused() -> None:
    with pytest.raises(AmbiguousScheduleError):
        classify(_rest_schedule(1e-9 + 1e-16, 1e-9, 2e-9))


def test_exact_tie_classifies_as_non_before_when_guard_disabled() -> None:
    timing = classify(_rest_schedule(2e-9, 1e-9, 2e-9), guard_band_s=0.0)
    # BS11 impact simultaneous with BS22's: counted as non-before of it.
    assert timing.label1 is PhotonOneLabel.A11_22
    assert timing.label2 is PhotonTwoLabel.A22


def test_negative_guard_band_rejected() -> None:
    with pytest.raises(ValueError):
        classify(_rest_schedule(1e-9, 2e-9, 3e-9), guard_band_s=-1.0)


def test_boosted_frames_can_relabel_photon1() -> None:
    # At rest this is series 1 (BS11 impact last).  A BS11 frame moving
    # toward photon 1 sees the spacelike-separated photon 2 impacts pushed
    # later, so BS11's own impact turns into a before one in its frame while
    # photon 2's resting frames still call both of theirs before: the
    # (b11, b22) pairing, unreachable at rest.
    base = series_preset(1)
    boosted = ExperimentGeometry(
        length_bs11=base.length_bs11,
        length_bs21=base.length_bs21,
        length_bs22=base.length_bs22,
        m11_displacement=base.m11_displacement,
        beta_bs11=-0.9,
    )
    timing = classify(schedule_from_geometry(boosted))
    assert timing.pairing == (PhotonOneLabel.B11, PhotonTwoLabel.B22)
    assert timing.series is None  # not a rest schedule
    rest_timing = classify(schedule_from_geometry(base))
    assert rest_timing.label1 is PhotonOneLabel.A11_22


# --- timing assignments -------------------------------------------------------


def test_unrepresentable_pairing_rejected() -> None:
    with pytest.raises(ValueError):
        TimingAssignment(PhotonOneLabel.A11_22, PhotonTwoLabel.B21)
    with pytest.raises(ValueError):
        TimingAssignment(PhotonOneLabel.A11_21, PhotonTwoLabel.B22)


def test_before_label2_requires_bs21_before() -> None:
    with pytest.raises(ValueError):
        TimingAssignment(PhotonOneLabel.B11, PhotonTwoLabel.B22, bs21_before=False)


def test_for_series_round_trip() -> None:
    for series in (1, 2, 3):
        assignment = TimingAssignment.for_series(series)
        assert assignment.series == series
        from_preset = classify(schedule_from_geometry(series_preset(series)))
        assert from_preset.pairing == assignment.pairing
        assert from_preset.bs21_before == assignment.bs21_before
    with pytest.raises(ValueError):
        TimingAssignment.for_series(0)


# --- geometry ------------------------------------------------------------------


def test_geometry_rejects_bad_lengths() -> None:
    with pytest.raises(ValueError):
        ExperimentGeometry(length_bs11=0.0, length_bs21=1.0, length_bs22=2.0)
    with pytest.raises(ValueError):
        ExperimentGeometry(length_bs11=1.0, length_bs21=1.0, length_bs22=2.0, m11_displacement=-1.0)


def test_schedule_from_geometry_times_and_positions() -> None:
    geometry = ExperimentGeometry(
        length_bs11=1.0, length_bs21=1.0, length_bs22=2.0, m11_displacement=0.5
    )
    schedule = schedule_from_geometry(geometry)
    assert schedule.bs11.t == pytest.approx(1.5 / SPEED_OF_LIGHT)
    assert schedule.bs11.x == pytest.approx(-1.5)
    assert schedule.bs21.x == pytest.approx(1.0)
    assert schedule.bs22.t == pytest.approx(2.0 / SPEED_OF_LIGHT)
    # BS11 arrival between the photon 2 impacts: the third lab ordering.
    assert classify(schedule).series == 3


def test_presets_classify_to_their_series_with_nanosecond_gaps() -> None:
    for series in (1, 2, 3):
        geometry = series_preset(series)
        schedule = schedule_from_geometry(geometry)
        times = sorted((schedule.bs11.t, schedule.bs21.t, schedule.bs22.t))
        assert times[1] - times[0] >= 1e-9
        assert times[2] - times[1] >= 1e-9
        assert schedule.at_rest()
        assert classify(schedule).series == series


def test_preset_requires_known_series() -> None:
    with pytest.raises(ValueError):
        series_preset(4)
