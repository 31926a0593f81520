"""Spacetime bookkeeping for the beam-splitter impacts.

All events sit on one collinear optical axis with the source at the origin,
photon 1 travelling toward negative x and photon 2 toward positive x.  Each
beam splitter may carry its own inertial frame; an impact is classified as
"before" or "non-before" from the time orderings evaluated in that
splitter's own frame.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import AmbiguousScheduleError

SPEED_OF_LIGHT = 299_792_458.0  # m/s

# Frame-time differences smaller than this are refused as unclassifiable.
DEFAULT_GUARD_BAND_S = 1e-15


class Site(enum.Enum):
    """The three beam splitters: BS11 for photon 1, BS21 then BS22 for photon 2."""

    BS11 = "BS11"
    BS21 = "BS21"
    BS22 = "BS22"


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def _require_beta(name: str, beta: float) -> float:
    beta = float(beta)
    if not math.isfinite(beta) or not -1.0 < beta < 1.0:
        raise ValueError(f"{name} must satisfy |beta| < 1, got {beta!r}")
    return beta


@dataclass(frozen=True)
class SpacetimeEvent:
    """A beam-splitter impact at lab time t (s) and axis position x (m)."""

    site: Site
    t: float
    x: float

    def __post_init__(self) -> None:
        if not isinstance(self.site, Site):
            raise ValueError(f"site must be a Site, got {self.site!r}")
        _require_finite("t", self.t)
        _require_finite("x", self.x)


def boost_time(event: SpacetimeEvent, beta: float) -> float:
    """Impact time in a frame moving at beta = v/c along the axis: gamma * (t - beta x / c)."""
    beta = _require_beta("beta", beta)
    gamma = 1.0 / math.sqrt(1.0 - beta * beta)
    return gamma * (event.t - beta * event.x / SPEED_OF_LIGHT)


@dataclass(frozen=True)
class ImpactSchedule:
    """One impact event per beam splitter plus each splitter's frame velocity.

    Photon 2's flight fixes the causal order BS21 then BS22; a schedule whose
    own-frame times violate that order is rejected.
    """

    bs11: SpacetimeEvent
    bs21: SpacetimeEvent
    bs22: SpacetimeEvent
    beta_bs11: float = 0.0
    beta_bs21: float = 0.0
    beta_bs22: float = 0.0

    def __post_init__(self) -> None:
        for slot, site in (("bs11", Site.BS11), ("bs21", Site.BS21), ("bs22", Site.BS22)):
            event = getattr(self, slot)
            if not isinstance(event, SpacetimeEvent) or event.site is not site:
                raise ValueError(f"{slot} must be a SpacetimeEvent at {site.value}")
        for name in ("beta_bs11", "beta_bs21", "beta_bs22"):
            _require_beta(name, getattr(self, name))
        for beta, frame in ((self.beta_bs21, "BS21"), (self.beta_bs22, "BS22")):
            if boost_time(self.bs22, beta) <= boost_time(self.bs21, beta):
                raise ValueError(
                    f"photon 2 must reach BS21 before BS22, violated in the {frame} frame"
                )

    def at_rest(self) -> bool:
        return self.beta_bs11 == 0.0 and self.beta_bs21 == 0.0 and self.beta_bs22 == 0.0


class PhotonOneLabel(enum.Enum):
    """Timing label of photon 1's impact on BS11, in BS11's frame."""

    B11 = "b11"  # before photon 2 reaches BS21
    A11_21 = "a11[21]"  # non-before relative to BS21, still before BS22
    A11_22 = "a11[22]"  # non-before relative to BS22 as well


class PhotonTwoLabel(enum.Enum):
    """Timing label of photon 2's relevant impact."""

    B21 = "b21"  # BS21 impact before BS11's, photon 2 detected between its splitters
    B22 = "b22"  # final impact before BS11's (and the BS21 one too)
    A22 = "a22"  # final impact non-before

REPRESENTABLE_PAIRINGS = frozenset(
    {
        (PhotonOneLabel.B11, PhotonTwoLabel.B21),
        (PhotonOneLabel.B11, PhotonTwoLabel.B22),
        (PhotonOneLabel.B11, PhotonTwoLabel.A22),
        (PhotonOneLabel.A11_21, PhotonTwoLabel.B21),
        (PhotonOneLabel.A11_21, PhotonTwoLabel.A22),
        (PhotonOneLabel.A11_22, PhotonTwoLabel.B22),
        (PhotonOneLabel.A11_22, PhotonTwoLabel.A22),
    }
)

_SERIES_BY_PAIRING = {
    (PhotonOneLabel.A11_22, PhotonTwoLabel.B22): 1,
    (PhotonOneLabel.B11, PhotonTwoLabel.A22): 2,
    (PhotonOneLabel.A11_21, PhotonTwoLabel.A22): 3,
}


@dataclass(frozen=True)
class TimingAssignment:
    """Before/non-before labels for both photons, plus the series id when defined.

    bs21_before records whether BS21's impact precedes BS11's in BS21's own
    frame; the label2 = a22 case leaves it free, the others imply it.  The
    series id is set only for schedules at rest, where the lab ordering alone
    decides it.
    """

    label1: PhotonOneLabel
    label2: PhotonTwoLabel
    bs21_before: bool = True
    series: int | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.label1, PhotonOneLabel) or not isinstance(self.label2, PhotonTwoLabel):
            raise ValueError("labels must be PhotonOneLabel and PhotonTwoLabel")
        if self.pairing not in REPRESENTABLE_PAIRINGS:
            raise ValueError(f"pairing ({self.label1.value}, {self.label2.value}) is not representable")
        if self.label2 in (PhotonTwoLabel.B21, PhotonTwoLabel.B22) and not self.bs21_before:
            raise ValueError(f"label {self.label2.value} requires the BS21 impact to be before")
        if self.series is not None and self.series not in (1, 2, 3):
            raise ValueError(f"series must be 1, 2 or 3, got {self.series!r}")

    @property
    def pairing(self) -> tuple[PhotonOneLabel, PhotonTwoLabel]:
        return (self.label1, self.label2)

    @classmethod
    def for_series(cls, series: int) -> "TimingAssignment":
        """Rest-frame assignment of one of the three lab-ordering series."""
        table = {
            1: (PhotonOneLabel.A11_22, PhotonTwoLabel.B22, True),
            2: (PhotonOneLabel.B11, PhotonTwoLabel.A22, False),
            3: (PhotonOneLabel.A11_21, PhotonTwoLabel.A22, True),
        }
        if series not in table:
            raise ValueError(f"series must be 1, 2 or 3, got {series!r}")
        label1, label2, bs21_before = table[series]
        return cls(label1, label2, bs21_before, series)


def _strictly_before(t_a: float, t_b: float, guard: float, what: str) -> bool:
    """Whether t_a < t_b, refusing differences inside the guard band."""
    if abs(t_b - t_a) < guard:
        raise AmbiguousScheduleError(
            f"{what}: times {t_a!r} and {t_b!r} differ by less than the guard band {guard!r} s"
        )
    return t_a < t_b


def classify(
    schedule: ImpactSchedule, *, guard_band_s: float = DEFAULT_GUARD_BAND_S
) -> TimingAssignment:
    """Label both photons' impacts from the frame-relative time orderings.

    Photon 1 (times in BS11's frame): before if BS11's impact precedes the
    partner's first one, otherwise non-before relative to the first partner
    splitter it did not precede.  Photon 2's final impact is before only if
    it precedes BS11's in BS22's frame and the BS21 impact does so too in
    BS21's frame; ties count as non-before.  Near-ties inside the guard band
    raise AmbiguousScheduleError instead of silently picking a side.
    """
    if not math.isfinite(guard_band_s) or guard_band_s < 0.0:
        raise ValueError(f"guard_band_s must be a finite non-negative time, got {guard_band_s!r}")
    t11_f11 = boost_time(schedule.bs11, schedule.beta_bs11)
    t21_f11 = boost_time(schedule.bs21, schedule.beta_bs11)
    t22_f11 = boost_time(schedule.bs22, schedule.beta_bs11)

    if _strictly_before(t11_f11, t21_f11, guard_band_s, "BS11 vs BS21 in the BS11 frame"):
        label1 = PhotonOneLabel.B11
    elif _strictly_before(t11_f11, t22_f11, guard_band_s, "BS11 vs BS22 in the BS11 frame"):
        label1 = PhotonOneLabel.A11_21
    else:
        label1 = PhotonOneLabel.A11_22

    bs21_before = _strictly_before(
        boost_time(schedule.bs21, schedule.beta_bs21),
        boost_time(schedule.bs11, schedule.beta_bs21),
        guard_band_s,
        "BS21 vs BS11 in the BS21 frame",
    )
    bs22_before = _strictly_before(
        boost_time(schedule.bs22, schedule.beta_bs22),
        boost_time(schedule.bs11, schedule.beta_bs22),
        guard_band_s,
        "BS22 vs BS11 in the BS22 frame",
    )
    label2 = PhotonTwoLabel.B22 if (bs22_before and bs21_before) else PhotonTwoLabel.A22

    series = _SERIES_BY_PAIRING.get((label1, label2)) if schedule.at_rest() else None
    return TimingAssignment(label1, label2, bs21_before, series)


@dataclass(frozen=True)
class ExperimentGeometry:
    """Source-to-splitter path lengths (m) on the collinear axis.

    Arrival times are path length over c.  Displacing mirror M11 stretches or
    shortens photon 1's path only, which is how one lab ordering is traded
    for another without touching photon 2's legs.
    """

    length_bs11: float
    length_bs21: float
    length_bs22: float
    m11_displacement: float = 0.0
    beta_bs11: float = 0.0
    beta_bs21: float = 0.0
    beta_bs22: float = 0.0

    def __post_init__(self) -> None:
        for name in ("length_bs11", "length_bs21", "length_bs22"):
            if _require_finite(name, getattr(self, name)) <= 0.0:
                raise ValueError(f"{name} must be positive")
        _require_finite("m11_displacement", self.m11_displacement)
        if self.effective_length_bs11 <= 0.0:
            raise ValueError("m11_displacement makes photon 1's path non-positive")
        for name in ("beta_bs11", "beta_bs21", "beta_bs22"):
            _require_beta(name, getattr(self, name))

    @property
    def effective_length_bs11(self) -> float:
        return self.length_bs11 + self.m11_displacement


def schedule_from_geometry(geometry: ExperimentGeometry) -> ImpactSchedule:
    """Impact events at x = (signed) path length, t = path length / c."""
    l11 = geometry.effective_length_bs11
    return ImpactSchedule(
        bs11=SpacetimeEvent(Site.BS11, l11 / SPEED_OF_LIGHT, -l11),
        bs21=SpacetimeEvent(Site.BS21, geometry.length_bs21 / SPEED_OF_LIGHT, geometry.length_bs21),
        bs22=SpacetimeEvent(Site.BS22, geometry.length_bs22 / SPEED_OF_LIGHT, geometry.length_bs22),
        beta_bs11=geometry.beta_bs11,
        beta_bs21=geometry.beta_bs21,
        beta_bs22=geometry.beta_bs22,
    )


_PHOTON2_LEG_BS21_M = 1.0
_PHOTON2_LEG_BS22_M = 3.0
_PHOTON1_BASE_LEG_M = 2.0
_PRESET_M11_DISPLACEMENT_M = {1: 2.0, 2: -1.5, 3: 0.0}


def series_preset(series: int) -> ExperimentGeometry:
    """Resting geometry that realizes lab-ordering series 1, 2 or 3.

    Photon 2's legs are fixed at 1 m and 3 m; only the M11 displacement moves
    the BS11 arrival past both photon-2 impacts (series 1), before both
    (series 2) or between them (series 3).  Every impact gap exceeds 1 ns.
    """
    if series not in _PRESET_M11_DISPLACEMENT_M:
        raise ValueError(f"series must be 1, 2 or 3, got {series!r}")
    return ExperimentGeometry(
        length_bs11=_PHOTON1_BASE_LEG_M,
        length_bs21=_PHOTON2_LEG_BS21_M,
        length_bs22=_PHOTON2_LEG_BS22_M,
        m11_displacement=_PRESET_M11_DISPLACEMENT_M[series],
    )
