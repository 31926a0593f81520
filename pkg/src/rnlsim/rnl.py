"""Relativistic-nonlocality (multisimultaneity) prediction rules.

Unlike the timing-blind quantum rule, these predictions depend on the
before/non-before pairing of the two impacts: two before impacts give flat
product statistics, mixed pairings reproduce the quantum tables, and two
non-before impacts factorize through conditionals on the partner's before
values, which forces their correlation to vanish.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .quantum import (
    OUTCOMES,
    JointDistribution,
    PhaseSettings,
    qm_correlation,
    qm_distinguishable_joint,
    qm_joint,
    qm_single_pair_correlation,
    qm_single_pair_joint,
)
from .timing import PhotonOneLabel, PhotonTwoLabel, TimingAssignment

PROB_ATOL = 1e-12


class ModelVariant(enum.Enum):
    """Which rule set predicts the coincidence table for a given timing."""

    QM = "QM"
    RNL_STANDARD = "RNL_STANDARD"
    RNL_ALTERNATIVE = "RNL_ALTERNATIVE"


@dataclass(frozen=True)
class ConditionalTable:
    """P(outcome | partner's before value) for one non-before impact."""

    p_plus_given_plus: float
    p_minus_given_plus: float
    p_plus_given_minus: float
    p_minus_given_minus: float

    def __post_init__(self) -> None:
        for name in (
            "p_plus_given_plus",
            "p_minus_given_plus",
            "p_plus_given_minus",
            "p_minus_given_minus",
        ):
            p = getattr(self, name)
            if not 0.0 - PROB_ATOL <= p <= 1.0 + PROB_ATOL:
                raise ValueError(f"{name} = {p!r} is not a probability")
        for given, total in (
            (1, self.p_plus_given_plus + self.p_minus_given_plus),
            (-1, self.p_plus_given_minus + self.p_minus_given_minus),
        ):
            if abs(total - 1.0) > PROB_ATOL:
                raise ValueError(f"column for given={given:+d} sums to {total!r}, expected 1")

    def prob(self, outcome: int, given: int) -> float:
        if outcome not in OUTCOMES or given not in OUTCOMES:
            raise ValueError(f"outcome and given must be +1 or -1, got {outcome!r}, {given!r}")
        if given == 1:
            return self.p_plus_given_plus if outcome == 1 else self.p_minus_given_plus
        return self.p_plus_given_minus if outcome == 1 else self.p_minus_given_minus


def _final_stage_table(settings: PhaseSettings, indistinguishable: bool) -> JointDistribution:
    return qm_joint(settings) if indistinguishable else qm_distinguishable_joint()


def _intermediate_stage_table(settings: PhaseSettings, indistinguishable: bool) -> JointDistribution:
    if indistinguishable:
        return qm_single_pair_joint(settings.phi11, settings.phi21)
    return qm_distinguishable_joint()


def conditional_from_before(
    settings: PhaseSettings,
    which: PhotonOneLabel | PhotonTwoLabel,
    *,
    indistinguishable: bool = True,
) -> ConditionalTable:
    """Conditional linking a non-before outcome to the partner's before value.

    The table is pinned by one requirement: summing the flat before
    statistics against it must reproduce the quantum table of the matching
    mixed experiment.  That forces P(out | given) = 2 * P_mixed(out, given).
    a11[21] conditions on the BS21 before value, a11[22] on the BS22 one and
    a22 on the BS11 one (the partner's own other before value drops out).
    """
    if which is PhotonOneLabel.A11_21:
        anchor = _intermediate_stage_table(settings, indistinguishable)
        transpose = False
    elif which is PhotonOneLabel.A11_22:
        anchor = _final_stage_table(settings, indistinguishable)
        transpose = False
    elif which is PhotonTwoLabel.A22:
        anchor = _final_stage_table(settings, indistinguishable)
        transpose = True
    else:
        raise ValueError(f"conditionals exist only for non-before impacts, got {which!r}")

    def c(outcome: int, given: int) -> float:
        joint = anchor.prob(given, outcome) if transpose else anchor.prob(outcome, given)
        return 2.0 * joint

    return ConditionalTable(c(1, 1), c(-1, 1), c(1, -1), c(-1, -1))


def _factorized_joint(
    before_table: JointDistribution,
    cond_photon1: ConditionalTable,
    cond_photon2: ConditionalTable,
) -> JointDistribution:
    """Two-non-before table: sum the before outcomes against both conditionals.

    Photon 1's conditional reads photon 2's before value and vice versa, so
    each non-before outcome is decided by the partner's earlier impact alone.
    """

    def entry(out1: int, out2: int) -> float:
        total = 0.0
        for sigma in OUTCOMES:
            for omega in OUTCOMES:
                total += (
                    before_table.prob(sigma, omega)
                    * cond_photon1.prob(out1, omega)
                    * cond_photon2.prob(out2, sigma)
                )
        return total

    return JointDistribution(entry(1, 1), entry(1, -1), entry(-1, 1), entry(-1, -1))


def rnl_joint(
    settings: PhaseSettings,
    timing: TimingAssignment,
    variant: ModelVariant,
    *,
    condition1: bool = True,
    condition2: bool = True,
) -> JointDistribution:
    """Joint outcome table for one timing assignment under one model variant.

    condition1 asserts that pairs are indistinguishable when photon 2 is
    detected between its splitters, condition2 that paths are unknowable
    after the final splitter; dropping either replaces the affected quantum
    table by the flat one.  The QM variant ignores timing.  The standard and
    alternative rule sets differ only on the (a11[21], a22) pairing, where
    the alternative keeps the full quantum table.
    """
    if not isinstance(variant, ModelVariant):
        raise ValueError(f"variant must be a ModelVariant, got {variant!r}")
    if not isinstance(timing, TimingAssignment):
        raise ValueError(f"timing must be a TimingAssignment, got {timing!r}")
    if variant is ModelVariant.QM:
        return _final_stage_table(settings, condition2)

    label1, label2 = timing.pairing
    if label1 is PhotonOneLabel.B11 and label2 in (PhotonTwoLabel.B21, PhotonTwoLabel.B22):
        return qm_distinguishable_joint()
    if timing.pairing == (PhotonOneLabel.A11_21, PhotonTwoLabel.B21):
        return _intermediate_stage_table(settings, condition1)
    if timing.pairing in (
        (PhotonOneLabel.A11_22, PhotonTwoLabel.B22),
        (PhotonOneLabel.B11, PhotonTwoLabel.A22),
    ):
        return _final_stage_table(settings, condition2)
    if timing.pairing == (PhotonOneLabel.A11_22, PhotonTwoLabel.A22):
        return _factorized_joint(
            qm_distinguishable_joint(),
            conditional_from_before(settings, PhotonOneLabel.A11_22, indistinguishable=condition2),
            conditional_from_before(settings, PhotonTwoLabel.A22, indistinguishable=condition2),
        )
    if timing.pairing == (PhotonOneLabel.A11_21, PhotonTwoLabel.A22):
        if variant is ModelVariant.RNL_ALTERNATIVE:
            return _final_stage_table(settings, condition2)
        return _factorized_joint(
            qm_distinguishable_joint(),
            conditional_from_before(settings, PhotonOneLabel.A11_21, indistinguishable=condition1),
            conditional_from_before(settings, PhotonTwoLabel.A22, indistinguishable=condition2),
        )
    raise ValueError(f"no prediction rule for pairing {timing.pairing!r}")


_TWO_NONBEFORE_PAIRINGS = (
    (PhotonOneLabel.A11_22, PhotonTwoLabel.A22),
    (PhotonOneLabel.A11_21, PhotonTwoLabel.A22),
)


def two_nonbefore_correlation(
    settings: PhaseSettings, pairing: tuple[PhotonOneLabel, PhotonTwoLabel]
) -> float:
    """Product form of the two-non-before theorem: E(b,b) * E(a,b) * E(b,a).

    The all-before factor vanishes identically, so the product does too; it
    is still evaluated factor by factor rather than short-circuited.
    """
    if pairing not in _TWO_NONBEFORE_PAIRINGS:
        raise ValueError(f"pairing must be one of {_TWO_NONBEFORE_PAIRINGS}, got {pairing!r}")
    e_before_before = qm_distinguishable_joint().correlation
    if pairing[0] is PhotonOneLabel.A11_22:
        e_photon1_mixed = qm_correlation(settings)
    else:
        e_photon1_mixed = qm_single_pair_correlation(settings.phi11, settings.phi21)
    e_photon2_mixed = qm_correlation(settings)
    return e_before_before * e_photon1_mixed * e_photon2_mixed


@dataclass(frozen=True)
class Prediction:
    """A joint table together with its correlation."""

    joint: JointDistribution
    correlation: float


def predict(
    settings: PhaseSettings,
    timing: TimingAssignment,
    variant: ModelVariant,
    *,
    condition1: bool = True,
    condition2: bool = True,
) -> Prediction:
    """Facade: the joint table for (settings, timing, variant) plus its correlation."""
    joint = rnl_joint(settings, timing, variant, condition1=condition1, condition2=condition2)
    return Prediction(joint=joint, correlation=joint.correlation)
