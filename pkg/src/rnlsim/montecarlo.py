"""Deterministic Monte Carlo coincidence counting.

Philox (counter-based) generators are keyed by (seed, variant index, chunk
index), so every chunk owns its stream and merged counts cannot depend on
how chunks are spread over workers.  The chunk size is part of the run
configuration for the same reason: changing it changes the stream layout.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import RunConfig
from .quantum import JointDistribution
from .rnl import ModelVariant, predict
from .timing import TimingAssignment, classify, schedule_from_geometry

# Canonical stream index per variant, independent of the order requested.
_VARIANT_STREAM_INDEX = {variant: index for index, variant in enumerate(ModelVariant)}

# Outcome pairs in the order of JointDistribution.as_array().
OUTCOME_ORDER = ((1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class CoincidenceCounts:
    """Coincidence counts per outcome pair, photon-1 outcome first."""

    r_pp: int
    r_pm: int
    r_mp: int
    r_mm: int

    def __post_init__(self) -> None:
        for name in ("r_pp", "r_pm", "r_mp", "r_mm"):
            count = getattr(self, name)
            if not isinstance(count, int) or count < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {count!r}")

    @property
    def n_total(self) -> int:
        return self.r_pp + self.r_pm + self.r_mp + self.r_mm

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.r_pp, self.r_pm, self.r_mp, self.r_mm)


@dataclass(frozen=True)
class EstimatorResult:
    e_hat: float
    stderr: float
    n: int


def substream(seed: int, variant_index: int, chunk_index: int) -> np.random.Generator:
    """Philox generator for one (variant, chunk) cell of a run."""
    sequence = np.random.SeedSequence([seed, variant_index, chunk_index])
    return np.random.Generator(np.random.Philox(sequence))


def _cumulative(joint: JointDistribution) -> np.ndarray:
    cumulative = np.cumsum(joint.as_array())
    # The table sums to 1 within tolerance; pinning the last edge keeps
    # every uniform draw in range.
    cumulative[-1] = 1.0
    return cumulative


def sample_outcome(rng: np.random.Generator, joint: JointDistribution) -> tuple[int, int]:
    """One coincidence draw by inverse CDF; consumes exactly one uniform."""
    index = int(np.searchsorted(_cumulative(joint), rng.random(), side="right"))
    return OUTCOME_ORDER[min(index, 3)]


def _sample_chunk(
    cumulative: np.ndarray, seed: int, variant_index: int, chunk_index: int, size: int
) -> np.ndarray:
    rng = substream(seed, variant_index, chunk_index)
    indices = np.searchsorted(cumulative, rng.random(size), side="right")
    return np.bincount(np.minimum(indices, 3), minlength=4)


def sample_counts(
    joint: JointDistribution,
    *,
    seed: int,
    variant_index: int,
    n_events: int,
    chunk_size: int,
    workers: int = 1,
) -> CoincidenceCounts:
    """Draw n_events pairs in fixed chunks and merge the per-chunk counts.

    The result is a pure function of (joint, seed, variant_index, n_events,
    chunk_size); the worker count only spreads the chunks around.
    """
    if n_events < 1:
        raise ValueError(f"n_events must be positive, got {n_events!r}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {chunk_size!r}")
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers!r}")
    cumulative = _cumulative(joint)
    sizes = [
        min(chunk_size, n_events - start) for start in range(0, n_events, chunk_size)
    ]
    if workers == 1 or len(sizes) == 1:
        chunk_counts = [
            _sample_chunk(cumulative, seed, variant_index, index, size)
            for index, size in enumerate(sizes)
        ]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(sizes))) as pool:
            chunk_counts = list(
                pool.map(
                    _sample_chunk,
                    [cumulative] * len(sizes),
                    [seed] * len(sizes),
                    [variant_index] * len(sizes),
                    range(len(sizes)),
                    sizes,
                )
            )
    merged = np.sum(chunk_counts, axis=0)
    return CoincidenceCounts(*(int(c) for c in merged))


def estimate_correlation(counts: CoincidenceCounts) -> EstimatorResult:
    """Correlation estimate from counts: (R_pp - R_pm - R_mp + R_mm) / n.

    The standard error is sqrt((1 - e_hat^2) / n), the binomial expression
    for an outcome-product average.
    """
    n = counts.n_total
    if n < 1:
        raise ValueError("cannot estimate a correlation from zero counts")
    e_hat = (counts.r_pp - counts.r_pm - counts.r_mp + counts.r_mm) / n
    stderr = math.sqrt(max(0.0, 1.0 - e_hat * e_hat) / n)
    return EstimatorResult(e_hat=e_hat, stderr=stderr, n=n)


def run_experiment(
    config: RunConfig, *, workers: int = 1
) -> dict[ModelVariant, CoincidenceCounts]:
    """Classify the configured geometry once, then sample each variant's table."""
    timing = classify(schedule_from_geometry(config.resolve_geometry()))
    return _run_with_timing(config, timing, workers=workers)


def _run_with_timing(
    config: RunConfig, timing: TimingAssignment, *, workers: int = 1
) -> dict[ModelVariant, CoincidenceCounts]:
    settings = config.settings()
    results: dict[ModelVariant, CoincidenceCounts] = {}
    for variant in config.variants:
        joint = predict(
            settings,
            timing,
            variant,
            condition1=config.condition1,
            condition2=config.condition2,
        ).joint
        results[variant] = sample_counts(
            joint,
            seed=config.seed,
            variant_index=_VARIANT_STREAM_INDEX[variant],
            n_events=config.n_events,
            chunk_size=config.chunk_size,
            workers=workers,
        )
    return results
