"""Run configuration: the RunConfig dataclass and the flat key = value file format."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .quantum import PhaseSettings
from .rnl import ModelVariant
from .timing import ExperimentGeometry, series_preset

DEFAULT_PHI11_DEG = 45.0
DEFAULT_PHI21_DEG = -45.0
DEFAULT_PHI22_DEG = 90.0
DEFAULT_SERIES = 3
DEFAULT_N_EVENTS = 1_000_000
DEFAULT_SEED = 1
DEFAULT_CHUNK_SIZE = 125_000

_GEOMETRY_LENGTH_KEYS = ("length_bs11", "length_bs21", "length_bs22")

# The complete config vocabulary; anything else in a file is an error.
CONFIG_KEYS = (
    "series",
    *_GEOMETRY_LENGTH_KEYS,
    "m11_displacement",
    "phi11_deg",
    "phi21_deg",
    "phi22_deg",
    "variants",
    "n_events",
    "seed",
    "chunk_size",
    "condition1",
    "condition2",
)


@dataclass(frozen=True)
class RunConfig:
    """Everything one comparison run needs; equal configs give identical output.

    Exactly one of series (preset geometry) and geometry (explicit lengths)
    must be set.  condition1/condition2 are the two indistinguishability
    assumptions; turning one off flattens the affected quantum table.
    """

    phi11_deg: float = DEFAULT_PHI11_DEG
    phi21_deg: float = DEFAULT_PHI21_DEG
    phi22_deg: float = DEFAULT_PHI22_DEG
    series: int | None = DEFAULT_SERIES
    geometry: ExperimentGeometry | None = None
    variants: tuple[ModelVariant, ...] = (
        ModelVariant.QM,
        ModelVariant.RNL_STANDARD,
        ModelVariant.RNL_ALTERNATIVE,
    )
    n_events: int = DEFAULT_N_EVENTS
    seed: int = DEFAULT_SEED
    chunk_size: int = DEFAULT_CHUNK_SIZE
    condition1: bool = True
    condition2: bool = True

    def __post_init__(self) -> None:
        for name in ("phi11_deg", "phi21_deg", "phi22_deg"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")
        if (self.series is None) == (self.geometry is None):
            raise ConfigError("exactly one of series and geometry must be set")
        if self.series is not None and self.series not in (1, 2, 3):
            raise ConfigError(f"series must be 1, 2 or 3, got {self.series!r}")
        if self.geometry is not None and not isinstance(self.geometry, ExperimentGeometry):
            raise ConfigError("geometry must be an ExperimentGeometry")
        if not self.variants:
            raise ConfigError("variants must not be empty")
        if len(set(self.variants)) != len(self.variants):
            raise ConfigError("variants must not repeat")
        for variant in self.variants:
            if not isinstance(variant, ModelVariant):
                raise ConfigError(f"unknown variant {variant!r}")
        if not isinstance(self.n_events, int) or self.n_events < 1:
            raise ConfigError(f"n_events must be a positive integer, got {self.n_events!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if not isinstance(self.chunk_size, int) or self.chunk_size < 1:
            raise ConfigError(f"chunk_size must be a positive integer, got {self.chunk_size!r}")

    def settings(self) -> PhaseSettings:
        return PhaseSettings.from_degrees(self.phi11_deg, self.phi21_deg, self.phi22_deg)

    def resolve_geometry(self) -> ExperimentGeometry:
        if self.geometry is not None:
            return self.geometry
        return series_preset(self.series)


def _parse_int(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def _parse_float(key: str, text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite, got {text!r}")
    return value


def _parse_bool(key: str, text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected true or false, got {text!r}")


def parse_variants(text: str) -> tuple[ModelVariant, ...]:
    """Comma-separated variant names, case-insensitive."""
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise ConfigError(f"variants: no variant named in {text!r}")
    by_name = {variant.value.lower(): variant for variant in ModelVariant}
    variants = []
    for name in names:
        variant = by_name.get(name.lower())
        if variant is None:
            raise ConfigError(f"variants: unknown variant {name!r}")
        variants.append(variant)
    return tuple(variants)


_KEY_PARSERS = {
    "series": _parse_int,
    "length_bs11": _parse_float,
    "length_bs21": _parse_float,
    "length_bs22": _parse_float,
    "m11_displacement": _parse_float,
    "phi11_deg": _parse_float,
    "phi21_deg": _parse_float,
    "phi22_deg": _parse_float,
    "variants": lambda key, text: parse_variants(text),
    "n_events": _parse_int,
    "seed": _parse_int,
    "chunk_size": _parse_int,
    "condition1": _parse_bool,
    "condition2": _parse_bool,
}


def parse_config_file(path: Path | str) -> dict[str, object]:
    """Read a flat `key = value` file into typed values.

    Blank lines and lines starting with # are skipped.  Unknown keys,
    repeated keys and malformed values are all ConfigErrors.
    """
    path = Path(path)
    values: dict[str, object] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, raw = stripped.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key = key.strip()
        raw = raw.strip()
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: repeated key {key!r}")
        if not raw:
            raise ConfigError(f"{path}:{lineno}: empty value for {key!r}")
        values[key] = _KEY_PARSERS[key](key, raw)
    return values


def build_run_config(values: dict[str, object]) -> RunConfig:
    """Assemble a RunConfig from typed config values, applying defaults.

    Explicit geometry lengths and a series id are mutually exclusive; the
    lengths must come as a complete triple.
    """
    unknown = set(values) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)!r}")
    length_keys = [key for key in _GEOMETRY_LENGTH_KEYS if key in values]
    if "series" in values and length_keys:
        raise ConfigError("series and explicit geometry lengths are mutually exclusive")
    if length_keys and len(length_keys) < len(_GEOMETRY_LENGTH_KEYS):
        missing = sorted(set(_GEOMETRY_LENGTH_KEYS) - set(length_keys))
        raise ConfigError(f"explicit geometry needs all three lengths, missing {missing!r}")
    if "m11_displacement" in values and not length_keys:
        raise ConfigError("m11_displacement requires explicit geometry lengths")

    series: int | None = None
    geometry: ExperimentGeometry | None = None
    if length_keys:
        try:
            geometry = ExperimentGeometry(
                length_bs11=values["length_bs11"],
                length_bs21=values["length_bs21"],
                length_bs22=values["length_bs22"],
                m11_displacement=values.get("m11_displacement", 0.0),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    else:
        series = values.get("series", DEFAULT_SERIES)

    return RunConfig(
        phi11_deg=values.get("phi11_deg", DEFAULT_PHI11_DEG),
        phi21_deg=values.get("phi21_deg", DEFAULT_PHI21_DEG),
        phi22_deg=values.get("phi22_deg", DEFAULT_PHI22_DEG),
        series=series,
        geometry=geometry,
        variants=values.get(
            "variants",
            (ModelVariant.QM, ModelVariant.RNL_STANDARD, ModelVariant.RNL_ALTERNATIVE),
        ),
        n_events=values.get("n_events", DEFAULT_N_EVENTS),
        seed=values.get("seed", DEFAULT_SEED),
        chunk_size=values.get("chunk_size", DEFAULT_CHUNK_SIZE),
        condition1=values.get("condition1", True),
        condition2=values.get("condition2", True),
    )
