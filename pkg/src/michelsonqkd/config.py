"""Scenario configuration: strict JSON loading for the command-line tools.

A scenario file is a single JSON document with nested sections. Unknown
keys are rejected at every level so typos fail loudly instead of silently
falling back to defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .calibration import DEFAULT_TARGET_QBER, DEFAULT_TARGET_RATE_BPS
from .optical_elements import MirrorKind
from .qkd_engine import ChannelConfig, DetectorConfig, DriftModel, SourceConfig

PRESET_NAMES = ("lab-50km", "lab-100km", "fading-demo")


class ConfigError(Exception):
    """Raised for unreadable, malformed or inconsistent scenario files."""


@dataclass(frozen=True)
class SessionSettings:
    duration_s: float = 7200.0
    bin_s: float = 60.0
    shot_noise: bool = True


@dataclass(frozen=True)
class SweepSettings:
    lengths_km: tuple[float, ...]
    loss_db_per_km: float = 0.2
    fixed_loss_db: float = 0.0


@dataclass(frozen=True)
class CalibrationSettings:
    """Targets for the receiver fit; reference_channel defaults to the
    scenario channel when omitted."""

    target_qber: float = DEFAULT_TARGET_QBER
    target_rate_bps: float = DEFAULT_TARGET_RATE_BPS
    max_receiver_loss_db: float = 30.0
    reference_channel: ChannelConfig | None = None


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    schemes: tuple[MirrorKind, ...]
    samples: int
    sweep_points: int
    source: SourceConfig
    channel: ChannelConfig
    detector: DetectorConfig
    calibration: CalibrationSettings | None
    intrinsic_visibility: float
    drift: DriftModel
    session: SessionSettings
    sweep: SweepSettings | None
    seed: int
    output_path: str | None


def _check_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(section) - allowed)
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {', '.join(unknown)}")


def _require_mapping(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must be a JSON object")
    return value


def _parse_mirror(value, where: str) -> MirrorKind:
    try:
        return MirrorKind(value)
    except ValueError:
        names = ", ".join(k.value for k in MirrorKind)
        raise ConfigError(f"{where} must be one of {names}, got {value!r}") from None


def _parse_source(section: dict) -> SourceConfig:
    _check_keys(
        section,
        {"mu_signal", "mu_decoy", "state_ratio", "rep_rate_hz", "pulse_width_s"},
        "source",
    )
    kwargs = dict(section)
    if "state_ratio" in kwargs:
        kwargs["state_ratio"] = tuple(int(w) for w in kwargs["state_ratio"])
    try:
        return SourceConfig(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid source section: {exc}") from None


def _parse_channel(section: dict, where: str = "channel") -> ChannelConfig:
    _check_keys(section, {"length_km", "loss_db_per_km", "fixed_loss_db"}, where)
    try:
        return ChannelConfig(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {where} section: {exc}") from None


def _parse_detector(section: dict) -> DetectorConfig:
    _check_keys(
        section,
        {
            "efficiency",
            "dark_count_per_gate",
            "gate_width_s",
            "num_detectors",
            "receiver_insertion_loss_db",
        },
        "detector",
    )
    try:
        return DetectorConfig(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid detector section: {exc}") from None


def _parse_drift(section: dict) -> DriftModel:
    _check_keys(
        section,
        {"phase_sigma", "compensation_interval", "compensation_residual"},
        "drift",
    )
    try:
        return DriftModel(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid drift section: {exc}") from None


def _parse_calibration(section: dict) -> CalibrationSettings:
    _check_keys(
        section,
        {"target_qber", "target_rate_bps", "max_receiver_loss_db", "reference_channel"},
        "calibration",
    )
    kwargs = dict(section)
    ref = kwargs.pop("reference_channel", None)
    if ref is not None:
        ref = _parse_channel(_require_mapping(ref, "calibration.reference_channel"),
                             "calibration.reference_channel")
    try:
        return CalibrationSettings(reference_channel=ref, **kwargs)
    except TypeError as exc:
        raise ConfigError(f"invalid calibration section: {exc}") from None


def _parse_session(section: dict) -> SessionSettings:
    _check_keys(section, {"duration_s", "bin_s", "shot_noise"}, "session")
    try:
        return SessionSettings(**section)
    except TypeError as exc:
        raise ConfigError(f"invalid session section: {exc}") from None


def _parse_sweep(section: dict) -> SweepSettings:
    _check_keys(section, {"lengths_km", "loss_db_per_km", "fixed_loss_db"}, "sweep")
    kwargs = dict(section)
    if "lengths_km" not in kwargs or not kwargs["lengths_km"]:
        raise ConfigError("sweep.lengths_km must be a non-empty list")
    kwargs["lengths_km"] = tuple(float(v) for v in kwargs["lengths_km"])
    try:
        return SweepSettings(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"invalid sweep section: {exc}") from None


_TOP_LEVEL_KEYS = {
    "name",
    "scheme",
    "schemes",
    "samples",
    "sweep_points",
    "source",
    "channel",
    "detector",
    "calibration",
    "intrinsic_visibility",
    "drift",
    "session",
    "sweep",
    "seed",
    "output_path",
}


def parse_config(doc: dict, name: str = "scenario") -> ScenarioConfig:
    """Validate a scenario document and fill defaults for omitted sections."""
    doc = _require_mapping(doc, "scenario file")
    _check_keys(doc, _TOP_LEVEL_KEYS, "scenario file")
    if "scheme" in doc and "schemes" in doc:
        raise ConfigError("give either scheme or schemes, not both")
    if "schemes" in doc:
        schemes = tuple(_parse_mirror(v, "schemes") for v in doc["schemes"])
        if not schemes:
            raise ConfigError("schemes must be non-empty")
    elif "scheme" in doc:
        schemes = (_parse_mirror(doc["scheme"], "scheme"),)
    else:
        schemes = (MirrorKind.QWP_REFLECTOR,)

    samples = int(doc.get("samples", 1000))
    if samples < 1:
        raise ConfigError("samples must be at least 1")
    sweep_points = int(doc.get("sweep_points", 64))
    if sweep_points < 8:
        raise ConfigError("sweep_points must be at least 8")
    seed = int(doc.get("seed", 0))
    if not -(2**63) <= seed < 2**64:
        raise ConfigError("seed must fit in 64 bits")
    intrinsic_visibility = float(doc.get("intrinsic_visibility", 1.0))
    if not 0.0 <= intrinsic_visibility <= 1.0:
        raise ConfigError("intrinsic_visibility must be in [0, 1]")

    source = _parse_source(_require_mapping(doc.get("source", {}), "source"))
    channel = _parse_channel(
        _require_mapping(doc.get("channel", {"length_km": 50.4, "loss_db_per_km": 9.5 / 50.4}),
                         "channel")
    )
    detector = _parse_detector(_require_mapping(doc.get("detector", {}), "detector"))
    calibration = (
        _parse_calibration(_require_mapping(doc["calibration"], "calibration"))
        if "calibration" in doc
        else None
    )
    drift = _parse_drift(_require_mapping(doc.get("drift", {}), "drift"))
    session = _parse_session(_require_mapping(doc.get("session", {}), "session"))
    sweep = (
        _parse_sweep(_require_mapping(doc["sweep"], "sweep")) if "sweep" in doc else None
    )
    output_path = doc.get("output_path")
    if output_path is not None and not isinstance(output_path, str):
        raise ConfigError("output_path must be a string")
    return ScenarioConfig(
        name=str(doc.get("name", name)),
        schemes=schemes,
        samples=samples,
        sweep_points=sweep_points,
        source=source,
        channel=channel,
        detector=detector,
        calibration=calibration,
        intrinsic_visibility=intrinsic_visibility,
        drift=drift,
        session=session,
        sweep=sweep,
        seed=seed,
        output_path=output_path,
    )


def load_config(path_or_preset: str) -> tuple[ScenarioConfig, dict]:
    """Load a scenario from a file path or a built-in preset name.

    Returns the parsed config together with the raw document (used for
    provenance hashing).
    """
    path = Path(path_or_preset)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
        name = path.stem
    elif path_or_preset in PRESET_NAMES:
        text = (
            resources.files("michelsonqkd") / "presets" / f"{path_or_preset}.json"
        ).read_text(encoding="utf-8")
        name = path_or_preset
    else:
        raise ConfigError(
            f"no such config file or preset: {path_or_preset!r} "
            f"(presets: {', '.join(PRESET_NAMES)})"
        )
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"could not parse {path_or_preset}: {exc}") from None
    return parse_config(doc, name), doc
