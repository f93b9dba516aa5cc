"""Run configuration: validated sections, YAML loading and content digest.

All physical quantities are in atomic units. The drive section also accepts
``wavelength_nm`` and ``intensity_W_cm2``, converted at load time.
"""

from __future__ import annotations

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Literal

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from cavity_hhg.atom.models import AtomModel, ComplexScalingConfig, SpatialGrid
from cavity_hhg.cavity.models import COMMENSURABILITY_TOL, CavityConfig
from cavity_hhg.errors import ConfigError
from cavity_hhg.floquet.models import DriveField, FloquetBasisSpec
from cavity_hhg.floquet.solver import SolverOptions
from cavity_hhg.oracle import PropagationConfig
from cavity_hhg.resources import CAVITY_HHG_RESOURCES

_logger = logging.getLogger(__name__)

__all__ = [
    "CacheSpec",
    "CavitySpec",
    "ChannelRange",
    "FigurePanel",
    "HarmonicsSpec",
    "PulseSpec",
    "RunConfig",
    "SweepSpec",
    "load_config",
    "load_panel",
]

# omega [a.u.] = _NM_TO_AU / lambda [nm]; eps0 [a.u.] = sqrt(I [W/cm^2] / _AU_INTENSITY)
_NM_TO_AU = 45.5634
_AU_INTENSITY = 3.50945e16

_PHYSICS_SECTIONS = (
    "atom",
    "grid",
    "scaling",
    "trajectory_thetas",
    "drive",
    "basis",
    "solver",
    "harmonics",
    "cavities",
    "sweep",
    "pulse",
    "propagation",
)


class ChannelRange(BaseModel):
    """Fourier channel range of the Floquet basis."""

    model_config = {"frozen": True, "extra": "forbid"}

    channel_min: int = Field(default=-40, le=0)
    channel_max: int = Field(default=40, ge=0)


class HarmonicsSpec(BaseModel):
    """Harmonic orders evaluated."""

    model_config = {"frozen": True, "extra": "forbid"}

    max_order: int = Field(default=45, ge=1)


class CavitySpec(BaseModel):
    """One cavity entry: a frequency and either a coupling or a target shift."""

    model_config = {"frozen": True, "extra": "forbid"}

    frequency: float | None = Field(default=None, gt=0)
    frequency_ratio: float | None = Field(default=None, gt=0)
    coupling: float | None = Field(default=None, ge=0)
    target_shift: float | None = None
    phase: float = 0.0

    @model_validator(mode="after")
    def _check_exclusive(self) -> CavitySpec:
        if (self.frequency is None) == (self.frequency_ratio is None):
            raise ValueError("give exactly one of 'frequency' or 'frequency_ratio'")
        if (self.coupling is None) == (self.target_shift is None):
            raise ValueError("give exactly one of 'coupling' or 'target_shift'")
        return self

    def resolve_frequency(self, drive_frequency: float) -> float:
        """omega_cav in atomic units."""
        if self.frequency is not None:
            return self.frequency
        ratio = self.frequency_ratio or 0.0
        return ratio * drive_frequency

    def to_cavity(
        self, drive_frequency: float, coupling: float | None = None
    ) -> CavityConfig:
        """Cavity with the configured or the supplied (calibrated) coupling."""
        return CavityConfig(
            frequency=self.resolve_frequency(drive_frequency),
            coupling=self.coupling if coupling is None else coupling,
            phase=self.phase,
        )


class SweepSpec(BaseModel):
    """Grid of (omega_cav / omega0, eps_cav) points for total-intensity sweeps."""

    model_config = {"frozen": True, "extra": "forbid"}

    omega_ratios: list[float] = Field(
        default_factory=lambda: [5.45, 6.45, 7.45], min_length=1
    )
    eps_values: list[float] = Field(
        default_factory=lambda: [round(0.01 * i, 2) for i in range(31)], min_length=1
    )
    phase: float = 0.0


class PulseSpec(BaseModel):
    """Attosecond pulse synthesis settings."""

    model_config = {"frozen": True, "extra": "forbid"}

    window_min_order: float = 26
    samples_per_period: int = Field(default=4096, gt=0)
    num_periods: int = Field(default=4, gt=0)
    keep_phase: bool = False
    block_odd: bool = False


class CacheSpec(BaseModel):
    """Eigenstate cache policy."""

    model_config = {"frozen": True, "extra": "forbid"}

    enabled: bool = True
    directory: Path | None = None


class RunConfig(BaseModel):
    """Complete, validated configuration of a run."""

    model_config = {"frozen": True, "extra": "forbid"}

    atom: AtomModel = Field(
        default_factory=lambda: AtomModel(target_ground_energy=-0.4458)
    )
    grid: SpatialGrid = Field(default_factory=SpatialGrid)
    scaling: ComplexScalingConfig = Field(default_factory=ComplexScalingConfig)
    trajectory_thetas: list[float] = Field(
        default_factory=lambda: [0.10, 0.125, 0.15, 0.175, 0.20]
    )
    drive: DriveField = Field(default_factory=DriveField)
    basis: ChannelRange = Field(default_factory=ChannelRange)
    solver: SolverOptions = Field(default_factory=SolverOptions)
    harmonics: HarmonicsSpec = Field(default_factory=HarmonicsSpec)
    cavities: list[CavitySpec] = Field(default_factory=list)
    sweep: SweepSpec = Field(default_factory=SweepSpec)
    pulse: PulseSpec = Field(default_factory=PulseSpec)
    propagation: PropagationConfig = Field(default_factory=PropagationConfig)
    output_dir: Path = Path("results")
    cache: CacheSpec = Field(default_factory=CacheSpec)
    threads: int = Field(default=1, ge=1)

    @field_validator("drive", mode="before")
    @classmethod
    def _convert_drive_units(cls, value: Any) -> Any:  # noqa: ANN401
        if not isinstance(value, dict):
            return value
        value = dict(value)
        conversions = (
            ("wavelength_nm", "frequency", lambda nm: _NM_TO_AU / nm),
            ("intensity_W_cm2", "amplitude", lambda i: (i / _AU_INTENSITY) ** 0.5),
        )
        for key, target, convert in conversions:
            if key not in value:
                continue
            if target in value:
                raise ValueError(f"give either '{key}' or '{target}', not both")
            raw = value.pop(key)
            if not isinstance(raw, int | float) or raw <= 0:
                raise ValueError(f"'{key}' must be a positive number, got {raw!r}")
            value[target] = convert(raw)
        return value

    @model_validator(mode="after")
    def _check_consistency(self) -> RunConfig:
        problems = []
        omega0 = self.drive.frequency
        for i, spec in enumerate(self.cavities):
            ratio = spec.resolve_frequency(omega0) / omega0
            if abs(ratio - round(ratio)) <= COMMENSURABILITY_TOL:
                problems.append(
                    f"cavities[{i}]: omega_cav / omega0 = {ratio:g} is an integer"
                )
        for ratio in self.sweep.omega_ratios:
            if abs(ratio - round(ratio)) <= COMMENSURABILITY_TOL:
                problems.append(f"sweep.omega_ratios: {ratio:g} is an integer")
        span = self.basis.channel_max - self.basis.channel_min
        if self.harmonics.max_order > span:
            problems.append(
                f"harmonics.max_order {self.harmonics.max_order} exceeds the "
                f"channel span {span}"
            )
        thetas = self.trajectory_thetas
        if any(b <= a for a, b in zip(thetas, thetas[1:], strict=False)) or any(
            not 0 < t < np.pi / 4 for t in thetas
        ):
            problems.append(
                "trajectory_thetas must be strictly increasing inside (0, pi/4)"
            )
        if problems:
            raise ValueError("; ".join(problems))
        return self

    @property
    def floquet_basis(self) -> FloquetBasisSpec:
        """Channel basis on the configured grid."""
        return FloquetBasisSpec(
            channel_min=self.basis.channel_min,
            channel_max=self.basis.channel_max,
            grid=self.grid,
        )

    def digest(self) -> str:
        """SHA-256 over the physics sections; equal configs give equal digests."""
        payload = self.model_dump(mode="json", include=set(_PHYSICS_SECTIONS))
        encoded = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(encoded.encode()).hexdigest()


class FigurePanel(BaseModel):
    """Bundled reproduction target for one figure panel."""

    model_config = {"frozen": True, "extra": "forbid"}

    panel: str
    command: Literal["eigen", "spectrum", "cavity", "chain", "sweep", "pulse", "oracle"]
    description: str
    notes: list[str] = Field(default_factory=list)
    overrides: dict[str, Any] = Field(default_factory=dict)


def _deep_merge(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


_DRIVE_ALIASES = {"wavelength_nm": "frequency", "intensity_W_cm2": "amplitude"}


def _merge_layer(base: dict[str, Any], layer: dict[str, Any]) -> dict[str, Any]:
    """Deep-merge a configuration layer; a drive unit alias replaces its target."""
    drive = layer.get("drive")
    if isinstance(drive, dict) and isinstance(base.get("drive"), dict):
        inherited = dict(base["drive"])
        for alias, target in _DRIVE_ALIASES.items():
            if alias in drive:
                inherited.pop(target, None)
            if target in drive:
                inherited.pop(alias, None)
        base = {**base, "drive": inherited}
    return _deep_merge(base, layer)


def _read_yaml(path: Path) -> dict[str, Any]:
    try:
        data = yaml.safe_load(path.read_bytes())
    except yaml.YAMLError as exc:
        raise ConfigError(f"Could not parse {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping at the top level")
    return data


def load_panel(panel: str) -> FigurePanel:
    """Load a bundled figure-panel definition.

    Raises:
        ConfigError: If the panel is unknown or its file is invalid.
    """
    path = CAVITY_HHG_RESOURCES.figures.get(panel)
    if path is None:
        raise ConfigError(
            f"Unknown figure panel '{panel}'; choose one of "
            f"{', '.join(sorted(CAVITY_HHG_RESOURCES.figures))}"
        )
    try:
        return FigurePanel.model_validate(_read_yaml(path))
    except ValidationError as exc:
        raise ConfigError(f"Invalid figure panel file {path}:\n{exc}") from exc


def load_config(
    path: Path | str | None = None,
    panel: str | None = None,
    overrides: dict[str, Any] | None = None,
) -> RunConfig:
    """Build a run configuration from the bundled defaults and optional layers.

    Layers apply in order: bundled defaults, the YAML file at ``path``, the
    figure panel's overrides, then ``overrides``.

    Args:
        path: Optional YAML configuration file.
        panel: Optional figure panel whose overrides are applied.
        overrides: Optional mapping applied last.

    Returns:
        The validated configuration.

    Raises:
        ConfigError: Listing every validation problem at once.
    """
    data = _read_yaml(CAVITY_HHG_RESOURCES.default_config)
    if path is not None:
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"Configuration file {path} does not exist")
        data = _merge_layer(data, _read_yaml(path))
    if panel is not None:
        data = _merge_layer(data, load_panel(panel).overrides)
    if overrides:
        data = _merge_layer(data, overrides)
    try:
        config = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"Invalid configuration:\n{exc}") from exc
    _logger.debug(f"Loaded configuration with digest {config.digest()[:12]}")
    return config
