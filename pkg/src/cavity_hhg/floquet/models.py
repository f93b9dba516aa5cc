"""Models for the cw drive, the Floquet channel basis and Floquet eigenstates."""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

from cavity_hhg.atom.models import SpatialGrid

Symmetry = Literal["plus", "minus"]
StateLabel = Literal["FLg", "FLe", "other"]


class DriveField(BaseModel):
    """Monochromatic drive eps(t) = amplitude * cos(frequency * t)."""

    model_config = {"frozen": True, "extra": "forbid"}

    amplitude: float = Field(default=0.04, ge=0)
    frequency: float = Field(default=0.057, gt=0)

    @property
    def period(self) -> float:
        """Optical period T0 = 2 pi / omega0."""
        return 2 * np.pi / self.frequency


class FloquetBasisSpec(BaseModel):
    """Fourier channel range n in [channel_min, channel_max] on a spatial grid."""

    model_config = {"frozen": True, "extra": "forbid"}

    channel_min: int = Field(default=-40, le=0)
    channel_max: int = Field(default=40, ge=0)
    grid: SpatialGrid = Field(default_factory=SpatialGrid)

    @property
    def num_channels(self) -> int:
        """Number of Fourier channels."""
        return self.channel_max - self.channel_min + 1

    @property
    def dimension(self) -> int:
        """Dimension of the extended (channel x grid) space."""
        return self.num_channels * self.grid.points

    @property
    def channel_indices(self) -> np.ndarray:
        """Fourier indices n, in storage order."""
        return np.arange(self.channel_min, self.channel_max + 1)

    def widened(self, margin: int) -> FloquetBasisSpec:
        """Return the basis with ``margin`` extra channels on both sides."""
        return self.model_copy(
            update={
                "channel_min": self.channel_min - margin,
                "channel_max": self.channel_max + margin,
            }
        )


class FloquetEigenstate(BaseModel):
    """Resonance Floquet eigenstate with its channel functions.

    Attributes:
        quasienergy: Complex quasienergy E - i Gamma / 2 (a.u.).
        channels: Array of shape (num_channels, grid.points); row k holds the
            channel function of Fourier index ``channel_min + k``.
        channel_min: Fourier index of the first row of ``channels``.
        grid: Spatial grid of the channel functions.
        drive: Drive the state was computed for.
        symmetry: Dynamical symmetry label.
        symmetry_residual: Relative parity-alternation residual for ``symmetry``.
        target_overlap: c-product with the field-free seed in channel 0.
        label: Which targeted resonance this is.
    """

    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    quasienergy: complex
    channels: np.ndarray
    channel_min: int
    grid: SpatialGrid
    drive: DriveField
    symmetry: Symmetry
    symmetry_residual: float = 0.0
    target_overlap: complex = 1.0 + 0.0j
    label: StateLabel = "other"

    @model_validator(mode="after")
    def _check_channels(self) -> FloquetEigenstate:
        if self.channels.ndim != 2 or self.channels.shape[1] != self.grid.points:
            raise ValueError(
                f"Channel array has shape {self.channels.shape}, expected "
                f"(num_channels, {self.grid.points})"
            )
        if not self.channel_min <= 0 <= self.channel_max:
            raise ValueError(
                f"Channel range [{self.channel_min}, {self.channel_max}] must "
                "contain n = 0"
            )
        return self

    @property
    def channel_max(self) -> int:
        """Largest Fourier index held."""
        return self.channel_min + self.channels.shape[0] - 1

    @property
    def channel_indices(self) -> np.ndarray:
        """Fourier indices n, in storage order."""
        return np.arange(self.channel_min, self.channel_max + 1)

    @property
    def basis(self) -> FloquetBasisSpec:
        """Channel basis of this state."""
        return FloquetBasisSpec(
            channel_min=self.channel_min, channel_max=self.channel_max, grid=self.grid
        )

    @property
    def energy(self) -> float:
        """Real part E of the quasienergy."""
        return self.quasienergy.real

    @property
    def width(self) -> float:
        """Ionization width Gamma = -2 Im(quasienergy)."""
        return -2 * self.quasienergy.imag

    def channel(self, n: int) -> np.ndarray:
        """Return the channel function of Fourier index ``n``.

        Raises:
            IndexError: If ``n`` lies outside the stored channel range.
        """
        if not self.channel_min <= n <= self.channel_max:
            raise IndexError(
                f"Channel {n} outside stored range "
                f"[{self.channel_min}, {self.channel_max}]"
            )
        return self.channels[n - self.channel_min]
