"""Models for the one-dimensional model atom and its discretization."""

from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, model_validator

_QUARTER_PI = np.pi / 4


class AtomModel(BaseModel):
    """Soft-core single-active-electron atom, V(x) = -depth / sqrt(x**2 + width).

    Attributes:
        softcore_depth: Potential depth V0 (a.u.).
        softcore_width: Softening parameter a (a.u. length squared).
        target_ground_energy: Optional ground-state energy the depth is
            calibrated against (a.u.).
        calibration_tolerance: Accepted deviation from the target (a.u.).
    """

    model_config = {"frozen": True, "extra": "forbid"}

    softcore_depth: float = Field(default=1.0, gt=0)
    softcore_width: float = Field(default=2.0, gt=0)
    target_ground_energy: float | None = Field(default=None, lt=0)
    calibration_tolerance: float = Field(default=1e-4, gt=0)


class SpatialGrid(BaseModel):
    """Uniform grid on [-extent, extent], symmetric about x = 0."""

    model_config = {"frozen": True, "extra": "forbid"}

    extent: float = Field(default=200.0, gt=0)
    points: int = Field(default=1024, ge=3)

    @property
    def spacing(self) -> float:
        """Grid spacing 2 * extent / (points - 1)."""
        return 2 * self.extent / (self.points - 1)

    @property
    def coordinates(self) -> np.ndarray:
        """Grid points; entry i and entry points - 1 - i are mirror images."""
        return self.spacing * (np.arange(self.points) - (self.points - 1) / 2)


class ComplexScalingConfig(BaseModel):
    """Uniform complex scaling x -> x * exp(i * theta).

    ``theta = 0`` switches scaling off; resonance calculations use
    ``0 < theta < pi / 4``.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    theta: float = Field(default=0.15, ge=0, lt=_QUARTER_PI)

    @property
    def phase(self) -> complex:
        """Scaling factor exp(i * theta) applied to the coordinate."""
        return complex(np.exp(1j * self.theta))


class FieldFreeState(BaseModel):
    """c-normalized eigenstate of the (complex-scaled) field-free Hamiltonian.

    Attributes:
        energy: Complex eigenenergy (a.u.).
        wavefunction: Complex samples on ``grid``.
        parity: Parity under x -> -x.
        parity_residual: Relative deviation from exact parity.
        grid: Grid the wavefunction is sampled on.
    """

    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    energy: complex
    wavefunction: np.ndarray
    parity: Literal["even", "odd"]
    parity_residual: float = 0.0
    grid: SpatialGrid

    @model_validator(mode="after")
    def _check_samples(self) -> FieldFreeState:
        if self.wavefunction.shape != (self.grid.points,):
            raise ValueError(
                f"Wavefunction has shape {self.wavefunction.shape}, expected "
                f"({self.grid.points},)"
            )
        return self
