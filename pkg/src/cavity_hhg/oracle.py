"""Time-dependent Schrodinger propagation used to cross-check Floquet spectra.

The driven atom is propagated on the unscaled grid with a Strang split-step
Fourier scheme. A quadratic complex absorbing potential removes outgoing flux at
both grid edges, so this method shares no machinery with complex scaling. The
dipole acceleration follows from the Ehrenfest theorem and its windowed Fourier
transform gives a spectrum sampled on a fine order grid.
"""

from __future__ import annotations

import logging
import math
from typing import NamedTuple

import numpy as np
from pydantic import BaseModel, Field

from cavity_hhg.atom.hamiltonian import build_potential, solve_field_free
from cavity_hhg.atom.models import AtomModel, ComplexScalingConfig, SpatialGrid
from cavity_hhg.errors import OverIonizationError, ResolutionError
from cavity_hhg.floquet.models import DriveField
from cavity_hhg.spectrum.models import HarmonicAmplitude, HarmonicSpectrum

_logger = logging.getLogger(__name__)

__all__ = [
    "PropagationConfig",
    "PropagationRecord",
    "SplitStepPropagator",
    "acceleration_spectrum",
    "propagate_and_spectrum",
]

_MAX_STEP_PHASE = 0.02
_MAX_NORM_LOSS = 0.9


class PropagationConfig(BaseModel):
    """Time propagation settings.

    Attributes:
        time_step: Requested time step (a.u.); shortened so a period holds an
            integer number of steps.
        num_periods: Optical periods analysed after the ramp.
        ramp_periods: Optical periods of sin**2 turn-on.
        absorber_width: Width of the absorbing layer at each edge (a.u.).
        absorber_strength: Peak strength of the absorbing potential.
        max_order: Highest harmonic order reported.
        oversample: Zero-padding factor of the Fourier transform.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    time_step: float = Field(default=0.05, gt=0)
    num_periods: int = Field(default=24, ge=1)
    ramp_periods: int = Field(default=3, ge=0)
    absorber_width: float = Field(default=40.0, gt=0)
    absorber_strength: float = Field(default=0.05, ge=0)
    max_order: float = Field(default=60.0, gt=0)
    oversample: int = Field(default=8, ge=1)


class PropagationRecord(NamedTuple):
    """Time series recorded over the analysis interval."""

    times: np.ndarray
    acceleration: np.ndarray
    norm: np.ndarray


class SplitStepPropagator:
    """Strang split-step propagator for the driven atom with absorbing edges."""

    def __init__(
        self,
        atom: AtomModel,
        grid: SpatialGrid,
        drive: DriveField,
        config: PropagationConfig,
    ) -> None:
        """Set up operators and check the resolution guards.

        Raises:
            ResolutionError: If time_step * omega0 >= 0.02 or the absorbing
                layer is not narrower than half the grid extent.
        """
        if config.time_step * drive.frequency >= _MAX_STEP_PHASE:
            raise ResolutionError(
                f"time_step * omega0 = {config.time_step * drive.frequency:.3g} "
                f"must stay below {_MAX_STEP_PHASE}"
            )
        if config.absorber_width >= grid.extent / 2:
            raise ResolutionError(
                f"Absorber width {config.absorber_width} must be below half the "
                f"grid extent ({grid.extent / 2})"
            )
        self.atom = atom
        self.grid = grid
        self.drive = drive
        self.config = config
        self.steps_per_period = math.ceil(drive.period / config.time_step)
        self.dt = drive.period / self.steps_per_period

        x = grid.coordinates
        self.x = x
        self.potential = build_potential(atom, grid, ComplexScalingConfig(theta=0)).real
        # -dV/dx of the soft-core potential
        self.force = -atom.softcore_depth * x / (x**2 + atom.softcore_width) ** 1.5
        inner = grid.extent - config.absorber_width
        depth = np.clip((np.abs(x) - inner) / config.absorber_width, 0, None)
        self.absorber = config.absorber_strength * depth**2
        momentum = 2 * np.pi * np.fft.fftfreq(grid.points, d=grid.spacing)
        self.kinetic = 0.5 * momentum**2

    def field(self, t: float) -> float:
        """Drive field with a sin**2 turn-on over the ramp periods."""
        ramp = self.config.ramp_periods * self.drive.period
        envelope = np.sin(np.pi * t / (2 * ramp)) ** 2 if t < ramp else 1.0
        return float(self.drive.amplitude * envelope * np.cos(self.drive.frequency * t))

    def _half_potential(self, psi: np.ndarray, t: float, dt: float) -> np.ndarray:
        total = self.potential + self.x * self.field(t) - 1j * self.absorber
        return psi * np.exp(-0.5j * dt * total)

    def step(self, psi: np.ndarray, t: float, dt: float) -> np.ndarray:
        """Advance ``psi`` from ``t`` to ``t + dt``; ``dt`` may be negative.

        ``step(step(psi, t, dt), t + dt, -dt)`` recovers ``psi``.
        """
        psi = self._half_potential(psi, t, dt)
        psi = np.fft.ifft(np.exp(-1j * dt * self.kinetic) * np.fft.fft(psi))
        return self._half_potential(psi, t + dt, dt)

    def survival_norm(self, psi: np.ndarray) -> float:
        """Norm <psi|psi> on the grid."""
        return float(np.sum(np.abs(psi) ** 2) * self.grid.spacing)

    def acceleration(self, psi: np.ndarray, t: float) -> float:
        """Ehrenfest acceleration <-dV/dx> - eps(t) <psi|psi>."""
        density = np.abs(psi) ** 2 * self.grid.spacing
        return float(density @ self.force - self.field(t) * density.sum())

    def initial_state(self) -> np.ndarray:
        """Field-free ground state on the unscaled grid."""
        unscaled = ComplexScalingConfig(theta=0)
        ground = solve_field_free(self.atom, self.grid, unscaled, count=1)[0]
        return ground.wavefunction.astype(np.complex128)

    def propagate(self, psi: np.ndarray | None = None) -> PropagationRecord:
        """Propagate through the ramp and record the analysis interval.

        Raises:
            OverIonizationError: If more than 90% of the norm is absorbed.
        """
        psi = self.initial_state() if psi is None else psi
        dt = self.dt
        ramp_steps = self.config.ramp_periods * self.steps_per_period
        record_steps = self.config.num_periods * self.steps_per_period
        for k in range(ramp_steps):
            psi = self.step(psi, k * dt, dt)
        times = (ramp_steps + np.arange(record_steps)) * dt
        acceleration = np.empty(record_steps)
        norm = np.empty(record_steps)
        for k, t in enumerate(times):
            acceleration[k] = self.acceleration(psi, t)
            norm[k] = self.survival_norm(psi)
            psi = self.step(psi, t, dt)
        loss = 1 - norm[-1]
        if loss > _MAX_NORM_LOSS:
            raise OverIonizationError(
                f"Norm loss {loss:.1%} exceeds {_MAX_NORM_LOSS:.0%}; lower the field "
                "or shorten the propagation"
            )
        _logger.info(
            f"Propagated {ramp_steps + record_steps} steps of {dt:.4g} a.u.; "
            f"final norm {norm[-1]:.6f}"
        )
        return PropagationRecord(times=times, acceleration=acceleration, norm=norm)


def acceleration_spectrum(
    record: PropagationRecord, drive: DriveField, config: PropagationConfig
) -> HarmonicSpectrum:
    """sin**4-windowed Fourier transform of the recorded acceleration.

    Amplitudes are divided by the window sum so that a steady harmonic
    component A exp(-i M omega0 t) appears with magnitude |A| at order M.
    """
    n = record.times.size
    window = np.sin(np.pi * np.arange(n) / n) ** 4
    padded = config.oversample * n
    dt = record.times[1] - record.times[0]
    transform = np.fft.rfft(window * record.acceleration, n=padded) / window.sum()
    orders = 2 * np.pi * np.fft.rfftfreq(padded, d=dt) / drive.frequency
    keep = (orders > 0) & (orders <= config.max_order)
    # rfft picks the exp(+i w t) component; its conjugate is the exp(-i w t) one
    entries = tuple(
        HarmonicAmplitude(order=float(o), amplitude=complex(a), tag="tdse")
        for o, a in zip(orders[keep], np.conj(transform[keep]), strict=True)
    )
    return HarmonicSpectrum(
        entries=entries, drive_frequency=drive.frequency, source="tdse"
    )


def propagate_and_spectrum(
    atom: AtomModel,
    grid: SpatialGrid,
    drive: DriveField,
    config: PropagationConfig | None = None,
) -> HarmonicSpectrum:
    """Propagate the driven atom and return its harmonic spectrum.

    Args:
        atom: Model atom parameters.
        grid: Unscaled spatial grid.
        drive: cw drive.
        config: Propagation settings.

    Returns:
        Spectrum on a fine grid of positive orders, source ``"tdse"``.
    """
    config = config or PropagationConfig()
    record = SplitStepPropagator(atom, grid, drive, config).propagate()
    return acceleration_spectrum(record, drive, config)
