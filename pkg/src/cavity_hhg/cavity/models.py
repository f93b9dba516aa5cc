"""Cavity, polariton and cavity-spectrum models."""

from __future__ import annotations

import numpy as np
from pydantic import BaseModel, Field

from cavity_hhg.errors import ConfigError
from cavity_hhg.spectrum.models import HarmonicSpectrum

COMMENSURABILITY_TOL = 1e-9


class CavityConfig(BaseModel):
    """Single-mode cavity.

    Attributes:
        frequency: Cavity mode angular frequency omega_cav (a.u.).
        coupling: Cavity-atom coupling strength eps_cav (a.u.).
        phase: Relative phase (radians) applied when this cavity's field is
            added coherently to others in a chain.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    frequency: float = Field(gt=0)
    coupling: float = Field(default=0.0, ge=0)
    phase: float = 0.0

    def frequency_ratio(self, drive_frequency: float) -> float:
        """omega_cav / omega0."""
        return self.frequency / drive_frequency

    def check_commensurability(self, drive_frequency: float) -> None:
        """Reject cavities resonant with an integer harmonic of the drive.

        Raises:
            ConfigError: If omega_cav / omega0 is an integer within 1e-9.
        """
        ratio = self.frequency_ratio(drive_frequency)
        if abs(ratio - round(ratio)) <= COMMENSURABILITY_TOL:
            raise ConfigError(
                f"Cavity frequency {self.frequency} is {round(ratio)} x omega0; "
                "omega_cav / omega0 must be non-integer"
            )


class PolaritonPair(BaseModel):
    """Upper and lower Floquet polaritons of one cavity.

    The single-excitation basis is (FLg with one photon, FLe with none); the
    two polaritons diagonalize

        [[eps_g + omega_cav, g], [g, eps_e]],  g = eps_cav * d_ge.

    Attributes:
        eps_g: FLg quasienergy.
        eps_e: FLe quasienergy.
        cavity: Cavity this pair belongs to.
        drive_frequency: omega0.
        dipole: Coupling dipole d_ge between FLg and FLe.
        detuning: delta = eps_g + omega_cav - eps_e.
        rabi: Omega0 = 2 * eps_cav * d_ge.
        splitting: Omega = sqrt(delta**2 + Omega0**2), Re(Omega) >= 0.
        energy_upper: eps_+ (larger real part).
        energy_lower: eps_-.
        mixing_upper: a_+ = sqrt((Omega + delta) / (2 Omega)).
        mixing_lower: a_- = sqrt((Omega - delta) / (2 Omega)).
        shift: Side-harmonic displacement Re(Omega) / omega0.
        linewidth_shift: Im(Omega) / omega0, a broadening diagnostic.
    """

    model_config = {"frozen": True}

    eps_g: complex
    eps_e: complex
    cavity: CavityConfig
    drive_frequency: float = Field(gt=0)
    dipole: complex
    detuning: complex
    rabi: complex
    splitting: complex
    energy_upper: complex
    energy_lower: complex
    mixing_upper: complex
    mixing_lower: complex
    shift: float
    linewidth_shift: float

    @property
    def coupling_element(self) -> complex:
        """Off-diagonal element g = eps_cav * d_ge (half the Rabi frequency)."""
        return self.rabi / 2

    @property
    def matrix(self) -> np.ndarray:
        """The 2x2 single-excitation Floquet matrix."""
        g = self.coupling_element
        return np.array(
            [[self.eps_g + self.cavity.frequency, g], [g, self.eps_e]],
            dtype=np.complex128,
        )

    def eigenvector(self, branch: int) -> np.ndarray:
        """Unit-norm eigenvector of ``matrix`` for branch +1 (upper) or -1 (lower)."""
        energy = self.energy_upper if branch > 0 else self.energy_lower
        (h11, g), (_, h22) = self.matrix
        first = np.array([g, energy - h11])
        second = np.array([energy - h22, g])
        vector = (
            first if np.linalg.norm(first) >= np.linalg.norm(second) else second
        )
        return vector / np.linalg.norm(vector)

    def weights(self) -> tuple[complex, complex, complex]:
        """Amplitude weights (FLg odd, FLe odd, side) of the cavity spectrum.

        Returns:
            ((Omega**2 + delta**2) / (2 Omega**2),
            (Omega**2 - delta**2) / (2 Omega**2),
            (Omega**2 - delta**2) / (4 Omega**2)) with Omega**2 - delta**2
            written as Omega0**2; exactly (1, 0, 0) without coupling.
        """
        if self.rabi == 0:
            return 1 + 0j, 0j, 0j
        delta_sq = self.detuning**2
        rabi_sq = self.rabi**2
        omega_sq = delta_sq + rabi_sq
        return (
            (omega_sq + delta_sq) / (2 * omega_sq),
            rabi_sq / (2 * omega_sq),
            rabi_sq / (4 * omega_sq),
        )

    def kappa(self, order: float) -> tuple[float, float]:
        """Side prefactors ((M + dM) / M)**2 and ((M - dM) / M)**2."""
        return (
            ((order + self.shift) / order) ** 2,
            ((order - self.shift) / order) ** 2,
        )


class CavitySpectrum(BaseModel):
    """Cavity harmonic spectrum split into its parts.

    Attributes:
        odd_part: Harmonics at integer orders M.
        side_part: Side harmonics at M +/- shift around odd M.
        composed: Both parts merged, coincident orders summed.
        pair: Polariton pair the spectrum was built from.
    """

    model_config = {"frozen": True}

    odd_part: HarmonicSpectrum
    side_part: HarmonicSpectrum
    composed: HarmonicSpectrum
    pair: PolaritonPair
