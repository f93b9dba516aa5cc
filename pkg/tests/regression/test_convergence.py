"""Convergence of the Floquet resonances with the numerical parameters."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest

from cavity_hhg.atom import SpatialGrid
from cavity_hhg.floquet import FloquetBasisSpec, solve_targeted, theta_trajectory
from cavity_hhg.spectrum import harmonic_amplitude

if TYPE_CHECKING:
    from cavity_hhg.atom import AtomModel, ComplexScalingConfig
    from cavity_hhg.floquet import DriveField, FloquetEigenstate, SolverOptions


class TestScalingAngle:
    """Quasienergies do not depend on the scaling angle."""

    def test_plateau(
        self, atom: AtomModel, drive: DriveField, options: SolverOptions
    ) -> None:
        """Test FLg stays put across a range of angles on a fine grid."""
        fine = SpatialGrid(extent=40.0, points=1601)
        basis = FloquetBasisSpec(channel_min=-6, channel_max=6, grid=fine)
        trajectory = theta_trajectory(
            atom, fine, drive, basis, [0.1, 0.15, 0.2], options=options, threads=3
        )
        energies = np.array([energy for _, energy in trajectory])
        assert np.ptp(energies.real) < 1e-6
        assert np.ptp(energies.imag) < 1e-6
        assert np.all(energies.imag <= 1e-8)


class TestChannelWidening:
    """Adding Fourier channels leaves converged results unchanged."""

    @pytest.fixture
    def wide(
        self,
        atom: AtomModel,
        scaling: ComplexScalingConfig,
        drive: DriveField,
        small_grid: SpatialGrid,
        options: SolverOptions,
    ) -> FloquetEigenstate:
        """FLg with channels -8..8."""
        basis = FloquetBasisSpec(channel_min=-8, channel_max=8, grid=small_grid)
        return solve_targeted(atom, scaling, drive, basis, options=options)

    def test_quasienergy(self, flg: FloquetEigenstate, wide: FloquetEigenstate) -> None:
        """Test the quasienergy is insensitive to the channel count."""
        assert abs(wide.quasienergy - flg.quasienergy) < 1e-7

    def test_third_harmonic(
        self, flg: FloquetEigenstate, wide: FloquetEigenstate
    ) -> None:
        """Test the third-harmonic amplitude is insensitive to the channel count."""
        narrow_amp = harmonic_amplitude(flg, 3)
        wide_amp = harmonic_amplitude(wide, 3)
        assert abs(wide_amp) == pytest.approx(abs(narrow_amp), rel=5e-3)
