"""Tests for the two-state polariton model and cavity spectra."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cavity_hhg.cavity import (
    CavityConfig,
    PolaritonPair,
    cavity_spectrum,
    coupling_dipole,
    odd_harmonic_amplitude,
    polariton_solve,
    side_harmonic_amplitudes,
)
from cavity_hhg.errors import (
    ChannelMismatchError,
    ConfigError,
    DegeneratePolaritonError,
    HarmonicOrderError,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from cavity_hhg.atom import SpatialGrid
    from cavity_hhg.floquet import FloquetEigenstate
    from cavity_hhg.spectrum import HarmonicSpectrum

OMEGA0 = 0.057


def _resonant_pair(shift: float, ratio: float = 1.45) -> PolaritonPair:
    """Zero-detuning pair with unit dipole whose shift is ``shift``."""
    eps_g = -0.5 - 1e-4j
    frequency = ratio * OMEGA0
    cavity = CavityConfig(frequency=frequency, coupling=shift * OMEGA0 / 2)
    return polariton_solve(eps_g, eps_g + frequency, cavity, 1.0, OMEGA0)


class TestPolaritonSolve:
    """Tests for the 2x2 diagonalization."""

    @settings(derandomize=True, max_examples=60, deadline=None)
    @given(
        ratio=st.floats(1.05, 1.95),
        coupling=st.floats(0.0, 1.0),
        gap=st.floats(0.05, 0.5),
        width=st.floats(0.0, 1e-2),
        dipole_re=st.floats(-3.0, 3.0),
        dipole_im=st.floats(-1.0, 1.0),
    )
    def test_eigen_residual(
        self,
        ratio: float,
        coupling: float,
        gap: float,
        width: float,
        dipole_re: float,
        dipole_im: float,
    ) -> None:
        """Test both polaritons solve the single-excitation eigenproblem."""
        eps_g = -0.5 - 1e-4j
        eps_e = eps_g + gap - 1j * width
        cavity = CavityConfig(frequency=ratio * OMEGA0, coupling=coupling)
        detuning = eps_g + cavity.frequency - eps_e
        assume(abs(detuning) > 1e-6 or coupling * abs(dipole_re) > 1e-6)
        pair = polariton_solve(
            eps_g, eps_e, cavity, complex(dipole_re, dipole_im), OMEGA0
        )
        scale = 1 + np.abs(pair.matrix).max()
        for branch, energy in ((1, pair.energy_upper), (-1, pair.energy_lower)):
            vector = pair.eigenvector(branch)
            residual = pair.matrix @ vector - energy * vector
            assert np.linalg.norm(residual) < 1e-12 * scale
        assert pair.splitting.real >= 0
        assert pair.energy_upper.real >= pair.energy_lower.real

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(
        coupling=st.floats(1e-3, 1.0),
        detuning=st.complex_numbers(max_magnitude=0.5),
        dipole=st.complex_numbers(min_magnitude=0.1, max_magnitude=3.0),
    )
    def test_weight_identities(
        self, coupling: float, detuning: complex, dipole: complex
    ) -> None:
        """Test the weights add to one and the side weight is half of FLe's."""
        eps_g = -0.5 + 0j
        cavity = CavityConfig(frequency=1.45 * OMEGA0, coupling=coupling)
        eps_e = eps_g + cavity.frequency - detuning
        pair = polariton_solve(eps_g, eps_e, cavity, dipole, OMEGA0)
        scale = abs(pair.detuning) ** 2 + abs(pair.rabi) ** 2
        assume(abs(pair.splitting) ** 2 > 1e-4 * scale)
        weight_g, weight_e, weight_side = pair.weights()
        assert weight_g + weight_e == pytest.approx(1.0, abs=1e-9)
        assert weight_side == pytest.approx(weight_e / 2, rel=1e-12, abs=1e-15)
        mixing_sum = pair.mixing_upper**2 + pair.mixing_lower**2
        assert mixing_sum == pytest.approx(1.0, abs=1e-9)

    @settings(derandomize=True, max_examples=40, deadline=None)
    @given(
        first=st.floats(0.0, 1.0),
        second=st.floats(0.0, 1.0),
        detuning=st.floats(-0.1, 0.1),
        dipole=st.floats(0.1, 3.0),
    )
    def test_shift_monotonic_in_coupling(
        self, first: float, second: float, detuning: float, dipole: float
    ) -> None:
        """Test the shift grows with eps_cav for real detuning and dipole."""
        low, high = sorted((first, second))
        assume(abs(detuning) > 1e-9 or low > 1e-6)
        frequency = 1.45 * OMEGA0
        eps_e = -0.5 + frequency - detuning

        def _shift(coupling: float) -> float:
            cavity = CavityConfig(frequency=frequency, coupling=coupling)
            return polariton_solve(-0.5, eps_e, cavity, dipole, OMEGA0).shift

        assert _shift(low) <= _shift(high) + 1e-12

    def test_resonant_shift(self) -> None:
        """Test zero detuning gives shift 2 eps_cav d / omega0."""
        pair = _resonant_pair(0.5)
        assert pair.detuning == 0
        assert pair.shift == pytest.approx(0.5, rel=1e-12)
        assert pair.weights() == pytest.approx((0.5, 0.5, 0.25))

    def test_uncoupled(self) -> None:
        """Test eps_cav = 0 leaves the polaritons at the bare energies."""
        eps_g, eps_e = -0.5 - 1e-4j, -0.25 - 1e-3j
        cavity = CavityConfig(frequency=1.45 * OMEGA0)
        pair = polariton_solve(eps_g, eps_e, cavity, 1.2, OMEGA0)
        assert pair.weights() == (1, 0, 0)
        bare = sorted([eps_g + cavity.frequency, eps_e], key=lambda z: z.real)
        assert pair.energy_lower == pytest.approx(bare[0])
        assert pair.energy_upper == pytest.approx(bare[1])

    def test_degenerate(self) -> None:
        """Test zero detuning without coupling raises DegeneratePolaritonError."""
        frequency = 1.5 * OMEGA0
        cavity = CavityConfig(frequency=frequency)
        with pytest.raises(DegeneratePolaritonError, match="degenerate"):
            polariton_solve(-0.5, -0.5 + frequency, cavity, 1.0, OMEGA0)

    def test_integer_ratio(self) -> None:
        """Test a cavity at an integer harmonic of the drive is rejected."""
        cavity = CavityConfig(frequency=3 * OMEGA0, coupling=0.1)
        with pytest.raises(ConfigError, match="non-integer"):
            polariton_solve(-0.5, -0.3, cavity, 1.0, OMEGA0)


class TestCouplingDipole:
    """Tests for the FLg-FLe coupling dipole."""

    def test_symmetric(self, flg: FloquetEigenstate, fle: FloquetEigenstate) -> None:
        """Test d_ge = d_eg and opposite symmetries couple."""
        d_ge = coupling_dipole(flg, fle)
        assert coupling_dipole(fle, flg) == pytest.approx(d_ge, rel=1e-12)
        assert abs(d_ge) > 0.1

    def test_mismatch(
        self,
        state_factory: Callable[..., FloquetEigenstate],
        small_grid: SpatialGrid,
    ) -> None:
        """Test states on different channel ranges are rejected."""
        narrow = state_factory(small_grid, channel_min=-1, channel_max=1)
        wide = state_factory(small_grid, channel_min=-2, channel_max=2)
        with pytest.raises(ChannelMismatchError):
            coupling_dipole(narrow, wide)


class TestCavitySpectrum:
    """Tests for the composed cavity spectrum."""

    @pytest.fixture
    def spectra(
        self, spectrum_factory: Callable[..., HarmonicSpectrum]
    ) -> tuple[HarmonicSpectrum, HarmonicSpectrum]:
        """Synthetic FLg and FLe spectra up to order 5."""
        return spectrum_factory(5), spectrum_factory(5, scale=0.5)

    def test_uncoupled_is_free(
        self, spectra: tuple[HarmonicSpectrum, HarmonicSpectrum]
    ) -> None:
        """Test eps_cav = 0 reduces to the FLg spectrum."""
        a_g, a_e = spectra
        cavity = CavityConfig(frequency=1.45 * OMEGA0)
        pair = polariton_solve(-0.5, -0.3, cavity, 1.0, OMEGA0)
        result = cavity_spectrum(pair, a_g, a_e, max_order=5)
        np.testing.assert_array_equal(result.composed.orders, a_g.orders)
        np.testing.assert_array_equal(result.composed.amplitudes, a_g.amplitudes)
        assert np.all(result.side_part.amplitudes == 0)

    def test_half_shift_support(
        self, spectra: tuple[HarmonicSpectrum, HarmonicSpectrum]
    ) -> None:
        """Test a shift of 0.5 puts side harmonics on every half-integer."""
        a_g, a_e = spectra
        result = cavity_spectrum(_resonant_pair(0.5), a_g, a_e, max_order=5)
        np.testing.assert_allclose(
            result.side_part.orders, np.arange(0.5, 6.0, 1.0), atol=1e-12
        )
        np.testing.assert_allclose(
            result.composed.orders, np.arange(0.5, 6.0, 0.5), atol=1e-12
        )
        assert result.composed.source == "cavity"

    def test_unit_shift_merges_on_integers(
        self, spectra: tuple[HarmonicSpectrum, HarmonicSpectrum]
    ) -> None:
        """Test a shift of 1 lands side harmonics on even integers."""
        a_g, a_e = spectra
        composed = cavity_spectrum(_resonant_pair(1.0), a_g, a_e, 5).composed
        orders = composed.orders
        np.testing.assert_allclose(orders[orders > 0.5], np.arange(1, 7), atol=1e-9)
        tags = set(composed.find(2.0).tag.split("+"))
        assert tags == {"even", "side_plus", "side_minus"}

    def test_side_amplitude(
        self, spectra: tuple[HarmonicSpectrum, HarmonicSpectrum]
    ) -> None:
        """Test kappa, side weight and the FLg-FLe difference."""
        a_g, a_e = spectra
        plus, minus = side_harmonic_amplitudes(_resonant_pair(0.5), a_g, a_e, 3)
        difference = 1 / 3 - 1 / 6
        assert plus.amplitude == pytest.approx((3.5 / 3) ** 2 * 0.25 * difference)
        assert minus.amplitude == pytest.approx((2.5 / 3) ** 2 * 0.25 * difference)
        assert (plus.tag, minus.tag) == ("side_plus", "side_minus")

    def test_side_needs_odd_order(
        self, spectra: tuple[HarmonicSpectrum, HarmonicSpectrum]
    ) -> None:
        """Test side harmonics around even orders are refused."""
        a_g, a_e = spectra
        with pytest.raises(HarmonicOrderError, match="positive odd order"):
            side_harmonic_amplitudes(_resonant_pair(0.5), a_g, a_e, 2)

    def test_odd_weighting(
        self, spectra: tuple[HarmonicSpectrum, HarmonicSpectrum]
    ) -> None:
        """Test the integer-order amplitude averages FLg and FLe at resonance."""
        a_g, a_e = spectra
        entry = odd_harmonic_amplitude(_resonant_pair(0.5), a_g, a_e, 1)
        assert entry.amplitude == pytest.approx(0.75)
        assert entry.tag == "odd"

    def test_missing_order(
        self, spectra: tuple[HarmonicSpectrum, HarmonicSpectrum]
    ) -> None:
        """Test orders beyond the input spectra raise HarmonicOrderError."""
        a_g, a_e = spectra
        with pytest.raises(HarmonicOrderError):
            cavity_spectrum(_resonant_pair(0.5), a_g, a_e, max_order=7)
