"""Tests for attosecond pulse-train synthesis."""

from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError

from cavity_hhg.cavity import SpectralFilter, apply_filter
from cavity_hhg.errors import (
    EmptyWindowError,
    PeakDetectionError,
    UndersamplingError,
)
from cavity_hhg.pulse import (
    PulseTrain,
    autocorrelation,
    dominant_period,
    measure_spacing,
    synthesize_train,
)
from cavity_hhg.spectrum import HarmonicAmplitude, HarmonicSpectrum

WINDOW = 26
SAMPLES = 1024


def _spectrum(amplitudes: dict[float, complex]) -> HarmonicSpectrum:
    entries = tuple(
        HarmonicAmplitude(order=order, amplitude=amplitudes[order])
        for order in sorted(amplitudes)
    )
    return HarmonicSpectrum(entries=entries, drive_frequency=0.057)


def _odd(max_order: int = 45, scale: float = 1.0) -> dict[float, complex]:
    return {float(m): scale if m % 2 else 0.0 for m in range(1, max_order + 1)}


def _half_integers(max_order: int = 45, scale: float = 0.5) -> dict[float, complex]:
    return {m + 0.5: scale for m in range(max_order + 1)}


class TestSynthesizeTrain:
    """Tests for time-domain synthesis and peak spacing."""

    def test_odd_harmonics_twice_per_cycle(self) -> None:
        """Test odd-only harmonics give two pulses per optical cycle."""
        train = synthesize_train(_spectrum(_odd()), WINDOW, SAMPLES, 4)
        spacing, deviation = measure_spacing(train)
        assert spacing == pytest.approx(0.5)
        assert deviation < 1e-9
        np.testing.assert_allclose(train.peaks, np.arange(0, 4, 0.5))

    def test_all_integers_once_per_cycle(self) -> None:
        """Test a full integer comb gives one pulse per cycle."""
        comb = {float(m): 1.0 / m for m in range(1, 46)}
        train = synthesize_train(_spectrum(comb), WINDOW, SAMPLES, 4)
        spacing, _ = measure_spacing(train)
        assert spacing == pytest.approx(1.0)

    def test_blocked_odd_half_integers(self) -> None:
        """Test half-integer side harmonics alone give one pulse per cycle."""
        spec = apply_filter(
            _spectrum(_odd() | _half_integers()), SpectralFilter.odd_harmonics(45)
        )
        train = synthesize_train(spec, WINDOW, SAMPLES, 4)
        spacing, deviation = measure_spacing(train)
        assert spacing == pytest.approx(1.0)
        assert deviation < 1e-9

    def test_sidebands_double_the_period(self) -> None:
        """Test odd plus half-integer harmonics repeat every two cycles."""
        train = synthesize_train(
            _spectrum(_odd() | _half_integers()), WINDOW, SAMPLES, 4
        )
        assert dominant_period(train) == pytest.approx(2.0)

    def test_odd_dominant_period(self) -> None:
        """Test the odd-only train repeats every half cycle."""
        train = synthesize_train(_spectrum(_odd()), WINDOW, SAMPLES, 4)
        assert dominant_period(train) == pytest.approx(0.5)

    def test_window_excludes_low_orders(self) -> None:
        """Test orders at or below the window edge do not contribute."""
        low_only = _spectrum({float(m): 1.0 for m in range(1, 27)} | {27.0: 0.0})
        train = synthesize_train(low_only, WINDOW, SAMPLES, 1)
        np.testing.assert_array_equal(train.intensity, 0.0)

    def test_phase_handling(self) -> None:
        """Test spectral phases are ignored unless requested."""
        rotated = _spectrum({m: 1j * a for m, a in _odd().items()})
        flat = synthesize_train(rotated, WINDOW, SAMPLES, 1)
        phased = synthesize_train(rotated, WINDOW, SAMPLES, 1, keep_phase=True)
        assert flat.intensity[0] == pytest.approx(flat.intensity.max())
        assert phased.intensity[0] == pytest.approx(0.0, abs=1e-20)

    def test_mean_intensity_matches_spectral_power(self) -> None:
        """Test the time-averaged intensity is half the windowed spectral power."""
        comb = {
            m: a * np.exp(0.3j * m) / m
            for m, a in (_odd() | _half_integers()).items()
        }
        train = synthesize_train(_spectrum(comb), WINDOW, SAMPLES, 4)
        power = sum(abs(a) ** 2 for m, a in comb.items() if m > WINDOW)
        assert train.intensity.mean() == pytest.approx(0.5 * power, rel=1e-10)

    def test_linear_phase_delays_the_train(self) -> None:
        """Test a linear spectral phase delays every pulse by the same time."""
        delay = 0.125
        base = synthesize_train(_spectrum(_odd()), WINDOW, SAMPLES, 4, keep_phase=True)
        ramped = {m: a * np.exp(-2j * np.pi * m * delay) for m, a in _odd().items()}
        delayed = synthesize_train(
            _spectrum(ramped), WINDOW, SAMPLES, 4, keep_phase=True
        )
        np.testing.assert_allclose(delayed.peaks, base.peaks + delay)
        np.testing.assert_allclose(
            delayed.intensity,
            np.roll(base.intensity, int(delay * SAMPLES)),
            atol=1e-8,
        )

    def test_sampling(self) -> None:
        """Test sample times span whole periods starting at zero."""
        train = synthesize_train(_spectrum(_odd()), WINDOW, 128, 3)
        assert train.times.size == 384
        assert train.times[0] == 0.0
        assert train.time_step == pytest.approx(1 / 128)


class TestErrors:
    """Tests for synthesis failures."""

    def test_empty_window(self) -> None:
        """Test a window above every order raises EmptyWindowError."""
        with pytest.raises(EmptyWindowError, match="No harmonics above order 100"):
            synthesize_train(_spectrum(_odd()), 100, SAMPLES, 4)

    def test_undersampling(self) -> None:
        """Test too few samples for the highest order raise UndersamplingError."""
        with pytest.raises(UndersamplingError, match="cannot resolve order 45"):
            synthesize_train(_spectrum(_odd()), WINDOW, 90, 4)

    def test_single_peak(self) -> None:
        """Test one period of a full comb has too few peaks for a spacing."""
        comb = {float(m): 1.0 for m in range(1, 46)}
        train = synthesize_train(_spectrum(comb), WINDOW, SAMPLES, 1)
        with pytest.raises(PeakDetectionError, match="at least 2"):
            measure_spacing(train)

    def test_train_shape(self) -> None:
        """Test pulse trains check their sample count."""
        with pytest.raises(ValidationError, match="needs 8 samples"):
            PulseTrain(
                times=np.zeros(4),
                intensity=np.zeros(4),
                peaks=np.zeros(0),
                samples_per_period=4,
                num_periods=2,
            )


class TestAutocorrelation:
    """Tests for the intensity autocorrelation."""

    def test_normalized(self) -> None:
        """Test the autocorrelation is 1 at zero lag and symmetric."""
        train = synthesize_train(_spectrum(_odd()), WINDOW, 256, 2)
        lags, values = autocorrelation(train)
        assert values[0] == pytest.approx(1.0)
        assert lags[1] == pytest.approx(1 / 256)
        np.testing.assert_allclose(values[1:], values[1:][::-1], atol=1e-12)
