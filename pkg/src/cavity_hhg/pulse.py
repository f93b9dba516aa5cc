"""Transform-limited attosecond pulse trains from a harmonic spectrum.

A spectral window (orders strictly above ``window_min_order``) is resynthesized
in time with all spectral phases set to zero; pulse peaks are local maxima of
|field|**2 above half the global maximum.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy import signal

from cavity_hhg.errors import EmptyWindowError, PeakDetectionError, UndersamplingError
from cavity_hhg.spectrum.models import HarmonicSpectrum

_logger = logging.getLogger(__name__)

__all__ = [
    "PulseTrain",
    "autocorrelation",
    "dominant_period",
    "measure_spacing",
    "synthesize_train",
]

PEAK_HEIGHT_FRACTION = 0.5
PEAK_MIN_SEPARATION = 0.05  # in units of T0
_TIE_TOL = 1e-9


class PulseTrain(BaseModel):
    """Sampled |emitted field|**2 over an integer number of optical periods.

    Attributes:
        times: Uniform sample times in units of T0, starting at 0.
        intensity: |field|**2 at ``times``.
        peaks: Detected peak times in units of T0.
        samples_per_period: Samples per optical period T0.
        num_periods: Number of optical periods spanned.
    """

    model_config = {"frozen": True, "arbitrary_types_allowed": True}

    times: np.ndarray
    intensity: np.ndarray
    peaks: np.ndarray
    samples_per_period: int = Field(gt=0)
    num_periods: int = Field(gt=0)

    @model_validator(mode="after")
    def _check_samples(self) -> PulseTrain:
        expected = self.samples_per_period * self.num_periods
        if self.times.shape != (expected,) or self.intensity.shape != (expected,):
            raise ValueError(
                f"Pulse train needs {expected} samples, got times "
                f"{self.times.shape} and intensity {self.intensity.shape}"
            )
        if np.any(self.intensity < 0):
            raise ValueError("Pulse train intensity must be nonnegative")
        return self

    @property
    def time_step(self) -> float:
        """Sample spacing in units of T0."""
        return 1 / self.samples_per_period


def _field(
    orders: np.ndarray, amplitudes: np.ndarray, times: np.ndarray, *, keep_phase: bool
) -> np.ndarray:
    phases = np.angle(amplitudes) if keep_phase else np.zeros(orders.size)
    arguments = 2 * np.pi * np.outer(times, orders) + phases
    return np.cos(arguments) @ np.abs(amplitudes)


def synthesize_train(
    spec: HarmonicSpectrum,
    window_min_order: float = 26,
    samples_per_period: int = 4096,
    num_periods: int = 4,
    *,
    keep_phase: bool = False,
) -> PulseTrain:
    """Synthesize the pulse train of the spectral window above ``window_min_order``.

    Args:
        spec: Harmonic spectrum.
        window_min_order: Entries with order strictly above this are kept.
        samples_per_period: Time samples per T0.
        num_periods: Optical periods synthesized.
        keep_phase: Keep the computed spectral phases instead of zeroing them.

    Returns:
        The pulse train with detected peaks.

    Raises:
        EmptyWindowError: If no entry lies above ``window_min_order``.
        UndersamplingError: If ``samples_per_period`` is not above twice the
            highest windowed order.
    """
    window = [e for e in spec.entries if e.order > window_min_order]
    if not window:
        raise EmptyWindowError(
            f"No harmonics above order {window_min_order} in a spectrum of "
            f"{len(spec)} entries"
        )
    orders = np.array([e.order for e in window])
    amplitudes = np.array([e.amplitude for e in window], dtype=np.complex128)
    required = 2 * orders.max()
    if samples_per_period <= required:
        raise UndersamplingError(
            f"{samples_per_period} samples per period cannot resolve order "
            f"{orders.max():g}; need more than {required:g}"
        )

    n_samples = samples_per_period * num_periods
    times = np.arange(n_samples) / samples_per_period
    # Peaks within one minimum separation of the window edges need neighbours
    margin = math.ceil(PEAK_MIN_SEPARATION * samples_per_period)
    extended = np.arange(-margin, n_samples + margin) / samples_per_period
    extended_intensity = (
        _field(orders, amplitudes, extended, keep_phase=keep_phase) ** 2
    )
    intensity = extended_intensity[margin : margin + n_samples]
    found, _ = signal.find_peaks(
        extended_intensity,
        height=PEAK_HEIGHT_FRACTION * intensity.max(),
        distance=margin,
    )
    found = found - margin
    peaks = times[found[(found >= 0) & (found < n_samples)]]
    _logger.info(
        f"Synthesized {num_periods} T0 from {orders.size} harmonics in "
        f"({orders.min():g}, {orders.max():g}): {peaks.size} peaks"
    )
    return PulseTrain(
        times=times,
        intensity=intensity,
        peaks=peaks,
        samples_per_period=samples_per_period,
        num_periods=num_periods,
    )


def measure_spacing(train: PulseTrain) -> tuple[float, float]:
    """Median gap between detected peaks and its largest deviation (units of T0).

    Raises:
        PeakDetectionError: If fewer than two peaks were detected.
    """
    if train.peaks.size < 2:
        raise PeakDetectionError(
            f"Need at least 2 pulse peaks to measure a spacing, found "
            f"{train.peaks.size}"
        )
    gaps = np.diff(train.peaks)
    spacing = float(np.median(gaps))
    return spacing, float(np.abs(gaps - spacing).max())


def autocorrelation(train: PulseTrain) -> tuple[np.ndarray, np.ndarray]:
    """Circular intensity autocorrelation normalized to 1 at zero lag.

    Returns:
        Lags in units of T0 and the autocorrelation values.
    """
    spectrum = np.fft.rfft(train.intensity)
    values = np.fft.irfft(np.abs(spectrum) ** 2, n=train.intensity.size)
    lags = np.arange(train.intensity.size) / train.samples_per_period
    return lags, values / values[0]


def dominant_period(train: PulseTrain) -> float:
    """Lag (units of T0) of the strongest non-zero-lag autocorrelation maximum.

    Equal maxima resolve to the shortest lag.

    Raises:
        PeakDetectionError: If the autocorrelation has no non-zero-lag maximum.
    """
    lags, values = autocorrelation(train)
    half = values.size // 2
    wrapped = np.concatenate([values[-1:], values, values[:1]])
    found, _ = signal.find_peaks(wrapped)
    found = found - 1
    found = found[(found > 0) & (found <= half)]
    if found.size == 0:
        raise PeakDetectionError("Autocorrelation has no maximum at non-zero lag")
    strongest = values[found].max()
    best = found[values[found] >= strongest - _TIE_TOL * abs(strongest)][0]
    return float(lags[best])
