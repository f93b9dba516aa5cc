"""Harmonic spectra: amplitude models, merging and cavity-free amplitudes."""

from cavity_hhg.spectrum.harmonics import harmonic_amplitude, spectrum, total_intensity
from cavity_hhg.spectrum.models import (
    MERGE_TOL,
    HarmonicAmplitude,
    HarmonicSpectrum,
    merge_entries,
)

__all__ = [
    "MERGE_TOL",
    "HarmonicAmplitude",
    "HarmonicSpectrum",
    "harmonic_amplitude",
    "merge_entries",
    "spectrum",
    "total_intensity",
]
