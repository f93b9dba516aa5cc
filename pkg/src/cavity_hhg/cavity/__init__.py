"""Cavity polaritons, cavity harmonic spectra, chains and sweeps."""

from cavity_hhg.cavity.chain import (
    CavityChain,
    SpectralFilter,
    SweepRow,
    apply_filter,
    chain_members,
    chain_spectrum,
    compose_spectra,
    find_coupling_for_shift,
    sweep_total_intensity,
)
from cavity_hhg.cavity.models import CavityConfig, CavitySpectrum, PolaritonPair
from cavity_hhg.cavity.polariton import (
    cavity_spectrum,
    coupling_dipole,
    odd_harmonic_amplitude,
    polariton_solve,
    side_harmonic_amplitudes,
)

__all__ = [
    "CavityChain",
    "CavityConfig",
    "CavitySpectrum",
    "PolaritonPair",
    "SpectralFilter",
    "SweepRow",
    "apply_filter",
    "cavity_spectrum",
    "chain_members",
    "chain_spectrum",
    "compose_spectra",
    "coupling_dipole",
    "find_coupling_for_shift",
    "odd_harmonic_amplitude",
    "polariton_solve",
    "side_harmonic_amplitudes",
    "sweep_total_intensity",
]
