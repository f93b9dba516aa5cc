"""Cavity-free harmonic amplitudes from a single Floquet eigenstate.

The amplitude of harmonic M is the dipole-acceleration Fourier component

    A(M) = -(M omega0)**2 * sum_n (phi_{n+M} | x | phi_n)

where the bracket is the c-product over x with the unscaled coordinate as
weight, evaluated on the complex-scaled channel functions.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
from scipy import integrate

from cavity_hhg.errors import HarmonicOrderError
from cavity_hhg.spectrum.models import HarmonicAmplitude, HarmonicSpectrum

if TYPE_CHECKING:
    from cavity_hhg.floquet.models import FloquetEigenstate

__all__ = ["harmonic_amplitude", "spectrum", "total_intensity"]


def _channel_span(state: FloquetEigenstate) -> int:
    return state.channels.shape[0] - 1


def harmonic_amplitude(state: FloquetEigenstate, order: int) -> complex:
    """Complex amplitude of harmonic ``order`` emitted by ``state``.

    Args:
        state: Floquet eigenstate with populated channels.
        order: Integer harmonic order M.

    Returns:
        -(M omega0)**2 * sum_n (phi_{n+M} | x | phi_n); zero for M = 0.

    Raises:
        HarmonicOrderError: If |M| exceeds the stored channel span.
    """
    span = _channel_span(state)
    if abs(order) > span:
        raise HarmonicOrderError(
            f"Harmonic order {order} exceeds the channel span {span} of channels "
            f"[{state.channel_min}, {state.channel_max}]; widen the Floquet basis"
        )
    if order == 0:
        return 0j
    channels = state.channels
    if order > 0:
        upper, lower = channels[order:], channels[:-order]
    else:
        upper, lower = channels[:order], channels[-order:]
    x = state.grid.coordinates
    dipole = integrate.trapezoid(upper * x * lower, dx=state.grid.spacing, axis=-1)
    return complex(-((order * state.drive.frequency) ** 2) * dipole.sum())


def spectrum(
    state: FloquetEigenstate, max_order: int, tag: str = "harmonic"
) -> HarmonicSpectrum:
    """Harmonic amplitudes for orders 1..``max_order``.

    Args:
        state: Floquet eigenstate.
        max_order: Highest harmonic order, at least 1.
        tag: Tag attached to every entry.

    Returns:
        Spectrum with one entry per integer order.

    Raises:
        ValueError: If ``max_order`` < 1.
        HarmonicOrderError: If ``max_order`` exceeds the channel span.
    """
    if max_order < 1:
        raise ValueError(f"max_order must be at least 1, got {max_order}")
    entries = tuple(
        HarmonicAmplitude(
            order=float(m), amplitude=harmonic_amplitude(state, m), tag=tag
        )
        for m in range(1, max_order + 1)
    )
    return HarmonicSpectrum(
        entries=entries, drive_frequency=state.drive.frequency, source="floquet"
    )


def total_intensity(spec: HarmonicSpectrum) -> float:
    """Sum of |A|**2 over all entries (0 for an empty spectrum)."""
    return float(np.sum(spec.intensities)) if len(spec) else 0.0
