"""Two-state polariton model and the resulting cavity harmonic spectrum."""

from __future__ import annotations

import cmath
import logging

import numpy as np
from scipy import integrate

from cavity_hhg.cavity.models import CavityConfig, CavitySpectrum, PolaritonPair
from cavity_hhg.errors import (
    ChannelMismatchError,
    DegeneratePolaritonError,
    HarmonicOrderError,
)
from cavity_hhg.floquet.models import FloquetEigenstate
from cavity_hhg.spectrum.models import (
    HarmonicAmplitude,
    HarmonicSpectrum,
    merge_entries,
)

_logger = logging.getLogger(__name__)

__all__ = [
    "cavity_spectrum",
    "coupling_dipole",
    "odd_harmonic_amplitude",
    "polariton_solve",
    "side_harmonic_amplitudes",
]


def coupling_dipole(g: FloquetEigenstate, e: FloquetEigenstate) -> complex:
    """Dipole coupling d = sum_n (phi_{n,g} | x | phi_{n,e}) between two states.

    Args:
        g: FLg eigenstate.
        e: FLe eigenstate.

    Returns:
        Complex dipole; symmetric in its arguments.

    Raises:
        ChannelMismatchError: If the states differ in grid or channel range.
    """
    if g.grid != e.grid or g.channels.shape != e.channels.shape:
        raise ChannelMismatchError(
            f"States differ in basis: channels [{g.channel_min}, {g.channel_max}] "
            f"on {g.grid.points} points vs [{e.channel_min}, {e.channel_max}] on "
            f"{e.grid.points} points"
        )
    if g.channel_min != e.channel_min:
        raise ChannelMismatchError(
            f"Channel ranges start at {g.channel_min} and {e.channel_min}"
        )
    x = g.grid.coordinates
    per_channel = integrate.trapezoid(g.channels * x * e.channels, dx=g.grid.spacing)
    return complex(per_channel.sum())


def polariton_solve(
    eps_g: complex,
    eps_e: complex,
    cavity: CavityConfig,
    d_ge: complex,
    drive_frequency: float,
) -> PolaritonPair:
    """Diagonalize the single-excitation cavity-atom Floquet problem.

    Args:
        eps_g: FLg quasienergy.
        eps_e: FLe quasienergy.
        cavity: Cavity mode and coupling.
        d_ge: Coupling dipole from :func:`coupling_dipole`.
        drive_frequency: omega0, the unit of the side-harmonic shift.

    Returns:
        The polariton pair.

    Raises:
        ConfigError: If omega_cav / omega0 is an integer.
        DegeneratePolaritonError: If the splitting Omega vanishes.
    """
    cavity.check_commensurability(drive_frequency)
    detuning = complex(eps_g + cavity.frequency - eps_e)
    rabi = complex(2 * cavity.coupling * d_ge)
    if rabi == 0:
        splitting = detuning if detuning.real >= 0 else -detuning
    else:
        splitting = cmath.sqrt(detuning**2 + rabi**2)
    if splitting == 0:
        raise DegeneratePolaritonError(
            f"Polariton splitting vanishes (detuning={detuning:.6g}, "
            f"rabi={rabi:.6g}); the pair is degenerate"
        )
    centre = (eps_g + cavity.frequency + eps_e) / 2
    pair = PolaritonPair(
        eps_g=eps_g,
        eps_e=eps_e,
        cavity=cavity,
        drive_frequency=drive_frequency,
        dipole=d_ge,
        detuning=detuning,
        rabi=rabi,
        splitting=splitting,
        energy_upper=centre + splitting / 2,
        energy_lower=centre - splitting / 2,
        mixing_upper=cmath.sqrt((splitting + detuning) / (2 * splitting)),
        mixing_lower=cmath.sqrt((splitting - detuning) / (2 * splitting)),
        shift=splitting.real / drive_frequency,
        linewidth_shift=splitting.imag / drive_frequency,
    )
    _logger.debug(
        f"Polariton pair for omega_cav={cavity.frequency:.6g}, "
        f"eps_cav={cavity.coupling:.6g}: shift={pair.shift:.6g}, "
        f"linewidth={pair.linewidth_shift:.3g}"
    )
    return pair


def _require_odd(order: int) -> None:
    if order < 1 or order % 2 != 1:
        raise HarmonicOrderError(
            f"Side harmonics need a positive odd order, got {order}"
        )


def side_harmonic_amplitudes(
    pair: PolaritonPair,
    a_g: HarmonicSpectrum,
    a_e: HarmonicSpectrum,
    order: int,
) -> tuple[HarmonicAmplitude, HarmonicAmplitude]:
    """Side-harmonic amplitudes at orders M + shift and M - shift.

    Args:
        pair: Polariton pair.
        a_g: FLg harmonic spectrum.
        a_e: FLe harmonic spectrum.
        order: Odd harmonic order M present in both spectra.

    Returns:
        ``(plus, minus)`` amplitudes, each kappa * side weight * (A_g - A_e).

    Raises:
        HarmonicOrderError: If M is not a positive odd order or is missing.
    """
    _require_odd(order)
    difference = a_g.amplitude_at(order) - a_e.amplitude_at(order)
    side_weight = pair.weights()[2]
    kappa_plus, kappa_minus = pair.kappa(order)
    return (
        HarmonicAmplitude(
            order=order + pair.shift,
            amplitude=kappa_plus * side_weight * difference,
            tag="side_plus",
        ),
        HarmonicAmplitude(
            order=order - pair.shift,
            amplitude=kappa_minus * side_weight * difference,
            tag="side_minus",
        ),
    )


def odd_harmonic_amplitude(
    pair: PolaritonPair,
    a_g: HarmonicSpectrum,
    a_e: HarmonicSpectrum,
    order: int,
) -> HarmonicAmplitude:
    """Cavity amplitude at integer order M, weighting FLg and FLe emission.

    Raises:
        HarmonicOrderError: If M is missing from either spectrum.
    """
    weight_g, weight_e, _ = pair.weights()
    amplitude = weight_g * a_g.amplitude_at(order) + weight_e * a_e.amplitude_at(order)
    return HarmonicAmplitude(
        order=float(order), amplitude=amplitude, tag="odd" if order % 2 else "even"
    )


def cavity_spectrum(
    pair: PolaritonPair,
    a_g: HarmonicSpectrum,
    a_e: HarmonicSpectrum,
    max_order: int,
) -> CavitySpectrum:
    """Compose the cavity harmonic spectrum up to ``max_order``.

    Integer orders 1..max_order carry the weighted FLg/FLe amplitudes; every
    odd order adds side harmonics at M +/- shift. Side orders at or below zero
    are dropped and exactly vanishing side amplitudes are left out of the
    composed spectrum.

    Raises:
        HarmonicOrderError: If an order up to ``max_order`` is missing.
    """
    if max_order < 1:
        raise ValueError(f"max_order must be at least 1, got {max_order}")
    frequency = a_g.drive_frequency
    odd = [odd_harmonic_amplitude(pair, a_g, a_e, m) for m in range(1, max_order + 1)]
    sides = [
        side
        for m in range(1, max_order + 1, 2)
        for side in side_harmonic_amplitudes(pair, a_g, a_e, m)
        if side.order > 0
    ]
    odd_part = HarmonicSpectrum(entries=tuple(odd), drive_frequency=frequency)
    side_part = HarmonicSpectrum(
        entries=merge_entries(sides), drive_frequency=frequency
    )
    composed = HarmonicSpectrum(
        entries=merge_entries(odd + [s for s in sides if s.amplitude != 0]),
        drive_frequency=frequency,
        source="cavity",
    )
    return CavitySpectrum(
        odd_part=odd_part, side_part=side_part, composed=composed, pair=pair
    )
