"""Cavity chains, coupling sweeps and harmonic blocking filters.

Cavities in a row each hold an atom that starts in FLg; their emitted fields
add coherently, so the chain spectrum is the per-order sum of the member
cavity spectra, each multiplied by exp(i * phase).
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy import optimize

from cavity_hhg.cavity.models import CavityConfig, CavitySpectrum
from cavity_hhg.cavity.polariton import (
    cavity_spectrum,
    coupling_dipole,
    polariton_solve,
)
from cavity_hhg.errors import CalibrationError, CavityHHGError
from cavity_hhg.floquet.models import FloquetEigenstate
from cavity_hhg.spectrum.harmonics import spectrum, total_intensity
from cavity_hhg.spectrum.models import (
    MERGE_TOL,
    HarmonicAmplitude,
    HarmonicSpectrum,
    merge_entries,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

_logger = logging.getLogger(__name__)

__all__ = [
    "CavityChain",
    "SpectralFilter",
    "SweepRow",
    "apply_filter",
    "chain_members",
    "chain_spectrum",
    "compose_spectra",
    "find_coupling_for_shift",
    "sweep_total_intensity",
]


class CavityChain(BaseModel):
    """Cavities in a row sharing the drive and the FLg/FLe resonances."""

    model_config = {"frozen": True}

    cavities: tuple[CavityConfig, ...] = Field(min_length=1)
    flg: FloquetEigenstate
    fle: FloquetEigenstate

    @model_validator(mode="after")
    def _check_members(self) -> CavityChain:
        if self.flg.drive != self.fle.drive:
            raise ValueError("FLg and FLe were computed for different drives")
        for cavity in self.cavities:
            cavity.check_commensurability(self.flg.drive.frequency)
        return self

    @property
    def drive_frequency(self) -> float:
        """omega0 shared by all cavities."""
        return self.flg.drive.frequency


class SpectralFilter(BaseModel):
    """Blocks entries whose order matches one of ``blocked_orders``."""

    model_config = {"frozen": True}

    blocked_orders: frozenset[float] = frozenset()
    tolerance: float = Field(default=MERGE_TOL, gt=0)

    @classmethod
    def odd_harmonics(cls, max_order: int) -> SpectralFilter:
        """Filter blocking the odd integer orders 1, 3, ..., up to ``max_order``."""
        odd = frozenset(float(m) for m in range(1, max_order + 1, 2))
        return cls(blocked_orders=odd)

    def blocks(self, order: float) -> bool:
        """Whether ``order`` is blocked."""
        return any(abs(order - b) <= self.tolerance for b in self.blocked_orders)


class SweepRow(BaseModel):
    """One (omega_cav, eps_cav) point of a total-intensity sweep."""

    model_config = {"frozen": True}

    omega_ratio: float
    eps_cav: float
    total_intensity: float
    shift: float | None = None
    status: str = "ok"


def compose_spectra(
    spectra: Sequence[HarmonicSpectrum],
    phases: Sequence[float] | None = None,
    tol: float = MERGE_TOL,
) -> HarmonicSpectrum:
    """Coherently add spectra, summing amplitudes at coincident orders.

    Args:
        spectra: Spectra sharing a drive frequency.
        phases: Optional phase (radians) applied to each spectrum.
        tol: Order-coincidence tolerance.

    Returns:
        Merged spectrum tagged with source ``"chain"``.

    Raises:
        ValueError: If ``spectra`` is empty, frequencies differ or the number
            of phases does not match.
    """
    if not spectra:
        raise ValueError("Nothing to compose: no spectra given")
    frequency = spectra[0].drive_frequency
    if any(not math.isclose(s.drive_frequency, frequency) for s in spectra):
        raise ValueError("Spectra were computed for different drive frequencies")
    phases = [0.0] * len(spectra) if phases is None else list(phases)
    if len(phases) != len(spectra):
        raise ValueError(f"Got {len(phases)} phases for {len(spectra)} spectra")

    entries = []
    for spec, phase in zip(spectra, phases, strict=True):
        factor = np.exp(1j * phase) if phase else 1.0
        entries.extend(
            HarmonicAmplitude(
                order=e.order, amplitude=complex(factor * e.amplitude), tag=e.tag
            )
            for e in spec.entries
        )
    return HarmonicSpectrum(
        entries=merge_entries(entries, tol), drive_frequency=frequency, source="chain"
    )


def chain_members(
    chain: CavityChain, max_order: int, threads: int = 1
) -> list[CavitySpectrum]:
    """Cavity spectrum of every chain member, in chain order."""
    a_g = spectrum(chain.flg, max_order)
    a_e = spectrum(chain.fle, max_order)
    d_ge = coupling_dipole(chain.flg, chain.fle)

    def _member(cavity: CavityConfig) -> CavitySpectrum:
        pair = polariton_solve(
            chain.flg.quasienergy,
            chain.fle.quasienergy,
            cavity,
            d_ge,
            chain.drive_frequency,
        )
        return cavity_spectrum(pair, a_g, a_e, max_order)

    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(_member, chain.cavities))


def chain_spectrum(
    chain: CavityChain, max_order: int, threads: int = 1
) -> HarmonicSpectrum:
    """Coherent harmonic spectrum of a chain of cavities.

    Args:
        chain: Cavities and shared resonances.
        max_order: Highest integer harmonic order.
        threads: Number of members evaluated concurrently.

    Returns:
        Per-order amplitude sum of the member cavity spectra.
    """
    members = chain_members(chain, max_order, threads)
    for cavity, member in zip(chain.cavities, members, strict=True):
        _logger.info(
            f"Cavity omega_cav={cavity.frequency:.6g} eps_cav={cavity.coupling:.6g}: "
            f"shift={member.pair.shift:.6g}"
        )
    return compose_spectra(
        [m.composed for m in members], [c.phase for c in chain.cavities]
    )


def apply_filter(
    spec: HarmonicSpectrum, spectral_filter: SpectralFilter
) -> HarmonicSpectrum:
    """Remove entries blocked by ``spectral_filter``; others are unchanged."""
    kept = tuple(e for e in spec.entries if not spectral_filter.blocks(e.order))
    return spec.model_copy(update={"entries": kept})


def sweep_total_intensity(
    template: CavityConfig,
    eps_values: Sequence[float],
    omega_ratios: Sequence[float],
    flg: FloquetEigenstate,
    fle: FloquetEigenstate,
    max_order: int,
    threads: int = 1,
) -> list[SweepRow]:
    """Total cavity harmonic intensity over a grid of (omega_cav, eps_cav).

    Each point runs the single-cavity pipeline independently. A failing point
    is recorded with a NaN intensity and its error message, and the sweep
    continues.

    Args:
        template: Cavity supplying every field not swept (the phase).
        eps_values: Coupling strengths eps_cav.
        omega_ratios: Cavity frequencies in units of omega0.
        flg: FLg eigenstate.
        fle: FLe eigenstate.
        max_order: Highest integer harmonic order.
        threads: Number of points evaluated concurrently.

    Returns:
        Rows ordered by omega ratio, then eps_cav, as given.

    Raises:
        ValueError: If either value list is empty.
    """
    if not eps_values or not omega_ratios:
        raise ValueError("Sweep needs at least one eps_cav and one omega ratio")
    omega0 = flg.drive.frequency
    a_g = spectrum(flg, max_order)
    a_e = spectrum(fle, max_order)
    d_ge = coupling_dipole(flg, fle)
    points = [(ratio, eps) for ratio in omega_ratios for eps in eps_values]

    def _point(point: tuple[float, float]) -> SweepRow:
        ratio, eps = point
        try:
            fields = template.model_dump()
            fields.update(frequency=ratio * omega0, coupling=eps)
            cavity = CavityConfig(**fields)
            pair = polariton_solve(
                flg.quasienergy, fle.quasienergy, cavity, d_ge, omega0
            )
            composed = cavity_spectrum(pair, a_g, a_e, max_order).composed
        except (CavityHHGError, ValueError) as exc:
            _logger.warning(
                f"Sweep point omega/omega0={ratio}, eps={eps} failed: {exc}"
            )
            return SweepRow(
                omega_ratio=ratio,
                eps_cav=eps,
                total_intensity=float("nan"),
                status=f"error: {exc}".replace("\n", " "),
            )
        return SweepRow(
            omega_ratio=ratio,
            eps_cav=eps,
            total_intensity=total_intensity(composed),
            shift=pair.shift,
        )

    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(_point, points))


def find_coupling_for_shift(
    target_shift: float,
    cavity_frequency: float,
    flg: FloquetEigenstate,
    fle: FloquetEigenstate,
    eps_max: float = 1.0,
    scan_points: int = 201,
) -> float:
    """Smallest eps_cav whose polariton pair has side-harmonic shift ``|target|``.

    The shift is not monotonic in eps_cav for a complex coupling dipole, so the
    coupling range is scanned first and the first sign change refined with
    Brent's method.

    Args:
        target_shift: Desired shift in units of omega0 (sign ignored).
        cavity_frequency: omega_cav (a.u.).
        flg: FLg eigenstate.
        fle: FLe eigenstate.
        eps_max: Upper end of the scanned coupling range.
        scan_points: Number of scan samples.

    Returns:
        The coupling strength eps_cav.

    Raises:
        CalibrationError: If no coupling in [0, eps_max] reaches the target.
    """
    omega0 = flg.drive.frequency
    d_ge = coupling_dipole(flg, fle)
    target = abs(target_shift)

    def _mismatch(eps: float) -> float:
        cavity = CavityConfig(frequency=cavity_frequency, coupling=eps)
        pair = polariton_solve(flg.quasienergy, fle.quasienergy, cavity, d_ge, omega0)
        return pair.shift - target

    grid = np.linspace(0.0, eps_max, scan_points)
    values = np.array([_mismatch(eps) for eps in grid])
    if values[0] == 0:
        return 0.0
    crossings = np.flatnonzero(np.sign(values[:-1]) * np.sign(values[1:]) <= 0)
    if crossings.size == 0:
        raise CalibrationError(
            f"No eps_cav in [0, {eps_max}] gives shift {target}; reachable shifts "
            f"span [{values.min() + target:.4g}, {values.max() + target:.4g}]",
            module="cavity",
        )
    i = int(crossings[0])
    eps = float(optimize.brentq(_mismatch, grid[i], grid[i + 1], xtol=1e-12))
    _logger.info(
        f"Coupling eps_cav={eps:.6g} gives shift {target} at "
        f"omega_cav/omega0={cavity_frequency / omega0:.4g}"
    )
    return eps
