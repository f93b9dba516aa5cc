"""Harmonic amplitude and spectrum models."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np
from pydantic import BaseModel, Field, model_validator

from cavity_hhg.errors import HarmonicOrderError

if TYPE_CHECKING:
    from collections.abc import Iterable

_logger = logging.getLogger(__name__)

MERGE_TOL = 1e-9


class HarmonicAmplitude(BaseModel):
    """Complex emitted-field amplitude at one harmonic order.

    Attributes:
        order: Harmonic order M in units of the drive frequency.
        amplitude: Complex field amplitude.
        tag: Provenance (``harmonic``, ``odd``, ``side_plus``, ``side_minus``
            or a ``+``-joined combination after merging).
    """

    model_config = {"frozen": True}

    order: float
    amplitude: complex
    tag: str = "harmonic"

    @property
    def intensity(self) -> float:
        """|amplitude|**2."""
        return abs(self.amplitude) ** 2


class HarmonicSpectrum(BaseModel):
    """Ordered harmonic entries with strictly increasing orders."""

    model_config = {"frozen": True}

    entries: tuple[HarmonicAmplitude, ...] = ()
    drive_frequency: float = Field(gt=0)
    source: str = "floquet"

    @model_validator(mode="after")
    def _check_orders(self) -> HarmonicSpectrum:
        orders = [e.order for e in self.entries]
        if any(b <= a for a, b in zip(orders, orders[1:], strict=False)):
            raise ValueError(
                "Spectrum orders must be strictly increasing; merge coincident "
                "orders with merge_entries first"
            )
        return self

    def __len__(self) -> int:
        """Number of entries."""
        return len(self.entries)

    @property
    def orders(self) -> np.ndarray:
        """Harmonic orders of all entries."""
        return np.array([e.order for e in self.entries], dtype=float)

    @property
    def amplitudes(self) -> np.ndarray:
        """Complex amplitudes of all entries."""
        return np.array([e.amplitude for e in self.entries], dtype=np.complex128)

    @property
    def intensities(self) -> np.ndarray:
        """Intensities |A|**2 of all entries."""
        return np.abs(self.amplitudes) ** 2

    def find(self, order: float, tol: float = MERGE_TOL) -> HarmonicAmplitude | None:
        """Return the entry at ``order`` (within ``tol``), or ``None``."""
        for entry in self.entries:
            if abs(entry.order - order) <= tol:
                return entry
        return None

    def amplitude_at(self, order: float, tol: float = MERGE_TOL) -> complex:
        """Return the amplitude at ``order``.

        Raises:
            HarmonicOrderError: If no entry lies within ``tol`` of ``order``.
        """
        entry = self.find(order, tol)
        if entry is None:
            raise HarmonicOrderError(f"Spectrum has no entry at order {order:g}")
        return entry.amplitude

    def peak_near(self, order: float, halfwidth: float = 0.25) -> float:
        """Largest |amplitude| with order within ``halfwidth`` of ``order``."""
        orders = self.orders
        mask = np.abs(orders - order) <= halfwidth
        if not mask.any():
            raise HarmonicOrderError(
                f"Spectrum has no samples within {halfwidth} of order {order:g}"
            )
        return float(np.abs(self.amplitudes[mask]).max())


def _snap(order: float, tol: float) -> float:
    nearest = round(order)
    return float(nearest) if abs(order - nearest) <= tol else order


def merge_entries(
    entries: Iterable[HarmonicAmplitude], tol: float = MERGE_TOL
) -> tuple[HarmonicAmplitude, ...]:
    """Sum amplitudes of entries whose orders coincide within ``tol``.

    Entries are sorted by order. A merged group keeps its first order, snapped
    to the nearest integer when within ``tol``; its tags are joined with ``+``.

    Args:
        entries: Harmonic amplitudes in any order.
        tol: Order-coincidence tolerance in units of the drive frequency.

    Returns:
        Entries with strictly increasing orders.
    """
    merged: list[HarmonicAmplitude] = []
    group: list[HarmonicAmplitude] = []

    def _flush() -> None:
        tags: list[str] = []
        for entry in group:
            for tag in entry.tag.split("+"):
                if tag not in tags:
                    tags.append(tag)
        merged.append(
            HarmonicAmplitude(
                order=_snap(group[0].order, tol),
                amplitude=complex(sum(e.amplitude for e in group)),
                tag="+".join(tags),
            )
        )

    for entry in sorted(entries, key=lambda e: e.order):
        if group and entry.order - group[0].order > tol:
            _flush()
            group = []
        group.append(entry)
    if group:
        _flush()
    return tuple(merged)
