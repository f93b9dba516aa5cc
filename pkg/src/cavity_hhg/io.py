"""Result artifacts: CSV tables and JSON metadata stamped with the config digest.

Every file starts with (CSV) or contains (JSON) the tool version and the digest
of the run configuration. Nothing time-dependent is written, so repeating a run
reproduces its files byte for byte.
"""

from __future__ import annotations

import csv
import logging
from importlib.metadata import PackageNotFoundError, version
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, Field

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from pathlib import Path

    from cavity_hhg.cavity.chain import SweepRow
    from cavity_hhg.pulse import PulseTrain
    from cavity_hhg.spectrum.models import HarmonicSpectrum

_logger = logging.getLogger(__name__)

__all__ = [
    "ArtifactMetadata",
    "tool_version",
    "write_json",
    "write_pulse",
    "write_spectrum",
    "write_sweep",
]

TOOL_NAME = "cavity-hhg"


def tool_version() -> str:
    """Installed package version, or ``0+unknown`` from a source checkout."""
    try:
        return version(TOOL_NAME)
    except PackageNotFoundError:
        return "0+unknown"


class ArtifactMetadata(BaseModel):
    """Metadata block embedded in every JSON artifact."""

    tool: str = TOOL_NAME
    version: str = Field(default_factory=tool_version)
    config_digest: str
    kind: str
    data: dict[str, Any] = Field(default_factory=dict)


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_csv(
    path: Path,
    digest: str,
    header: Sequence[str],
    rows: Iterable[Sequence[str]],
    comments: Sequence[str] = (),
) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        fh.write(f"# {TOOL_NAME} {tool_version()} config_digest={digest}\n")
        for comment in comments:
            fh.write(f"# {comment}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    _logger.info(f"Wrote {path}")
    return path


def write_json(path: Path, digest: str, kind: str, data: dict[str, Any]) -> Path:
    """Write ``data`` wrapped in an :class:`ArtifactMetadata` block."""
    path.parent.mkdir(parents=True, exist_ok=True)
    metadata = ArtifactMetadata(config_digest=digest, kind=kind, data=data)
    path.write_text(metadata.model_dump_json(indent=2) + "\n")
    _logger.info(f"Wrote {path}")
    return path


def write_spectrum(
    path: Path, spec: HarmonicSpectrum, digest: str, extra: dict[str, Any] | None = None
) -> tuple[Path, Path]:
    """Write a spectrum as CSV plus a JSON mirror with the same stem.

    Columns: order, re_amplitude, im_amplitude, intensity, tag.

    Returns:
        Paths of the CSV and JSON files.
    """
    rows = (
        (
            _fmt(e.order),
            _fmt(e.amplitude.real),
            _fmt(e.amplitude.imag),
            _fmt(e.intensity),
            e.tag,
        )
        for e in spec.entries
    )
    csv_path = _write_csv(
        path.with_suffix(".csv"),
        digest,
        ("order", "re_amplitude", "im_amplitude", "intensity", "tag"),
        rows,
        comments=(
            f"source={spec.source} drive_frequency={_fmt(spec.drive_frequency)}",
        ),
    )
    data = {
        "source": spec.source,
        "drive_frequency": spec.drive_frequency,
        "entries": [
            {
                "order": e.order,
                "re_amplitude": e.amplitude.real,
                "im_amplitude": e.amplitude.imag,
                "intensity": e.intensity,
                "tag": e.tag,
            }
            for e in spec.entries
        ],
        **(extra or {}),
    }
    json_path = write_json(path.with_suffix(".json"), digest, "spectrum", data)
    return csv_path, json_path


def write_pulse(
    path: Path,
    train: PulseTrain,
    digest: str,
    extra: dict[str, Any] | None = None,
) -> tuple[Path, Path]:
    """Write a pulse train as CSV (t_over_T0, intensity) and its peaks as JSON.

    Returns:
        Paths of the CSV file and the ``<stem>_peaks.json`` file.
    """
    csv_path = _write_csv(
        path.with_suffix(".csv"),
        digest,
        ("t_over_T0", "intensity"),
        ((_fmt(t), _fmt(i)) for t, i in zip(train.times, train.intensity, strict=True)),
    )
    data = {
        "samples_per_period": train.samples_per_period,
        "num_periods": train.num_periods,
        "peaks_over_T0": [float(p) for p in train.peaks],
        **(extra or {}),
    }
    json_path = write_json(
        path.with_name(f"{path.stem}_peaks.json"), digest, "pulse_peaks", data
    )
    return csv_path, json_path


def write_sweep(path: Path, rows: Sequence[SweepRow], digest: str) -> Path:
    """Write sweep rows as CSV (omega_cav_over_omega0, eps_cav, I_tot, status)."""
    return _write_csv(
        path.with_suffix(".csv"),
        digest,
        ("omega_cav_over_omega0", "eps_cav", "I_tot", "status"),
        (
            (_fmt(r.omega_ratio), _fmt(r.eps_cav), _fmt(r.total_intensity), r.status)
            for r in rows
        ),
    )
