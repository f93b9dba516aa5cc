"""On-disk cache of solved Floquet eigenstates.

Each entry is an ``.npz`` archive named after a SHA-256 digest of every input
that determines the state. Archives carry a format version; an archive written
by a different format version, or one that cannot be read, is treated as a
miss so the state is recomputed.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import zipfile
from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
from platformdirs import user_cache_dir

from cavity_hhg.atom.models import SpatialGrid
from cavity_hhg.floquet.models import DriveField, FloquetEigenstate

if TYPE_CHECKING:
    from pydantic import BaseModel

_logger = logging.getLogger(__name__)

__all__ = ["CACHE_ENV_VAR", "EigenstateCache", "default_cache_dir", "state_key"]

CACHE_ENV_VAR = "CAVITY_HHG_CACHE"
FORMAT_VERSION = 1


def default_cache_dir() -> Path:
    """Cache root from ``$CAVITY_HHG_CACHE`` or the platform user cache."""
    if env_dir := os.environ.get(CACHE_ENV_VAR):
        return Path(env_dir)
    return Path(user_cache_dir("cavity_hhg"))


def state_key(**parts: BaseModel | int | str | None) -> str:
    """Content hash over the models and scalars that determine a state.

    Args:
        **parts: Named pydantic models or plain values.

    Returns:
        Hex SHA-256 digest of the canonical JSON encoding.
    """
    payload: dict[str, Any] = {
        name: part.model_dump(mode="json") if hasattr(part, "model_dump") else part
        for name, part in parts.items()
    }
    encoded = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(encoded.encode()).hexdigest()


class EigenstateCache:
    """Directory of versioned eigenstate archives keyed by content hash."""

    def __init__(self, directory: Path | str | None = None) -> None:
        """Create the cache rooted at ``directory`` (default cache root if None)."""
        self.directory = (
            Path(directory) if directory is not None else default_cache_dir()
        )
        self.directory.mkdir(parents=True, exist_ok=True)

    def path_for(self, key: str) -> Path:
        """Archive path for ``key``."""
        return self.directory / f"{key}.npz"

    def put(self, key: str, state: FloquetEigenstate) -> Path:
        """Write ``state`` under ``key`` and return the archive path."""
        path = self.path_for(key)
        tmp_path = path.with_suffix(".tmp.npz")
        with tmp_path.open("wb") as fh:
            np.savez(
                fh,
                format_version=np.int64(FORMAT_VERSION),
                key=np.str_(key),
                quasienergy=np.complex128(state.quasienergy),
                channels=state.channels,
                channel_min=np.int64(state.channel_min),
                grid=np.array([state.grid.extent, state.grid.points], dtype=float),
                drive=np.array([state.drive.amplitude, state.drive.frequency]),
                symmetry=np.str_(state.symmetry),
                symmetry_residual=np.float64(state.symmetry_residual),
                target_overlap=np.complex128(state.target_overlap),
                label=np.str_(state.label),
            )
        tmp_path.replace(path)
        _logger.debug(f"Cached eigenstate {state.label} at {path}")
        return path

    def get(self, key: str) -> FloquetEigenstate | None:
        """Return the cached state for ``key``, or ``None`` on a miss.

        Version mismatches and unreadable archives are misses; the latter also
        log a warning.
        """
        path = self.path_for(key)
        if not path.exists():
            _logger.info(f"Eigenstate cache miss: {key[:12]}")
            return None
        try:
            with np.load(path, allow_pickle=False) as archive:
                version = int(archive["format_version"])
                if version != FORMAT_VERSION:
                    _logger.info(
                        f"Eigenstate cache entry {key[:12]} has format version "
                        f"{version}, expected {FORMAT_VERSION}; recomputing"
                    )
                    return None
                if str(archive["key"]) != key:
                    _logger.warning(f"Eigenstate cache entry {path} has a foreign key")
                    return None
                extent, points = archive["grid"]
                amplitude, frequency = archive["drive"]
                state = FloquetEigenstate(
                    quasienergy=complex(archive["quasienergy"]),
                    channels=archive["channels"],
                    channel_min=int(archive["channel_min"]),
                    grid=SpatialGrid(extent=float(extent), points=int(points)),
                    drive=DriveField(
                        amplitude=float(amplitude), frequency=float(frequency)
                    ),
                    symmetry=str(archive["symmetry"]),
                    symmetry_residual=float(archive["symmetry_residual"]),
                    target_overlap=complex(archive["target_overlap"]),
                    label=str(archive["label"]),
                )
        except (OSError, ValueError, KeyError, EOFError, zipfile.BadZipFile) as exc:
            _logger.warning(
                f"Corrupt eigenstate cache entry {path} ({exc}); recomputing"
            )
            return None
        _logger.info(f"Eigenstate cache hit: {key[:12]}")
        return state

    def roundtrip(self, state: FloquetEigenstate) -> FloquetEigenstate:
        """Serialize then deserialize ``state`` through the cache.

        Raises:
            RuntimeError: If the freshly written archive cannot be read back.
        """
        key = hashlib.sha256(
            state.channels.tobytes() + np.complex128(state.quasienergy).tobytes()
        ).hexdigest()
        self.put(key, state)
        restored = self.get(key)
        if restored is None:
            raise RuntimeError(f"Eigenstate cache at {self.directory} is not readable")
        return restored

    def clear(self) -> int:
        """Delete every archive; returns the number removed."""
        removed = 0
        for path in self.directory.glob("*.npz"):
            path.unlink()
            removed += 1
        return removed
