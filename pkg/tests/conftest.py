"""Global pytest fixtures, arguments, and options."""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Any

import numpy as np
import pytest
import yaml

from cavity_hhg.atom import AtomModel, ComplexScalingConfig, SpatialGrid
from cavity_hhg.floquet import (
    DriveField,
    FloquetBasisSpec,
    FloquetEigenstate,
    SolverOptions,
    solve_targeted,
)
from cavity_hhg.spectrum import HarmonicAmplitude, HarmonicSpectrum

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence


def pytest_collection_modifyitems(items: Sequence[pytest.Item]) -> None:
    """Apply appropriate markers based on test location."""
    markers = {"unit", "integration", "regression"}

    for item in items:
        test_path = Path(item.fspath)
        for marker in markers & set(test_path.parts):
            item.add_marker(getattr(pytest.mark, marker))


# ---------------------------------------------------------------------------
# Small-grid physics: weak drive well above the ground-state binding scale, so
# that every solve takes well under a second.
# ---------------------------------------------------------------------------
@pytest.fixture(scope="session")
def small_grid() -> SpatialGrid:
    """Coarse grid on [-40, 40]."""
    return SpatialGrid(extent=40.0, points=160)


@pytest.fixture(scope="session")
def atom() -> AtomModel:
    """Uncalibrated soft-core atom (depth 1, width 2)."""
    return AtomModel()


@pytest.fixture(scope="session")
def scaling() -> ComplexScalingConfig:
    """Default complex scaling angle."""
    return ComplexScalingConfig(theta=0.15)


@pytest.fixture(scope="session")
def drive() -> DriveField:
    """Weak drive at omega0 = 0.2."""
    return DriveField(amplitude=0.02, frequency=0.2)


@pytest.fixture(scope="session")
def basis(small_grid: SpatialGrid) -> FloquetBasisSpec:
    """Channels -6..6 on the small grid."""
    return FloquetBasisSpec(channel_min=-6, channel_max=6, grid=small_grid)


@pytest.fixture(scope="session")
def options() -> SolverOptions:
    """Shift-invert path for every problem size."""
    return SolverOptions(dense_limit=0)


@pytest.fixture(scope="session")
def flg(
    atom: AtomModel,
    scaling: ComplexScalingConfig,
    drive: DriveField,
    basis: FloquetBasisSpec,
    options: SolverOptions,
) -> FloquetEigenstate:
    """FLg on the small grid."""
    return solve_targeted(atom, scaling, drive, basis, seed_index=0, options=options)


@pytest.fixture(scope="session")
def fle(
    atom: AtomModel,
    scaling: ComplexScalingConfig,
    drive: DriveField,
    basis: FloquetBasisSpec,
    options: SolverOptions,
) -> FloquetEigenstate:
    """FLe on the small grid."""
    return solve_targeted(atom, scaling, drive, basis, seed_index=1, options=options)


# ---------------------------------------------------------------------------
# Synthetic data
# ---------------------------------------------------------------------------
def _make_state(
    grid: SpatialGrid,
    channel_min: int = -2,
    channel_max: int = 2,
    seed: int = 0,
    drive: DriveField | None = None,
) -> FloquetEigenstate:
    """Random 'plus'-symmetric eigenstate with reproducible channels."""
    rng = np.random.default_rng(seed)
    n_ch = channel_max - channel_min + 1
    half = rng.normal(size=(n_ch, grid.points)) + 1j * rng.normal(
        size=(n_ch, grid.points)
    )
    n = np.arange(channel_min, channel_max + 1)[:, None]
    channels = half + np.where(n % 2 == 0, 1.0, -1.0) * half[:, ::-1]
    return FloquetEigenstate(
        quasienergy=-0.5 - 1e-4j,
        channels=channels,
        channel_min=channel_min,
        grid=grid,
        drive=drive or DriveField(),
        symmetry="plus",
        label="FLg",
    )


def _odd_spectrum(
    max_order: int,
    frequency: float = 0.057,
    scale: float = 1.0,
) -> HarmonicSpectrum:
    """Integer orders 1..max_order; odd orders carry scale / M, even orders 0."""
    entries = tuple(
        HarmonicAmplitude(order=float(m), amplitude=complex(scale / m if m % 2 else 0))
        for m in range(1, max_order + 1)
    )
    return HarmonicSpectrum(entries=entries, drive_frequency=frequency)


@pytest.fixture(scope="session")
def state_factory() -> Callable[..., FloquetEigenstate]:
    """Factory for random symmetric eigenstates."""
    return _make_state


@pytest.fixture(scope="session")
def spectrum_factory() -> Callable[..., HarmonicSpectrum]:
    """Factory for odd-only synthetic spectra."""
    return _odd_spectrum


def _write_config(path: Path, data: dict[str, Any]) -> Path:
    """Dump ``data`` as YAML to ``path``."""
    path.write_text(yaml.safe_dump(data))
    return path


@pytest.fixture
def small_config(tmp_path: Path) -> Path:
    """Run configuration small enough for end-to-end command tests."""
    return _write_config(
        tmp_path / "run.yaml",
        {
            "grid": {"extent": 40.0, "points": 120},
            "drive": {"amplitude": 0.02, "frequency": 0.2},
            "basis": {"channel_min": -5, "channel_max": 5},
            "harmonics": {"max_order": 9},
            "trajectory_thetas": [0.12, 0.15],
            "solver": {"dense_limit": 0},
            "sweep": {"omega_ratios": [1.45], "eps_values": [0.0, 0.05]},
            "pulse": {
                "window_min_order": 2,
                "samples_per_period": 256,
                "num_periods": 2,
            },
            "cache": {"directory": str(tmp_path / "cache")},
            "output_dir": str(tmp_path / "results"),
        },
    )
